"""JSON and CSV formats for graphs, sequences, measures and amplitude series.

Floats are written with ``repr`` (shortest round-trip form) so identical
inputs always produce identical bytes and every file re-parses exactly.
"""
from __future__ import annotations

import csv
import io
import json

import numpy as np

from .decomposition import InvarianceReport, JacobiSequences
from .graphs import RootedGraph
from .spectral import ClosedFormDensity, SpectralMeasure
from .walk import AmplitudeSeries


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _num(x) -> str:
    return repr(float(x))


# ------------------------------------------------------------------ graphs

def graph_to_dict(g: RootedGraph) -> dict:
    return {"label": g.label, "vertex_count": g.vertex_count, "root": g.root,
            "edges": [list(e) for e in g.edges]}


def graph_from_dict(d: dict) -> RootedGraph:
    return RootedGraph(int(d["vertex_count"]), tuple(tuple(e) for e in d["edges"]),
                       int(d["root"]), d.get("label", ""))


# ---------------------------------------------------------------- sequences

def jacobi_to_dict(j: JacobiSequences) -> dict:
    return {"omega": list(j.omega), "alpha": list(j.alpha), "tail": j.tail}


def jacobi_from_dict(d: dict) -> JacobiSequences:
    return JacobiSequences(tuple(d["omega"]), tuple(d["alpha"]), d.get("tail"))


def report_to_dict(r: InvarianceReport) -> dict:
    return {"max_residual": r.max_residual,
            "per_stratum_residuals": list(r.per_stratum_residuals),
            "tolerance": r.tolerance, "invariant": r.invariant}


# ----------------------------------------------------------------- measures

def measure_to_dict(m: SpectralMeasure) -> dict:
    density = None
    if m.density is not None:
        density = {"kind": m.density.kind, "params": dict(m.density.params),
                   "support": list(m.density.support)}
    tabulated = None if m.tabulated is None else [list(p) for p in m.tabulated]
    return {"atoms": [list(a) for a in m.atoms], "density": density, "tabulated": tabulated}


def measure_from_dict(d: dict) -> SpectralMeasure:
    density = None
    if d.get("density") is not None:
        dd = d["density"]
        density = ClosedFormDensity(dd["kind"],
                                    tuple((k, float(v)) for k, v in dd.get("params", {}).items()),
                                    tuple(dd.get("support", (-2.0, 2.0))))
    tabulated = d.get("tabulated")
    if tabulated is not None:
        tabulated = tuple(tuple(p) for p in tabulated)
    return SpectralMeasure(tuple(tuple(a) for a in d.get("atoms", [])), density, tabulated)


# ------------------------------------------------------------------- series

def series_to_dict(s: AmplitudeSeries) -> dict:
    return {"method": s.method, "k_max": s.k_max, "times": s.times.tolist(),
            "amplitudes": [[[z.real, z.imag] for z in row] for row in s.amplitudes.tolist()]}


def series_from_dict(d: dict) -> AmplitudeSeries:
    amps = np.array([[complex(re, im) for re, im in row] for row in d["amplitudes"]],
                    dtype=complex).reshape(len(d["times"]), int(d["k_max"]) + 1)
    return AmplitudeSeries(np.array(d["times"], dtype=float), amps, d["method"])


def series_to_csv(s: AmplitudeSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["t"]
    for k in range(s.k_max + 1):
        header += [f"re_q{k}", f"im_q{k}"]
    w.writerow(header)
    for t, row in zip(s.times, s.amplitudes):
        cells = [_num(t)]
        for z in row:
            cells += [_num(z.real), _num(z.imag)]
        w.writerow(cells)
    return buf.getvalue()


def series_from_csv(text: str, method: str = "spectral") -> AmplitudeSeries:
    rows = list(csv.reader(io.StringIO(text)))
    data = np.array([[float(c) for c in r] for r in rows[1:]]).reshape(len(rows) - 1, -1)
    amps = data[:, 1::2] + 1j * data[:, 2::2]
    return AmplitudeSeries(data[:, 0], amps, method)


def probabilities_to_csv(times, probabilities) -> str:
    """Long-format table ``t,vertex,probability``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "vertex", "probability"])
    for t, row in zip(times, probabilities):
        for v, p in enumerate(row):
            w.writerow([_num(t), v, _num(p)])
    return buf.getvalue()
