"""Command-line front end.

    starwalk graph   --graph star-p3 --n 3
    starwalk jacobi  --graph star-c4 --n 4
    starwalk measure --graph star-lattice --n 2
    starwalk walk    --graph star-p3 --n 3 --t-max 6.2832 --steps 64 --format csv
    starwalk qclt    --graph star-lattice --n 1000 --k-max 3
    starwalk verify  --graph star-c4 --n 4
    starwalk verify  --all

Output goes to ``--output``, else to ``$STARWALK_OUTPUT_DIR/<name>``, else
stdout. Exit codes: 0 success, 64 usage, 65 non-invariant graph, 70
numerical failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import serialization as ser
from .acceptance import verify_all
from .decomposition import (DEFAULT_TOLERANCE, quantum_decompose,
                            star_c4_sequences, star_lattice_sequences, star_p3_sequences)
from .graphs import (build_cycle, build_k2, build_path, build_star_lattice, star_power,
                     stratify)
from .spectral import measure_for
from .walk import amplitudes_oracle, amplitudes_spectral, per_vertex_probability, qclt_amplitudes

EX_OK, EX_USAGE, EX_DATAERR, EX_SOFTWARE = 0, 64, 65, 70
OUTPUT_DIR_ENV = "STARWALK_OUTPUT_DIR"

COMMANDS = ("graph", "jacobi", "measure", "walk", "qclt", "verify")
FAMILIES = ("star-p3", "star-c4", "star-lattice", "path", "cycle", "k2")
QCLT_FAMILIES = {"star-p3": star_p3_sequences, "star-c4": star_c4_sequences,
                 "star-lattice": star_lattice_sequences}


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: Optional[str] = None
    n: Optional[int] = None
    ray_length: Optional[int] = None
    graph_file: Optional[str] = None
    t_max: float = 4.0 * np.pi
    steps: int = 256
    k_max: Optional[int] = None
    format: str = "json"
    output_path: Optional[str] = None
    probabilities_path: Optional[str] = None
    tolerance: float = DEFAULT_TOLERANCE
    verify_tolerance: float = 1e-8
    all: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.family is not None and self.family not in FAMILIES:
            raise UsageError(f"unknown graph family {self.family!r}")
        if self.steps < 1:
            raise UsageError("--steps must be >= 1")
        if not self.t_max > 0:
            raise UsageError("--t-max must be positive")
        if self.k_max is not None and self.k_max < 0:
            raise UsageError("--k-max must be nonnegative")
        if self.tolerance <= 0 or self.verify_tolerance <= 0:
            raise UsageError("tolerances must be positive")
        if self.command == "verify" and self.all:
            return
        if (self.family is None) == (self.graph_file is None):
            raise UsageError("give exactly one of --graph or --graph-file")
        if self.family in ("star-p3", "star-c4", "star-lattice", "path", "cycle") and self.n is None:
            raise UsageError(f"--n is required for family {self.family}")
        if self.command == "qclt" and self.family not in QCLT_FAMILIES:
            raise UsageError("qclt needs --graph star-p3, star-c4 or star-lattice")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.steps)

    @property
    def infinite_lattice(self) -> bool:
        return self.family == "star-lattice" and self.ray_length is None

    def default_name(self) -> str:
        parts = [self.command, self.family or Path(self.graph_file or "all").stem]
        if self.n is not None:
            parts.append(f"n{self.n}")
        if self.ray_length is not None:
            parts.append(f"L{self.ray_length}")
        ext = "csv" if self.format == "csv" and self.command in ("walk", "qclt") else "json"
        return "-".join(parts) + "." + ext


def build_graph(cfg: RunConfig):
    if cfg.graph_file is not None:
        with open(cfg.graph_file) as fh:
            return ser.graph_from_dict(json.load(fh))
    n = cfg.n
    if cfg.family == "k2":
        return build_k2()
    if cfg.family == "path":
        return build_path(n)
    if cfg.family == "cycle":
        return build_cycle(n)
    if cfg.family == "star-p3":
        return star_power(build_path(3), n)
    if cfg.family == "star-c4":
        return star_power(build_cycle(4), n)
    if cfg.infinite_lattice:
        raise UsageError("the infinite star lattice has no finite graph; pass --ray-length")
    return build_star_lattice(n, cfg.ray_length)


def _sequences(cfg: RunConfig):
    """Jacobi sequences of the configured graph, closed form for the infinite lattice."""
    if cfg.infinite_lattice:
        if cfg.n < 1:
            raise UsageError("star lattice needs --n >= 1")
        return star_lattice_sequences(cfg.n), None, None
    g = build_graph(cfg)
    s = stratify(g)
    j, report = quantum_decompose(g, s, cfg.tolerance)
    if not report.invariant:
        raise DomainError(f"graph {g.label!r} is not invariant under the quantum decomposition "
                          f"(max residual {report.max_residual:.3e})")
    return j, g, s


def _emit(cfg: RunConfig, text: str, path: Optional[str] = None):
    target = path or cfg.output_path
    if target is None and os.environ.get(OUTPUT_DIR_ENV):
        target = os.path.join(os.environ[OUTPUT_DIR_ENV], cfg.default_name())
    if target is None:
        sys.stdout.write(text)
        return
    Path(target).parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", newline="") as fh:
        fh.write(text)


def _series_text(cfg, series):
    if cfg.format == "csv":
        return ser.series_to_csv(series)
    return ser.dumps(ser.series_to_dict(series))


def _run_verify(cfg: RunConfig) -> int:
    if cfg.all:
        results = verify_all(echo=lambda line: print(line, file=sys.stderr))
        failed = [r.name for r in results if not r.passed]
        summary = {"passed": not failed, "failed": failed,
                   "checks": [{"name": r.name, "passed": r.passed, "observed": r.observed,
                               "tolerance": r.tolerance} for r in results]}
        _emit(cfg, ser.dumps(summary))
        return EX_OK if not failed else EX_SOFTWARE
    j, g, s = _sequences(cfg)
    if g is None:
        raise UsageError("verify needs a finite graph; pass --ray-length for the star lattice")
    t = cfg.times
    spectral = amplitudes_spectral(j, times=t)
    oracle = amplitudes_oracle(g, s, t)
    deviation = float(np.max(np.abs(spectral.amplitudes - oracle.amplitudes)))
    conservation = float(np.max(np.abs(spectral.total_probability() - 1.0)))
    passed = deviation < cfg.verify_tolerance and conservation < cfg.verify_tolerance
    report = {"graph": g.label, "vertex_count": g.vertex_count, "strata_sizes": s.sizes,
              "jacobi": ser.jacobi_to_dict(j), "max_deviation": deviation,
              "max_conservation_error": conservation, "tolerance": cfg.verify_tolerance,
              "passed": passed}
    _emit(cfg, ser.dumps(report))
    return EX_OK if passed else EX_SOFTWARE


def run(cfg: RunConfig) -> int:
    cfg.validate()
    if cfg.command == "verify":
        return _run_verify(cfg)
    if cfg.command == "graph":
        _emit(cfg, ser.dumps(ser.graph_to_dict(build_graph(cfg))))
        return EX_OK
    if cfg.command == "qclt":
        k_max = 2 if cfg.k_max is None else cfg.k_max
        series = qclt_amplitudes(QCLT_FAMILIES[cfg.family], cfg.n, k_max, cfg.times)
        _emit(cfg, _series_text(cfg, series))
        return EX_OK
    j, g, s = _sequences(cfg)
    if cfg.command == "jacobi":
        _emit(cfg, ser.dumps(ser.jacobi_to_dict(j)))
    elif cfg.command == "measure":
        _emit(cfg, ser.dumps(ser.measure_to_dict(measure_for(j))))
    else:
        k_max = cfg.k_max
        if k_max is None:
            k_max = j.depth - 1 if j.finite else 8
        series = amplitudes_spectral(j, measure_for(j), k_max, cfg.times)
        _emit(cfg, _series_text(cfg, series))
        if cfg.probabilities_path:
            if s is None or k_max != s.depth - 1:
                raise UsageError("--probabilities needs a finite graph and the default --k-max")
            probs = per_vertex_probability(series, s)
            _emit(cfg, ser.probabilities_to_csv(series.times, probs), cfg.probabilities_path)
    return EX_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="starwalk", description="Quantum walks on star graphs by spectral distribution.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--graph", dest="family", choices=FAMILIES)
        p.add_argument("--graph-file", help="graph JSON {label, vertex_count, root, edges}")
        p.add_argument("--n", type=int, help="copies N for star families, vertex count for path/cycle")
        p.add_argument("--ray-length", type=int, help="truncate the star lattice to finite rays")
        p.add_argument("--t-max", type=float, default=4.0 * np.pi)
        p.add_argument("--steps", type=int, default=256, help="number of time points in [0, t-max]")
        p.add_argument("--k-max", type=int)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", dest="output_path")
        p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                       help="invariance tolerance of the quantum decomposition")
        p.add_argument("--verify-tolerance", type=float, default=1e-8)
        if name == "walk":
            p.add_argument("--probabilities", dest="probabilities_path",
                           help="also write the per-vertex probability CSV here")
        if name == "verify":
            p.add_argument("--all", action="store_true", help="run the full acceptance suite")
    return parser


def main(argv=None) -> int:
    try:
        args = vars(make_parser().parse_args(argv))
    except SystemExit as exc:
        return exc.code
    try:
        return run(RunConfig(**args))
    except UsageError as exc:
        print(f"starwalk: usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except DomainError as exc:
        print(f"starwalk: {exc}", file=sys.stderr)
        return EX_DATAERR
    except ArithmeticError as exc:
        print(f"starwalk: computation failed: {exc}", file=sys.stderr)
        return EX_SOFTWARE
    except (ValueError, OSError) as exc:
        print(f"starwalk: usage error: {exc}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
