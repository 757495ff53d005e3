"""End-to-end acceptance checks, shared by the test suite and ``starwalk verify --all``.

Each check returns a :class:`CheckResult` carrying the observed worst-case
deviation next to the tolerance it is held to.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bessel import bessel_ratio, bessel_j
from .decomposition import (quantum_decompose, star_c4_sequences, star_lattice_sequences,
                            star_p3_sequences)
from .graphs import (build_cycle, build_path, build_star_lattice, closed_walk_counts,
                     star_power, stratify)
from .spectral import (measure_moment, quadrature_measure, star_lattice_measure,
                       stieltjes_invert, stieltjes_star_lattice_closed)
from .walk import (amplitudes_oracle, amplitudes_spectral, convergence_study,
                   star_p3_closed_form, vertex_amplitudes_oracle)

N_RANGE = range(1, 9)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    observed: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: observed {self.observed:.3e} (tol {self.tolerance:.0e}) {self.detail}".rstrip()


def _below(name, observed, tol, detail=""):
    return CheckResult(name, bool(observed < tol), float(observed), tol, detail)


def finite_families():
    """``(name, graph)`` for every finite example graph of the oracle checks."""
    for N in N_RANGE:
        yield f"star-p3 N={N}", star_power(build_path(3), N)
        yield f"star-c4 N={N}", star_power(build_cycle(4), N)
    for N in N_RANGE:
        for L in range(4, 13):
            yield f"lattice N={N} L={L}", build_star_lattice(N, L)


def check_jacobi_extraction() -> CheckResult:
    worst = 0.0
    cases = [(star_power(build_path(3), N), [N, 1]) for N in N_RANGE]
    cases += [(star_power(build_cycle(4), N), [2 * N, 2]) for N in N_RANGE]
    cases += [(build_star_lattice(N, L), [N] + [1] * (L - 1)) for N in N_RANGE for L in range(1, 13)]
    for g, omega in cases:
        j, report = quantum_decompose(g)
        if not report.invariant:
            return CheckResult("1 Jacobi extraction", False, report.max_residual, 1e-10,
                               f"{g.label} not invariant")
        worst = max(worst, np.max(np.abs(np.array(j.omega) - omega)), np.max(np.abs(j.alpha)))
    return _below("1 Jacobi extraction", worst, 1e-10, f"{len(cases)} graphs")


def check_quadrature_atoms() -> CheckResult:
    worst = 0.0
    for N in N_RANGE:
        for j, r in ((star_p3_sequences(N), np.sqrt(N + 1.0)),
                     (star_c4_sequences(N), np.sqrt(2.0 * (N + 1.0)))):
            m = quadrature_measure(j)
            side = N / (2.0 * (N + 1.0))
            expected = np.array([[-r, side], [0.0, 1.0 / (N + 1.0)], [r, side]])
            worst = max(worst, np.max(np.abs(np.array(m.atoms) - expected)))
    return _below("2 Quadrature atoms", worst, 1e-10)


def check_closed_form_amplitudes() -> CheckResult:
    t = np.linspace(0.0, 4.0 * np.pi, 256)
    worst = 0.0
    for N in N_RANGE:
        got = amplitudes_spectral(star_p3_sequences(N), times=t).amplitudes
        want = star_p3_closed_form(N, t).amplitudes
        worst = max(worst, np.max(np.abs(got[:, :2] - want[:, :2])))
    return _below("3a star-p3 q0,q1 trigonometric forms", worst, 1e-10, "256 times on [0, 4pi]")


def printed_path_formula(k, t):
    """``i^k (J_k(t) + J_{k+2}(t))`` exactly as printed for the N=1 lattice."""
    j = bessel_j(k + 2, t)
    return 1j ** k * (j[k] + j[k + 2])


def printed_line_formula(k, t):
    """``J_0(t)`` and ``i^k sqrt(2) J_k(t)`` exactly as printed for the N=2 lattice."""
    j = bessel_j(k, t)[k]
    return j if k == 0 else 1j ** k * np.sqrt(2.0) * j


def check_bessel_amplitudes() -> CheckResult:
    """Printed Bessel forms vs spectral amplitudes.

    The printed forms use Bessel argument ``t`` and phase ``i^k``; under
    ``exp(-itA)`` they equal ``q_k(-t/2)``. Both the printed forms at
    ``-t/2`` and the ``(-i)^k, 2t`` forms at ``t`` are compared.
    """
    t = np.linspace(0.0, 20.0, 201)
    worst = 0.0
    for N, printed in ((1, printed_path_formula), (2, printed_line_formula)):
        j = star_lattice_sequences(N)
        back = amplitudes_spectral(j, k_max=6, times=-t / 2.0).amplitudes
        fwd = amplitudes_spectral(j, k_max=6, times=t).amplitudes
        for k in range(7):
            worst = max(worst, np.max(np.abs(back[:, k] - printed(k, t))))
            if N == 1:
                direct = (-1j) ** k * bessel_ratio(k, 2.0 * t)
            else:
                direct = (-1j) ** k * np.sqrt(2.0 if k else 1.0) * bessel_j(k, 2.0 * t)[k]
            worst = max(worst, np.max(np.abs(fwd[:, k] - direct)))
    return _below("3b lattice N=1,2 Bessel forms", worst, 1e-8, "k<=6, t<=20")


def check_oracle_equivalence() -> CheckResult:
    t = np.arange(0.0, 10.0 + 1e-12, 0.5)
    worst = 0.0
    count = 0
    for name, g in finite_families():
        s = stratify(g)
        j, report = quantum_decompose(g, s)
        if not report.invariant:
            return CheckResult("4 Oracle equivalence", False, report.max_residual, 1e-8,
                               f"{name} not invariant")
        spec = amplitudes_spectral(j, times=t).amplitudes
        orac = amplitudes_oracle(g, s, t).amplitudes
        worst = max(worst, np.max(np.abs(spec - orac)))
        count += 1
    return _below("4 Oracle equivalence", worst, 1e-8, f"{count} graphs incl. star-c4 q2")


def check_conservation() -> CheckResult:
    t = np.linspace(0.0, 4.0 * np.pi, 256)
    worst = 0.0
    for _, g in finite_families():
        j, _ = quantum_decompose(g)
        series = amplitudes_spectral(j, times=t)
        worst = max(worst, np.max(np.abs(series.total_probability() - 1.0)))
    return _below("5a Probability conservation", worst, 1e-8)


def check_uniformity() -> CheckResult:
    t = np.linspace(0.0, 4.0 * np.pi, 64)
    worst = 0.0
    for _, g in finite_families():
        s = stratify(g)
        prob = np.abs(vertex_amplitudes_oracle(g, t)) ** 2
        for shell in s.strata:
            block = prob[:, list(shell)]
            worst = max(worst, np.max(block.max(axis=1) - block.min(axis=1)))
    return _below("5b Per-vertex uniformity within strata", worst, 1e-12, "oracle side")


QCLT_NS = (10, 100, 1000, 10000)
QCLT_TIMES = np.linspace(0.0, 2.0 * np.pi, 256)
QCLT_FAMILIES = {"star-p3": star_p3_sequences, "star-lattice": star_lattice_sequences}


def _qclt_reports():
    return {name: convergence_study(fam, QCLT_NS, 4, QCLT_TIMES) for name, fam in QCLT_FAMILIES.items()}


def check_qclt_monotone(reports=None) -> CheckResult:
    reports = reports or _qclt_reports()
    bad = [name for name, r in reports.items()
           if any(b >= a for a, b in zip(r.sup_errors, r.sup_errors[1:]))
           or any(b >= a for a, b in zip(r.k2_errors, r.k2_errors[1:]))]
    observed = max(r.k2_errors[-1] for r in reports.values())
    return CheckResult("6a QCLT distance decreases along N=10..1e4", not bad, observed, 1e-2,
                       "non-monotone: " + ", ".join(bad) if bad else "both families")


def check_qclt_limit(reports=None) -> CheckResult:
    reports = reports or _qclt_reports()
    observed = max(r.k2_errors[-1] for r in reports.values())
    return _below("6b QCLT sup|q - (cos t, -i sin t)| at N=1e4", observed, 1e-2, "t in [0, 2pi]")


def check_qclt_tail(reports=None) -> CheckResult:
    reports = reports or _qclt_reports()
    observed = max(r.tail_sup[-1] for r in reports.values())
    return _below("6c QCLT sup|q_k|, k>=2, at N=1e4", observed, 1e-2, "t in [0, 2pi]")


def check_lattice_mass() -> CheckResult:
    worst = 0.0
    for N in range(1, 11):
        m = star_lattice_measure(N)
        expected_atoms = (N - 2.0) / (N - 1.0) if N >= 3 else 0.0
        worst = max(worst, abs(m.total_mass() - 1.0), abs(m.atom_mass - expected_atoms))
    return _below("7 Star-lattice measure normalisation", worst, 1e-8, "N=1..10")


def check_inversion() -> CheckResult:
    x = np.linspace(-1.9, 1.9, 381)
    worst = 0.0
    for N in (1, 2, 3, 5):
        inv = stieltjes_invert(lambda z, N=N: stieltjes_star_lattice_closed(N, z), x)
        pdf = star_lattice_measure(N).density.pdf(x)
        worst = max(worst, np.max(np.abs(inv.density - pdf)))
        if inv.atoms:
            return CheckResult("8 Stieltjes inversion", False, worst, 1e-4, f"spurious atoms N={N}")
    return _below("8 Stieltjes inversion", worst, 1e-4, "N in {1,2,3,5}, x in [-1.9, 1.9]")


def check_moments() -> CheckResult:
    worst = 0.0
    count = 0
    graphs = [g for _, g in finite_families() if g.vertex_count <= 30]
    graphs += [build_star_lattice(N, L) for N in N_RANGE for L in (1, 2, 3) if N * L + 1 <= 30]
    for g in graphs:
        j, _ = quantum_decompose(g)
        m = quadrature_measure(j)
        walks = closed_walk_counts(g, 6)
        for deg in range(7):
            mom = measure_moment(m, deg)
            if round(mom) != walks[deg]:
                return CheckResult("9 Moments = closed walk counts", False, abs(mom - walks[deg]),
                                   1e-8, f"{g.label} degree {deg}")
            worst = max(worst, abs(mom - walks[deg]))
        count += 1
    return _below("9 Moments = closed walk counts", worst, 1e-8, f"{count} graphs, m<=6")


CHECKS: dict[str, Callable[[], CheckResult]] = {
    "jacobi": check_jacobi_extraction,
    "atoms": check_quadrature_atoms,
    "trig": check_closed_form_amplitudes,
    "bessel": check_bessel_amplitudes,
    "oracle": check_oracle_equivalence,
    "conservation": check_conservation,
    "uniformity": check_uniformity,
    "qclt-monotone": check_qclt_monotone,
    "qclt-limit": check_qclt_limit,
    "qclt-tail": check_qclt_tail,
    "mass": check_lattice_mass,
    "inversion": check_inversion,
    "moments": check_moments,
}


def verify_all(echo=print) -> list[CheckResult]:
    results = []
    reports = _qclt_reports()
    for key, check in CHECKS.items():
        result = check(reports) if key.startswith("qclt") else check()
        echo(result.line())
        results.append(result)
    return results
