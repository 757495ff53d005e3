"""Continuous-time quantum walk amplitudes on strata.

All amplitudes are ``q_k(t) = <phi_k| exp(-i t A) |phi_0>`` with hbar = 1.
The spectral route integrates ``exp(-i t x) P_k(x) / sqrt(w_1 ... w_k)``
against the spectral measure; the oracle route diagonalises the full
adjacency matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .bessel import bessel_j, bessel_ratio
from .decomposition import JacobiSequences
from .graphs import RootedGraph, Stratification, stratify
from .spectral import (SpectralMeasure, integrate, measure_for, orthogonality_defect,
                       poly_table)

ORTHOGONALITY_TOL = 1e-8
ORACLE_MAX_VERTICES = 5000
DEFAULT_TIMES = np.linspace(0.0, 4.0 * np.pi, 256)

_TIME_CHUNK = 64


@dataclass(frozen=True, eq=False)
class AmplitudeSeries:
    """Complex amplitudes ``amplitudes[i, k] = q_k(times[i])``."""

    times: np.ndarray
    amplitudes: np.ndarray
    method: str

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 2 or amps.shape[0] != times.shape[0]:
            raise ValueError("amplitudes must have shape (len(times), k_max + 1)")
        if self.method not in ("spectral", "oracle", "closed_form", "qclt"):
            raise ValueError(f"unknown method {self.method!r}")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def k_max(self) -> int:
        return self.amplitudes.shape[1] - 1

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def total_probability(self) -> np.ndarray:
        return self.probabilities.sum(axis=1)

    def __eq__(self, other):
        if not isinstance(other, AmplitudeSeries):
            return NotImplemented
        return (self.method == other.method
                and np.array_equal(self.times, other.times)
                and np.array_equal(self.amplitudes, other.amplitudes))


def _times(times) -> np.ndarray:
    t = np.atleast_1d(np.asarray(times, dtype=float))
    if t.ndim != 1:
        raise ValueError("times must be one-dimensional")
    return t


def amplitudes_spectral(j: JacobiSequences, m: Optional[SpectralMeasure] = None,
                        k_max: Optional[int] = None, times=DEFAULT_TIMES,
                        check: bool = True) -> AmplitudeSeries:
    """Stratum amplitudes by integration against the spectral measure.

    The pair ``(j, m)`` is first checked for orthogonality of ``P_0 .. P_K``;
    a mismatched pair raises ``ValueError``. For a finite sequence every
    ``q_k`` with ``k >= depth`` is identically zero.

    Atoms outside ``[-2, 2]`` carry the decaying solution of the recurrence,
    so forward evaluation loses roughly one digit per few strata there; deep
    truncations (hundreds of strata) should use the oracle instead.
    """
    if m is None:
        m = measure_for(j)
    if k_max is None:
        if not j.finite:
            raise ValueError("k_max is required for an infinite sequence")
        k_max = j.depth - 1
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    t = _times(times)
    live = k_max if not j.finite else min(k_max, j.depth - 1)
    if check:
        defect = orthogonality_defect(j, m, live)
        if defect > ORTHOGONALITY_TOL:
            raise ValueError(f"measure does not orthogonalise the sequence "
                             f"(defect {defect:.3e})")
    norm = 1.0 / np.sqrt(j.norms(live))
    out = np.zeros((t.size, k_max + 1), dtype=complex)
    for start in range(0, t.size, _TIME_CHUNK):
        tc = t[start:start + _TIME_CHUNK]

        def f(x):
            p = poly_table(j, live, x)
            return np.exp(-1j * tc[:, None, None] * x[None, None, :]) * p[None, :, :]

        out[start:start + _TIME_CHUNK, :live + 1] = integrate(m, f) * norm
    return AmplitudeSeries(t, out, "spectral")


def _check_oracle_size(g: RootedGraph, max_vertices: int):
    if g.vertex_count > max_vertices:
        raise ValueError(f"{g.vertex_count} vertices exceeds the oracle cap of {max_vertices}")


def vertex_amplitudes_oracle(g: RootedGraph, times=DEFAULT_TIMES,
                             max_vertices: int = ORACLE_MAX_VERTICES) -> np.ndarray:
    """``exp(-i t A)|root>`` for every time, shape ``(len(times), vertex_count)``."""
    _check_oracle_size(g, max_vertices)
    t = _times(times)
    evals, evecs = np.linalg.eigh(g.adjacency_matrix())
    phase = np.exp(-1j * t[:, None] * evals[None, :])
    return (phase * evecs[g.root][None, :]) @ evecs.T


def amplitudes_oracle(g: RootedGraph, s: Optional[Stratification] = None, times=DEFAULT_TIMES,
                      max_vertices: int = ORACLE_MAX_VERTICES) -> AmplitudeSeries:
    """Stratum amplitudes ``<phi_k| exp(-i t A) |phi_0>`` from a dense eigendecomposition."""
    _check_oracle_size(g, max_vertices)
    if s is None:
        s = stratify(g)
    t = _times(times)
    evals, evecs = np.linalg.eigh(g.adjacency_matrix())
    phis = np.array([s.basis_vector(k, g.vertex_count) for k in range(s.depth)])
    left = phis @ evecs  # <phi_k|v_l>
    right = evecs[g.root]  # <v_l|root>
    phase = np.exp(-1j * t[:, None] * evals[None, :])
    amps = (phase * right[None, :]) @ left.T
    return AmplitudeSeries(t, amps, "oracle")


def per_vertex_probability(series: AmplitudeSeries, s: Stratification) -> np.ndarray:
    """Probability of each vertex, ``|q_k|^2 / |V_k|`` spread over stratum ``k``.

    Returns an array of shape ``(len(times), vertex_count)``.
    """
    if series.k_max + 1 != s.depth:
        raise ValueError(f"series has {series.k_max + 1} strata, stratification {s.depth}")
    per_stratum = series.probabilities / np.array(s.sizes)[None, :]
    return per_stratum[:, s.stratum_of()]


# ------------------------------------------------------------ closed forms

def star_p3_closed_form(N: int, times=DEFAULT_TIMES) -> AmplitudeSeries:
    """Three-atom walk on the N-fold star of the 3-vertex path."""
    t = _times(times)
    r = np.sqrt(N + 1.0)
    q0 = (1.0 + N * np.cos(r * t)) / (N + 1.0)
    q1 = -1j * np.sqrt(N / (N + 1.0)) * np.sin(r * t)
    q2 = N / ((N + 1.0) * np.sqrt(N)) * (np.cos(r * t) - 1.0)
    return AmplitudeSeries(t, np.column_stack([q0, q1, q2]), "closed_form")


def star_c4_closed_form(N: int, times=DEFAULT_TIMES) -> AmplitudeSeries:
    """Three-atom walk on the N-fold star of the 4-cycle.

    ``q_2 = sqrt(N)/(N+1) (cos(sqrt(2(N+1)) t) - 1)``, which follows from
    ``P_2 = x^2 - 2N`` and vanishes at ``t = 0``.
    """
    t = _times(times)
    r = np.sqrt(2.0 * (N + 1.0))
    q0 = (1.0 + N * np.cos(r * t)) / (N + 1.0)
    q1 = -1j * np.sqrt(N / (N + 1.0)) * np.sin(r * t)
    q2 = np.sqrt(N) / (N + 1.0) * (np.cos(r * t) - 1.0)
    return AmplitudeSeries(t, np.column_stack([q0, q1, q2]), "closed_form")


def path_bessel_amplitudes(k_max: int, times=DEFAULT_TIMES) -> AmplitudeSeries:
    """Half-infinite path: ``q_k(t) = (-i)^k (J_k(2t) + J_{k+2}(2t)) = (-i)^k 2(k+1) J_{k+1}(2t)/(2t)``."""
    t = _times(times)
    cols = [(-1j) ** k * bessel_ratio(k, 2.0 * t) for k in range(k_max + 1)]
    return AmplitudeSeries(t, np.column_stack(cols), "closed_form")


def line_bessel_amplitudes(k_max: int, times=DEFAULT_TIMES) -> AmplitudeSeries:
    """Infinite line seen from one point: ``q_0 = J_0(2t)``, ``q_k = (-i)^k sqrt(2) J_k(2t)``."""
    t = _times(times)
    jt = bessel_j(k_max, 2.0 * t)
    cols = [jt[0]] + [(-1j) ** k * np.sqrt(2.0) * jt[k] for k in range(1, k_max + 1)]
    return AmplitudeSeries(t, np.column_stack(cols), "closed_form")


# ---------------------------------------------------------- scaled-time limit

JacobiFamily = Callable[[int], JacobiSequences]


def qclt_amplitudes(j_family: JacobiFamily, N: int, k_max: int,
                    times=DEFAULT_TIMES) -> AmplitudeSeries:
    """Amplitudes of ``exp(-i t A / sqrt(N))`` for the family member ``N``."""
    if N < 1:
        raise ValueError("N must be positive")
    t = _times(times)
    j = j_family(N)
    series = amplitudes_spectral(j, measure_for(j), k_max, t / np.sqrt(N))
    return AmplitudeSeries(t, series.amplitudes, "qclt")


def qclt_limit(times=DEFAULT_TIMES, k_max: int = 1) -> AmplitudeSeries:
    """Limiting two-level walk ``(cos t, -i sin t, 0, 0, ...)``."""
    t = _times(times)
    amps = np.zeros((t.size, max(k_max, 1) + 1), dtype=complex)
    amps[:, 0] = np.cos(t)
    amps[:, 1] = -1j * np.sin(t)
    return AmplitudeSeries(t, amps[:, :k_max + 1], "qclt")


@dataclass(frozen=True)
class ConvergenceReport:
    """Sup-norm distances to the limit walk, one entry per ``N``.

    ``sup_errors`` takes the max over every stratum up to ``k_max``;
    ``k2_errors`` only over the two limit strata; ``tail_sup`` is the largest
    ``|q_k|`` with ``k >= 2`` (zero when ``k_max < 2``).
    """

    N_values: tuple[int, ...]
    sup_errors: tuple[float, ...]
    k2_errors: tuple[float, ...]
    tail_sup: tuple[float, ...]


def convergence_study(j_family: JacobiFamily, N_list: Sequence[int], k_max: int,
                      times=DEFAULT_TIMES) -> ConvergenceReport:
    if len(N_list) == 0:
        raise ValueError("N_list is empty")
    t = _times(times)
    limit = qclt_limit(t, k_max).amplitudes
    sup, k2, tail = [], [], []
    for N in N_list:
        q = qclt_amplitudes(j_family, N, k_max, t).amplitudes
        diff = np.abs(q - limit)
        sup.append(float(diff.max()))
        k2.append(float(diff[:, :2].max()))
        tail.append(float(np.abs(q[:, 2:]).max()) if k_max >= 2 else 0.0)
    return ConvergenceReport(tuple(int(n) for n in N_list), tuple(sup), tuple(k2), tuple(tail))
