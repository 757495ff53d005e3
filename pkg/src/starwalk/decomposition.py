"""Quantum decomposition of the adjacency operator along a stratification.

Writing ``|phi_k>`` for the uniform unit vector on stratum ``k``, an
invariant graph satisfies

    A |phi_k> = sqrt(w_{k+1}) |phi_{k+1}> + a_{k+1} |phi_k> + sqrt(w_k) |phi_{k-1}>

so the adjacency operator restricted to span{|phi_k>} is the Jacobi matrix
with diagonal ``a_1, a_2, ...`` and off-diagonal ``sqrt(w_1), sqrt(w_2), ...``.

Index convention: ``alpha[k]`` (0-based list) is a_{k+1} = <phi_k|A|phi_k>,
and ``omega[k]`` is w_{k+1} = <phi_{k+1}|A|phi_k>**2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graphs import RootedGraph, Stratification, apply_adjacency, stratify

DEFAULT_TOLERANCE = 1e-10


@dataclass(frozen=True)
class JacobiSequences:
    """Szego-Jacobi coefficients ``omega = (w_1, w_2, ...)``, ``alpha = (a_1, a_2, ...)``.

    ``tail="unit"`` extends both sequences indefinitely with ``w_k = 1`` and
    ``a_k = 0`` past the stored entries (the star lattice rays).
    """

    omega: tuple[float, ...]
    alpha: tuple[float, ...]
    tail: Optional[str] = None

    def __post_init__(self):
        omega = tuple(float(w) for w in self.omega)
        alpha = tuple(float(a) for a in self.alpha)
        if not all(np.isfinite(omega)) or not all(np.isfinite(alpha)):
            raise ValueError("Jacobi sequences must be finite")
        if any(w <= 0 for w in omega):
            raise ValueError(f"omega must be strictly positive, got {omega}")
        if len(alpha) not in (len(omega), len(omega) + 1):
            raise ValueError("alpha must have len(omega) or len(omega)+1 entries")
        if self.tail not in (None, "unit"):
            raise ValueError(f"unknown tail {self.tail!r}")
        if len(alpha) == len(omega):
            alpha = alpha + (0.0,)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "alpha", alpha)

    @property
    def depth(self) -> int:
        """Number of strata represented by the stored coefficients."""
        return len(self.omega) + 1

    @property
    def finite(self) -> bool:
        return self.tail is None

    def w(self, k: int) -> float:
        """w_k, 1-based."""
        if k < 1:
            raise IndexError("omega is 1-based")
        if k <= len(self.omega):
            return self.omega[k - 1]
        if self.tail == "unit":
            return 1.0
        raise IndexError(f"omega_{k} beyond depth {self.depth}")

    def a(self, k: int) -> float:
        """a_k, 1-based."""
        if k < 1:
            raise IndexError("alpha is 1-based")
        if k <= len(self.alpha):
            return self.alpha[k - 1]
        if self.tail == "unit":
            return 0.0
        raise IndexError(f"alpha_{k} beyond depth {self.depth}")

    def shifted(self) -> "JacobiSequences":
        """Sequences ``(w_2, w_3, ...), (a_2, a_3, ...)`` of the associated polynomials."""
        if len(self.omega) == 0:
            if self.tail == "unit":
                return JacobiSequences((), (0.0,), "unit")
            raise ValueError("cannot shift a depth-1 sequence")
        return JacobiSequences(self.omega[1:], self.alpha[1:], self.tail)

    def norms(self, k_max: int) -> np.ndarray:
        """Squared norms ``w_1 w_2 ... w_k`` of ``P_k`` for ``k = 0..k_max``."""
        out = np.ones(k_max + 1)
        for k in range(1, k_max + 1):
            out[k] = out[k - 1] * self.w(k)
        return out

    def jacobi_matrix(self, size: Optional[int] = None) -> np.ndarray:
        n = self.depth if size is None else size
        if self.finite and n > self.depth:
            raise ValueError(f"requested {n}x{n} Jacobi matrix from depth {self.depth}")
        m = np.diag([self.a(k) for k in range(1, n + 1)])
        off = np.sqrt([self.w(k) for k in range(1, n)])
        m += np.diag(off, 1) + np.diag(off, -1)
        return m


@dataclass(frozen=True)
class InvarianceReport:
    max_residual: float
    per_stratum_residuals: tuple[float, ...]
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def invariant(self) -> bool:
        return self.max_residual < self.tolerance


def quantum_decompose(g: RootedGraph, s: Optional[Stratification] = None,
                      tolerance: float = DEFAULT_TOLERANCE):
    """Extract ``(JacobiSequences, InvarianceReport)`` from a rooted graph.

    The residual of stratum ``k`` is what is left of ``A|phi_k>`` after
    removing its components along ``|phi_{k-1}>``, ``|phi_k>``, ``|phi_{k+1}>``.
    A non-invariant graph is reported, not raised; its sequences describe
    only the projected dynamics and must not be fed to the spectral routines.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if s is None:
        s = stratify(g)
    n = g.vertex_count
    depth = s.depth
    phis = [s.basis_vector(k, n) for k in range(depth)]
    omega, alpha, residuals = [], [], []
    for k in range(depth):
        w = apply_adjacency(g, phis[k])
        alpha.append(float(phis[k] @ w))
        r = w - alpha[-1] * phis[k]
        if k > 0:
            r -= float(phis[k - 1] @ w) * phis[k - 1]
        if k + 1 < depth:
            up = float(phis[k + 1] @ w)
            if up <= 0:
                raise ValueError(f"stratum {k + 1} has no edge back to stratum {k}; "
                                 "the stratification is broken")
            omega.append(up * up)
            r -= up * phis[k + 1]
        residuals.append(float(np.linalg.norm(r)))
    report = InvarianceReport(max(residuals), tuple(residuals), tolerance)
    return JacobiSequences(tuple(omega), tuple(alpha)), report


def stratum_matrix(g: RootedGraph, s: Stratification) -> np.ndarray:
    """Directly computed ``<phi_j|A|phi_k>`` for all strata pairs."""
    phis = np.array([s.basis_vector(k, g.vertex_count) for k in range(s.depth)])
    applied = np.array([apply_adjacency(g, p) for p in phis])
    return phis @ applied.T


def k2_sequences() -> JacobiSequences:
    return JacobiSequences((1.0,), (0.0, 0.0))


def star_p3_sequences(N: int) -> JacobiSequences:
    """Closed-form sequences of the N-fold star power of the 3-vertex path."""
    return JacobiSequences((float(N), 1.0), (0.0, 0.0, 0.0))


def star_c4_sequences(N: int) -> JacobiSequences:
    """Closed-form sequences of the N-fold star power of the 4-cycle."""
    return JacobiSequences((2.0 * N, 2.0), (0.0, 0.0, 0.0))


def star_lattice_sequences(N: int) -> JacobiSequences:
    """Infinite star lattice: ``w_1 = N``, every later ``w_k = 1``, all ``a_k = 0``."""
    return JacobiSequences((float(N),), (0.0, 0.0), "unit")
