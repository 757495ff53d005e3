"""Orthogonal polynomials, Stieltjes transforms and spectral measures.

The spectral measure ``mu`` of the adjacency operator in the root state is
the probability measure orthogonalising the polynomials

    P_0 = 1,  P_1 = x - a_1,  x P_n = P_{n+1} + a_{n+1} P_n + w_n P_{n-1}.

Finite graphs give purely atomic measures (Gauss quadrature nodes of the
Jacobi matrix). The star lattice gives a density on ``[-2, 2]`` plus, for
``N >= 3``, two atoms outside it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .decomposition import JacobiSequences

ATOM_MERGE_TOL = 1e-9
MASS_TOL = 1e-8
QUAD_TOL = 1e-10
MAX_MOMENT_DEGREE = 12
DEFAULT_V_SEQUENCE = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)

_GL_ORDER = 20
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)


# -------------------------------------------------------------- polynomials

def poly_table(j: JacobiSequences, k_max: int, x) -> np.ndarray:
    """``P_0(x) .. P_{k_max}(x)`` stacked along a new leading axis."""
    x = np.asarray(x)
    if k_max < 0:
        raise ValueError("degree must be nonnegative")
    if j.finite and k_max > j.depth:
        raise ValueError(f"P_{k_max} needs coefficients beyond depth {j.depth}")
    out = np.empty((k_max + 1,) + x.shape, dtype=np.result_type(x.dtype, float))
    out[0] = 1.0
    if k_max >= 1:
        out[1] = x - j.a(1)
    for n in range(1, k_max):
        out[n + 1] = (x - j.a(n + 1)) * out[n] - j.w(n) * out[n - 1]
    return out


def eval_poly(j: JacobiSequences, k: int, x):
    """``P_k(x)`` by forward recurrence."""
    return poly_table(j, k, x)[k]


def eval_shifted_poly(j: JacobiSequences, k: int, x):
    """Associated polynomial ``Q^{(1)}_k(x)``: same recurrence on ``(w_2, ...), (a_2, ...)``."""
    if j.finite and k > j.depth - 1:
        raise ValueError(f"Q_{k} needs coefficients beyond depth {j.depth}")
    return poly_table(j.shifted(), k, x)[k]


# -------------------------------------------------------- Stieltjes transforms

def stieltjes_finite(j: JacobiSequences, z):
    """``G(z) = 1/(z - a_1 - w_1/(z - a_2 - ...))`` truncated at the stored depth.

    Equal to ``Q^{(1)}_{n-1}(z) / P_n(z)`` with ``n = depth``. Evaluated
    bottom-up as a continued fraction.
    """
    if not j.finite:
        raise ValueError("stieltjes_finite needs a finite-depth sequence")
    z = np.asarray(z, dtype=complex)
    n = j.depth
    p_n = eval_poly(j, n, z)
    scale = np.maximum(1.0, np.abs(z)) ** n
    if np.any(np.abs(p_n) <= 1e-12 * scale):
        raise ValueError("z is a pole of the transform (a root of P_n)")
    g = 1.0 / (z - j.a(n))
    for k in range(n - 1, 0, -1):
        g = 1.0 / (z - j.a(k) - j.w(k) * g)
    return g


def _sqrt_z2_minus_4(z):
    # sqrt(z-2)*sqrt(z+2) is analytic off [-2, 2] and behaves like +z at infinity
    return np.sqrt(z - 2.0) * np.sqrt(z + 2.0)


def stieltjes_lattice_tail(z):
    """Transform of the unit-coefficient tail, ``(z - sqrt(z^2 - 4)) / 2``.

    The branch decays like ``1/z`` at infinity, so ``|G| <= 1`` off the cut.
    Real arguments inside ``[-2, 2]`` are on the cut and rejected. Computed
    as ``2 / (z + sqrt(z^2 - 4))`` to avoid cancellation at large ``|z|``.
    """
    z = np.asarray(z, dtype=complex)
    on_cut = (z.imag == 0) & (np.abs(z.real) <= 2.0)
    if np.any(on_cut):
        raise ValueError("real z in [-2, 2] lies on the branch cut")
    return 2.0 / (z + _sqrt_z2_minus_4(z))


def stieltjes_star_lattice(N: int, z):
    """Star-lattice transform ``1 / (z - N * G_tail(z))``."""
    return 1.0 / (z - N * stieltjes_lattice_tail(z))


def stieltjes_star_lattice_closed(N: int, z):
    """Rationalised form ``((2-N) z - N sqrt(z^2-4)) / (2 (N^2 - (N-1) z^2))``."""
    z = np.asarray(z, dtype=complex)
    return ((2 - N) * z - N * _sqrt_z2_minus_4(z)) / (2.0 * (N * N - (N - 1) * z * z))


# ----------------------------------------------------------------- measures

@dataclass(frozen=True)
class ClosedFormDensity:
    """A named density on ``[-2, 2]``: ``semicircle``, ``arcsine`` or ``star_lattice``."""

    kind: str
    params: tuple[tuple[str, float], ...] = ()
    support: tuple[float, float] = (-2.0, 2.0)

    def __post_init__(self):
        if self.kind not in ("semicircle", "arcsine", "star_lattice"):
            raise ValueError(f"unknown density kind {self.kind!r}")
        if self.kind == "star_lattice" and "N" not in dict(self.params):
            raise ValueError("star_lattice density needs parameter N")

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = np.abs(x) < 2.0
        xs = np.where(inside, x, 0.0)
        if self.kind == "semicircle":
            val = np.sqrt(4.0 - xs * xs) / (2.0 * np.pi)
        elif self.kind == "arcsine":
            val = 1.0 / (np.pi * np.sqrt(4.0 - xs * xs))
        else:
            N = dict(self.params)["N"]
            val = N * np.sqrt(4.0 - xs * xs) / (2.0 * np.pi * (N * N - (N - 1) * xs * xs))
        return np.where(inside, val, 0.0)

    def theta_weight(self, theta):
        """``pdf(2 cos t) * 2 sin t``: the density in the angle ``x = 2 cos t``.

        The substitution absorbs the square-root endpoint behaviour, leaving a
        smooth integrand on ``[0, pi]``.
        """
        s2 = np.sin(theta) ** 2
        if self.kind == "semicircle":
            return 2.0 * s2 / np.pi
        if self.kind == "arcsine":
            return np.full_like(theta, 1.0 / np.pi)
        N = dict(self.params)["N"]
        return 2.0 * N * s2 / (np.pi * (N * N - 4.0 * (N - 1) * np.cos(theta) ** 2))


@dataclass(frozen=True)
class SpectralMeasure:
    """Atoms ``(position, weight)`` plus an optional continuous part.

    The continuous part is either a :class:`ClosedFormDensity` or a density
    tabulated on a grid as ``((x, f(x)), ...)`` and integrated by trapezoids.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    density: Optional[ClosedFormDensity] = None
    tabulated: Optional[tuple[tuple[float, float], ...]] = None

    def __post_init__(self):
        atoms = tuple((float(x), float(w)) for x, w in self.atoms)
        xs = [x for x, _ in atoms]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("atom positions must be strictly increasing")
        if any(w <= 0 for _, w in atoms):
            raise ValueError("atom weights must be positive")
        object.__setattr__(self, "atoms", atoms)
        if self.tabulated is not None:
            object.__setattr__(self, "tabulated",
                               tuple((float(x), float(f)) for x, f in self.tabulated))

    @property
    def positions(self) -> np.ndarray:
        return np.array([x for x, _ in self.atoms])

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms])

    @property
    def atom_mass(self) -> float:
        return float(sum(w for _, w in self.atoms))

    @property
    def has_continuous_part(self) -> bool:
        return self.density is not None or self.tabulated is not None

    def continuous_mass(self) -> float:
        if not self.has_continuous_part:
            return 0.0
        return float(integrate_continuous(self, lambda x: np.ones_like(x)))

    def total_mass(self) -> float:
        return self.atom_mass + self.continuous_mass()


def _merge_atoms(x, w, tol=ATOM_MERGE_TOL):
    order = np.argsort(x)
    merged: list[list[float]] = []
    for xi, wi in zip(x[order], w[order]):
        if merged and xi - merged[-1][0] <= tol:
            total = merged[-1][1] + wi
            merged[-1][0] = (merged[-1][0] * merged[-1][1] + xi * wi) / total
            merged[-1][1] = total
        else:
            merged.append([xi, wi])
    return tuple((x, w) for x, w in merged if w > 0)


def quadrature_measure(j: JacobiSequences) -> SpectralMeasure:
    """Gauss quadrature measure of a finite Jacobi matrix.

    Nodes are the eigenvalues of the ``depth x depth`` symmetric tridiagonal
    matrix, weights the squared first components of its unit eigenvectors.
    """
    if not j.finite:
        raise ValueError("quadrature_measure needs a finite-depth sequence")
    n = j.depth
    diag = np.array([j.a(k) for k in range(1, n + 1)])
    off = np.sqrt(np.array(j.omega))
    if n == 1:
        nodes, vecs = diag.copy(), np.ones((1, 1))
    else:
        nodes, vecs = eigh_tridiagonal(diag, off)
    weights = vecs[0] ** 2
    m = SpectralMeasure(_merge_atoms(nodes, weights))
    if abs(m.atom_mass - 1.0) > MASS_TOL:
        raise ArithmeticError(f"quadrature weights sum to {m.atom_mass}")
    return m


def star_lattice_measure(N: int) -> SpectralMeasure:
    """Spectral measure of the infinite N-ray star lattice.

    Density ``N sqrt(4-x^2) / (2 pi (N^2 - (N-1) x^2))`` on ``[-2, 2]``; it is
    the semicircle for ``N = 1`` and the arcsine law for ``N = 2``. For
    ``N >= 3`` two atoms of weight ``(N-2)/(2N-2)`` sit at ``+-N/sqrt(N-1)``.
    """
    if N < 1:
        raise ValueError("star lattice needs N >= 1")
    if N == 1:
        return SpectralMeasure((), ClosedFormDensity("semicircle"))
    if N == 2:
        return SpectralMeasure((), ClosedFormDensity("arcsine"))
    edge = N / np.sqrt(N - 1.0)
    w = (N - 2.0) / (2.0 * N - 2.0)
    return SpectralMeasure(((-edge, w), (edge, w)),
                           ClosedFormDensity("star_lattice", (("N", float(N)),)))


def measure_for(j: JacobiSequences) -> SpectralMeasure:
    """The spectral measure belonging to a Jacobi sequence.

    Finite sequences give their quadrature measure. With a unit tail only the
    star-lattice shape ``w = (N, 1, 1, ...)``, ``a = 0`` is supported.
    """
    if j.finite:
        return quadrature_measure(j)
    if len(j.omega) == 1 and not any(j.alpha):
        N = j.omega[0]
        if N != round(N):
            raise NotImplementedError("non-integer first coefficient with unit tail")
        return star_lattice_measure(int(round(N)))
    if not any(j.alpha) and all(w == 1.0 for w in j.omega[1:]):
        return measure_for(JacobiSequences(j.omega[:1], (0.0, 0.0), "unit"))
    raise NotImplementedError("only the star-lattice tail has a closed-form measure")


# -------------------------------------------------------------- integration

def _theta_rule(panels: int):
    edges = np.linspace(0.0, np.pi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    theta = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    weight = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return theta, weight


def _integrate_closed_form(density: ClosedFormDensity, f, tol, max_panels=4096):
    panels = 4
    prev = None
    while True:
        theta, weight = _theta_rule(panels)
        x = 2.0 * np.cos(theta)
        vals = f(x) @ (weight * density.theta_weight(theta))
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(vals), initial=0.0)))
            if np.max(np.abs(vals - prev), initial=0.0) < tol * scale:
                return vals
        if panels >= max_panels:
            raise ArithmeticError("continuous quadrature did not converge")
        prev = vals
        panels *= 2


def integrate_continuous(m: SpectralMeasure, f: Callable, tol: float = QUAD_TOL):
    """``int f(x) rho(x) dx`` over the continuous part of ``m``.

    ``f`` maps an array of nodes to an array whose last axis runs over them.
    """
    if m.density is not None:
        return _integrate_closed_form(m.density, f, tol)
    if m.tabulated is not None:
        grid = np.array(m.tabulated)
        return np.trapezoid(f(grid[:, 0]) * grid[:, 1], grid[:, 0], axis=-1)
    return 0.0


def integrate(m: SpectralMeasure, f: Callable, tol: float = QUAD_TOL):
    """``int f dmu``: atoms summed exactly, continuous part by quadrature."""
    total = 0.0
    if m.atoms:
        total = f(m.positions) @ m.weights
    if m.has_continuous_part:
        total = total + integrate_continuous(m, f, tol)
    return total


def measure_moment(m: SpectralMeasure, degree: int) -> float:
    if degree < 0:
        raise ValueError("moment degree must be nonnegative")
    if m.has_continuous_part and degree > MAX_MOMENT_DEGREE:
        raise ValueError(f"continuous moments are only reliable up to degree {MAX_MOMENT_DEGREE}")
    return float(integrate(m, lambda x: x ** degree))


def stieltjes_transform(m: SpectralMeasure, z):
    """``int mu(dx) / (z - x)`` evaluated directly from the measure."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    return integrate(m, lambda x: 1.0 / (z[:, None] - x[None, :]))


def gram_matrix(j: JacobiSequences, m: SpectralMeasure, k_max: int) -> np.ndarray:
    """``int P_i P_k dmu`` for ``i, k = 0..k_max``."""
    def f(x):
        p = poly_table(j, k_max, x)
        return p[:, None, :] * p[None, :, :]
    return np.asarray(integrate(m, f), dtype=float)


def orthogonality_defect(j: JacobiSequences, m: SpectralMeasure, k_max: int) -> float:
    """Largest entry of ``|<P_i, P_k> / sqrt(h_i h_k) - delta_ik|``, ``h_k = w_1..w_k``."""
    h = j.norms(k_max)
    gram = gram_matrix(j, m, k_max) / np.sqrt(np.outer(h, h))
    return float(np.max(np.abs(gram - np.eye(k_max + 1))))


# ---------------------------------------------------------------- inversion

@dataclass(frozen=True)
class InvertedDensity:
    """Density recovered from a transform on a grid, plus detected atoms.

    ``density`` is zero at grid points identified as atoms.
    """

    x: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)
    atoms: tuple[tuple[float, float], ...] = ()

    def as_measure(self) -> SpectralMeasure:
        return SpectralMeasure(self.atoms, tabulated=tuple(zip(self.x, self.density)))


def _extrapolate_to_zero(v: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Neville's algorithm evaluating the interpolant through ``(v_i, f_i)`` at 0."""
    p = [fi.copy() for fi in f]
    n = len(v)
    for m in range(1, n):
        for i in range(n - m):
            p[i] = (v[i] * p[i + 1] - v[i + m] * p[i]) / (v[i] - v[i + m])
    return p[0]


def stieltjes_invert(transform: Callable, x_grid: Sequence[float],
                     v_sequence: Sequence[float] = DEFAULT_V_SEQUENCE,
                     atom_tol: float = 1e-6) -> InvertedDensity:
    """Recover ``-Im G(x + i0) / pi`` on ``x_grid`` by extrapolating ``v -> 0``.

    A grid point is flagged as an atom when ``-v Im G(x + iv)`` stays above
    ``atom_tol`` instead of shrinking with ``v``; its limit is the atom weight.
    """
    v = np.asarray(v_sequence, dtype=float)
    if v.ndim != 1 or len(v) < 2:
        raise ValueError("v_sequence needs at least two values")
    if np.any(v <= 0) or np.any(np.diff(v) >= 0):
        raise ValueError("v_sequence must be strictly decreasing positive reals")
    x = np.asarray(x_grid, dtype=float)
    im = np.array([np.imag(transform(x + 1j * vi)) for vi in v])
    density = _extrapolate_to_zero(v, -im / np.pi)
    mass = -v[:, None] * im
    is_atom = (mass[-1] > atom_tol) & (mass[-1] > 0.5 * mass[-2])
    atoms = tuple((float(xa), float(wa)) for xa, wa in zip(x[is_atom], mass[-1][is_atom]))
    density = np.where(is_atom, 0.0, density)
    return InvertedDensity(x, density, atoms)
