# Stratifying star graphs and reading off their Jacobi coefficients.
#
# A walk that starts at the root only ever sees the uniform superpositions
# |phi_k> over distance shells, provided the adjacency operator maps that
# span into itself. When it does, A acts on it as a tridiagonal matrix whose
# off-diagonal entries are sqrt(omega_k) and whose diagonal is alpha_k.
import numpy as np

from starwalk import (RootedGraph, build_cycle, build_path, build_star_lattice,
                      quantum_decompose, star_power, stratify)

# Three copies of the 3-vertex path glued at an endpoint: a "spider" with
# legs of length two.
g = star_power(build_path(3), 3)
s = stratify(g)
print(g.label, "strata sizes:", s.sizes)
j, report = quantum_decompose(g, s)
print("  omega =", np.round(j.omega, 12), " alpha =", np.round(j.alpha, 12))
print("  invariant:", report.invariant, " max residual:", report.max_residual)

# The 4-cycle version: each copy contributes two neighbours of the root and
# one antipode, so omega_1 = 2N and omega_2 = 2.
for N in (1, 2, 5):
    j, _ = quantum_decompose(star_power(build_cycle(4), N))
    print(f"star of {N} four-cycles: omega = {np.round(j.omega, 12)}")

# Truncated star lattice: N rays glued at the origin.
j, _ = quantum_decompose(build_star_lattice(6, 5))
print("star lattice N=6, 5 shells: omega =", np.round(j.omega, 12))

# Not every rooted graph qualifies. In this tree the two children of the
# root have different numbers of grandchildren, so A|phi_2> leans toward
# one of them and leaves span{|phi_k>}.
tree = RootedGraph(6, ((0, 1), (0, 2), (1, 3), (1, 4), (2, 5)), 0, "lopsided tree")
_, report = quantum_decompose(tree)
print(tree.label, "invariant:", report.invariant,
      "residuals:", np.round(report.per_stratum_residuals, 6))
