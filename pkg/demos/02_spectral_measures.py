# Spectral measures: Gauss quadrature for finite graphs, closed forms for
# the infinite star lattice, and the check that moments count closed walks.
import numpy as np

from starwalk import (build_path, closed_walk_counts, measure_moment, quadrature_measure,
                      quantum_decompose, star_lattice_measure, star_power)
from starwalk.decomposition import k2_sequences, star_c4_sequences

# Finite graphs give a handful of atoms: the eigenvalues of the Jacobi
# matrix, weighted by the squared first components of its eigenvectors.
for N in (1, 3, 8):
    j, _ = quantum_decompose(star_power(build_path(3), N))
    m = quadrature_measure(j)
    print(f"star-p3 N={N}: atoms", [(round(x, 6), round(w, 6)) for x, w in m.atoms],
          f"(sqrt(N+1) = {np.sqrt(N + 1):.6f})")
print("star-c4 N=4:", [(round(x, 6), round(w, 6)) for x, w in quadrature_measure(star_c4_sequences(4)).atoms])
print("K2        :", quadrature_measure(k2_sequences()).atoms)

# The m-th moment of the measure is the number of m-step walks that return
# to the root. Compare against brute-force enumeration.
g = star_power(build_path(3), 4)
m = quadrature_measure(quantum_decompose(g)[0])
print("moments   :", [round(measure_moment(m, d), 9) for d in range(9)])
print("walk count:", closed_walk_counts(g, 8))

# The infinite star lattice has a density on [-2, 2]; from N = 3 on it
# loses mass to two atoms just outside the band.
for N in range(1, 7):
    m = star_lattice_measure(N)
    kind = m.density.kind
    print(f"lattice N={N}: density={kind:12s} continuous mass={m.continuous_mass():.6f} "
          f"atom mass={m.atom_mass:.6f} atoms at {np.round(m.positions, 6)}")
