# Walk amplitudes on strata, computed two independent ways.
#
# Spectral route: q_k(t) = (w_1...w_k)^(-1/2) * integral of exp(-itx) P_k(x) dmu.
# Oracle route:   diagonalise the full adjacency matrix and project.
import numpy as np

from starwalk import (amplitudes_oracle, amplitudes_spectral, build_cycle,
                      per_vertex_probability, quantum_decompose, star_power, stratify)
from starwalk.walk import star_c4_closed_form

t = np.linspace(0, 2 * np.pi, 9)

g = star_power(build_cycle(4), 3)
s = stratify(g)
j, _ = quantum_decompose(g, s)
spec = amplitudes_spectral(j, times=t)
orac = amplitudes_oracle(g, s, t)
print("max |spectral - oracle| =", np.abs(spec.amplitudes - orac.amplitudes).max())
print("max |sum_k |q_k|^2 - 1| =", np.abs(spec.total_probability() - 1).max())

# The second-shell amplitude of the 4-cycle star follows from P_2 = x^2 - 2N
# and the atoms at +-sqrt(2(N+1)):
#     q_2(t) = sqrt(N)/(N+1) * (cos(sqrt(2(N+1)) t) - 1)
# It vanishes at t = 0, as it must for a walk that starts at the root.
closed = star_c4_closed_form(3, t)
print("q_2 oracle     :", np.round(orac.amplitudes[:, 2].real, 6))
print("q_2 closed form:", np.round(closed.amplitudes[:, 2].real, 6))

# Every vertex of a shell carries the same probability.
probs = per_vertex_probability(orac, s)
print("shell sizes", s.sizes, "-> per-vertex probabilities at t =", t[3])
for k, shell in enumerate(s.strata):
    print(f"  shell {k}: {np.round(probs[3, list(shell)], 6)}")
