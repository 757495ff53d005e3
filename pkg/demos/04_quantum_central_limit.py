# Scaled-time limit: run the walk on the N-fold star with time t / sqrt(N).
# As N grows, the root and first shell exchange the walker like the two
# vertices of K2: q_0 -> cos t, q_1 -> -i sin t.
import numpy as np

from starwalk import convergence_study, qclt_amplitudes
from starwalk.decomposition import star_lattice_sequences, star_p3_sequences

t = np.linspace(0, 2 * np.pi, 256)
Ns = [1, 10, 100, 1000, 10000]
for name, family in (("star-p3", star_p3_sequences), ("star lattice", star_lattice_sequences)):
    r = convergence_study(family, Ns, 4, t)
    print(name)
    for N, d2, tail in zip(r.N_values, r.k2_errors, r.tail_sup):
        print(f"  N={N:6d}  sup|q0,q1 - K2 walk| = {d2:.2e}   sup|q_k>=2| = {tail:.2e}"
              f"   (2/sqrt(N) = {2 / np.sqrt(N):.2e})")

# The two-level walk reaches equal occupation of the two shells at t = pi/4.
q = qclt_amplitudes(star_lattice_sequences, 10000, 1, [np.pi / 4]).amplitudes[0]
print("N=10^4 lattice at t=pi/4: |q0|^2 =", abs(q[0]) ** 2, " |q1|^2 =", abs(q[1]) ** 2)
