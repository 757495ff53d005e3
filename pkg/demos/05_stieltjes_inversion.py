# Recovering the star-lattice density from its Stieltjes transform.
#
# The transform is a continued fraction whose tail (all omega = 1) sums to
# (z - sqrt(z^2 - 4)) / 2. Taking -Im G(x + iv) / pi as v -> 0 returns the
# density; points where v * Im G stays finite are atoms.
import numpy as np

from starwalk import star_lattice_measure, stieltjes_invert, stieltjes_star_lattice

x = np.linspace(-1.9, 1.9, 9)
for N in (1, 2, 3, 5):
    inv = stieltjes_invert(lambda z: stieltjes_star_lattice(N, z), x)
    exact = star_lattice_measure(N).density.pdf(x)
    print(f"N={N}: max |inverted - exact| = {np.abs(inv.density - exact).max():.1e}")

N = 4
edge = N / np.sqrt(N - 1)
inv = stieltjes_invert(lambda z: stieltjes_star_lattice(N, z), [0.0, edge])
print(f"N={N}: atoms found {inv.atoms}; expected weight {(N - 2) / (2 * N - 2)} at {edge:.6f}")
