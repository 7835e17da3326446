"""
Triangular lattice geometry
===========================

Neighbor shells, the reciprocal lattice and the structure factors gamma1
and gamma2 at the high-symmetry points.
"""
import numpy as np

from spinpolaron.lattice import (
    bz_grid,
    gamma1,
    gamma2,
    high_symmetry_points,
    nn_vectors,
    nnn_vectors,
    reciprocal_basis,
    sublattice_of,
)

# six nearest neighbors, six next-nearest (length sqrt(3))
for shell in (nn_vectors(), nnn_vectors()):
    arr = shell.as_array()
    print(f"{len(arr)} vectors, |d| = {np.linalg.norm(arr, axis=1)[0]:.6f}")

b1, b2 = reciprocal_basis()
print("b1 =", b1, " b2 =", b2)

###############################################################################
# gamma1 is 1 at Gamma, -1/2 at the zone corners and -1/3 at M.
pts = high_symmetry_points()
for name, k in pts.items():
    print(f"{name:>2}: k = ({k.kx:+.6f}, {k.ky:+.6f})  gamma1 = {gamma1(k):+.12f}  gamma2 = {gamma2(k):+.12f}")

###############################################################################
# Both structure factors are periodic and bounded on a Brillouin-zone grid.
g = gamma1(bz_grid(60))
print(f"gamma1 range on 60x60 grid: [{g.min():.6f}, {g.max():.6f}]")

# three-sublattice coloring, (n1 - n2) mod 3
print([[sublattice_of(n1, n2).value for n1 in range(4)] for n2 in range(3)])
