"""
Two-site overlaps and hopping vertices
======================================

kappa_ij = beta_i^dag beta_j on two sites: the large-S series for the square
lattice and the vertex coefficients for the three-sublattice frames.
"""
import math

import numpy as np

from spinpolaron.operators import FockSpace
from spinpolaron.polaron import expected_vertex, kappa_exact, kappa_series, series_error, vertex

###############################################################################
# Square lattice, opposite sublattices: the series converges as S grows.
for S in (2, 4, 8):
    print(f"S = {S}: order-2 error {series_error(S):.3e}")
print("ratios:", series_error(4) / series_error(2), series_error(8) / series_error(4))

sp = FockSpace(1, n_sites=2)
k1 = kappa_series(sp, "square-up", "square-down", 1)
print("<10|kappa_1|00> =", k1.element((1, 0), (0, 0)).real, " 1/sqrt(2S) =", 1 / math.sqrt(2))

###############################################################################
# Triangular lattice: constant, linear and hopping pieces of kappa.
for S in (0.5, 1.0, 2.0):
    sp = FockSpace(S, n_sites=2)
    for fj in ("B", "C"):
        v = vertex(kappa_exact(sp, "A", fj))
        print(f"S={S} A->{fj}: const {v.constant.real:+.4f}  a_i^dag {v.adag_i.real:+.4f}  "
              f"a_j {v.a_j.real:+.4f}  hop {v.hop.real:+.4f}")
    assert abs(v.adag_i - expected_vertex("A", "C", S).adag_i) < 1e-12

###############################################################################
# Same site, same frame: the identity on the physical block.
sp = FockSpace(1.5)
block = kappa_exact(sp, "B", "B", same_site=True).restrict()
print("kappa_ii on physical block is identity:", np.abs(block - np.eye(len(block))).max() < 1e-12)
