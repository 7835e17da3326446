"""
Spinor representation and local frames
======================================

Build the two-component operator spinor on a truncated boson space, recover
the spin operators and check the SU(2) algebra in every local frame.
"""
import numpy as np

from spinpolaron.frames import ALL_FRAMES, beta, lab_spins, rotation_so3, spin_from_beta
from spinpolaron.operators import FockSpace
from spinpolaron.verification import verify_frame_consistency, verify_su2

S = 1.0
space = FockSpace(S)  # D = 2S + 2, one buffer level above the physical block
print(space, "physical levels:", int(space.physical_mask.sum()))

spins = spin_from_beta(beta(space, 0, "old"), S)
print("Sz diagonal:", np.round(np.diag(spins.sz.restrict()).real, 12))

###############################################################################
# Commutators and Casimir, restricted to n <= 2S.
for f in ALL_FRAMES:
    rep = verify_su2(spin_from_beta(beta(space, 0, f), S), space)
    print(f"{f.value:>12}: max deviation {rep.max_deviation:.1e}")

###############################################################################
# Rotated spinors reproduce R^T S_lab for each rotation label.
for label in ("square", "A", "B", "C"):
    rot = rotation_so3(label)
    print(f"{label:>6}: det = {rot.det:+.1f}, consistency dev = {verify_frame_consistency(label, S).max_deviation:.1e}")

# The unrotated vacuum points along the A direction (lab x).
lab = lab_spins(space)
print("<0|Sx_lab|0> =", lab.sx.element((0,), (0,)).real)
