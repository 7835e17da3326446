"""Symmetric Holstein-Primakoff spinors, the spin-polaron pair operator and
spinon/holon dispersions of the extended t-J model on the triangular lattice."""

__version__ = "0.1.0"

from .dispersion import (
    BandSample,
    BandSummary,
    HolonParams,
    SpinonParams,
    band_summary,
    epsilon_holon,
    omega_spinon,
    sample_band,
)
from .frames import Frame, beta, lab_spins, rotation_so3, rotation_u2, spin_from_beta
from .lattice import (
    KPath,
    KVector,
    Sublattice,
    Vec2,
    gamma1,
    gamma2,
    high_symmetry_points,
    nn_vectors,
    nnn_vectors,
    sample_path,
    sublattice_of,
)
from .operators import FockSpace, OperatorMatrix, boson_ops, hp_root
from .polaron import kappa_exact, kappa_series
from .verification import VerificationReport, run_sweep
