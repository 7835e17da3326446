"""
Sublattice frames, rotation matrices and the Holstein-Primakoff spinor.

The spinor ``beta = (1/sqrt(2S)) (sqrt(2S - n), a)`` reproduces the HP spin
operators as ``S beta^dagger sigma beta``. Rotating the local frame acts on
spin components with an SO(3) matrix and on the spinor with a 2x2 unitary.

Frames
------
``old``, ``square-up``
    Unrotated spinor.
``square-down``
    Spins rotated by pi about x; the spinor components are swapped.
``A``, ``B``, ``C``
    The three 120-degree Neel frames of the triangular lattice; the spinor is
    rotated by ``alpha = 0, 2pi/3, -2pi/3``.

For the triangular lattice the unrotated spinor is quantized along the
A-sublattice Neel direction (lab x). Lab-frame spin components are therefore
``R_A`` applied to the HP components, see :func:`lab_spins`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .operators import FockSpace, OperatorMatrix, boson_ops, hp_root

SQRT3 = math.sqrt(3.0)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class Frame(enum.Enum):
    OLD = "old"
    A = "A"
    B = "B"
    C = "C"
    SQUARE_UP = "square-up"
    SQUARE_DOWN = "square-down"

    @classmethod
    def parse(cls, value) -> "Frame":
        return value if isinstance(value, cls) else cls(value)


ALL_FRAMES = tuple(Frame)
TRIANGULAR_FRAMES = (Frame.A, Frame.B, Frame.C)

#: Spinor rotation angle of each triangular frame.
FRAME_ANGLE = {Frame.A: 0.0, Frame.B: 2 * math.pi / 3, Frame.C: -2 * math.pi / 3}

ROTATION_LABELS = ("square", "A", "B", "C")


@dataclass(frozen=True)
class RotationSO3:
    """Frame rotation; local components are ``m^T @ (lab components)``."""

    m: np.ndarray
    label: str

    def orthogonality_error(self) -> float:
        return float(np.max(np.abs(self.m.T @ self.m - np.eye(3))))

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.m))

    @property
    def inverse(self) -> np.ndarray:
        return self.m.T


@dataclass(frozen=True)
class RotationU2:
    m: np.ndarray
    label: str

    def unitarity_error(self) -> float:
        return float(np.max(np.abs(self.m.conj().T @ self.m - np.eye(2))))


def rotation_so3(label: str) -> RotationSO3:
    """SO(3) matrix of a frame: ``diag(1, -1, -1)`` for the square down
    sublattice, R_A, R_B, R_C for the triangular sublattices."""
    h = SQRT3 / 2
    mats = {
        "square": [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
        "A": [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
        "B": [[-h, 0, -0.5], [-0.5, 0, h], [0, 1, 0]],
        "C": [[h, 0, -0.5], [-0.5, 0, -h], [0, 1, 0]],
    }
    if label not in mats:
        raise ValueError(f"unknown rotation label {label!r}; expected one of {ROTATION_LABELS}")
    m = np.array(mats[label], dtype=float)
    m.flags.writeable = False
    return RotationSO3(m, label)


def rotation_u2(label: str) -> RotationU2:
    """Spinor rotation matching :func:`rotation_so3`: the swap matrix for
    ``square``, a planar rotation by 0, 2pi/3, -2pi/3 for A, B, C."""
    if label == "square":
        m = np.array([[0, 1], [1, 0]], dtype=complex)
    elif label in ("A", "B", "C"):
        a = FRAME_ANGLE[Frame(label)]
        c, s = math.cos(a), math.sin(a)
        m = np.array([[c, -s], [s, c]], dtype=complex)
    else:
        raise ValueError(f"unknown rotation label {label!r}; expected one of {ROTATION_LABELS}")
    m.flags.writeable = False
    return RotationU2(m, label)


def frame_unitary(frame) -> np.ndarray:
    frame = Frame.parse(frame)
    if frame in (Frame.OLD, Frame.SQUARE_UP):
        return np.eye(2, dtype=complex)
    if frame is Frame.SQUARE_DOWN:
        return rotation_u2("square").m
    return rotation_u2(frame.value).m


@dataclass(frozen=True)
class OperatorSpinor:
    """Two-component column of operators."""

    upper: OperatorMatrix
    lower: OperatorMatrix
    frame: Frame

    def __post_init__(self):
        if self.upper.space != self.lower.space:
            raise ValueError("spinor components live on different spaces")

    @property
    def space(self) -> FockSpace:
        return self.upper.space

    @property
    def components(self) -> tuple[OperatorMatrix, OperatorMatrix]:
        return self.upper, self.lower

    def inner(self, other: "OperatorSpinor") -> OperatorMatrix:
        """Operator-valued scalar product ``self^dagger other``."""
        return self.upper.dag() @ other.upper + self.lower.dag() @ other.lower

    def sandwich(self, m2: np.ndarray) -> OperatorMatrix:
        """``self^dagger m2 self`` for a c-number 2x2 matrix ``m2``."""
        comps = self.components
        out = None
        for c in range(2):
            for d in range(2):
                if m2[c, d] == 0:
                    continue
                term = m2[c, d] * (comps[c].dag() @ comps[d])
                out = term if out is None else out + term
        return out if out is not None else 0 * self.upper

    def rotated(self, u: np.ndarray, frame) -> "OperatorSpinor":
        up = u[0, 0] * self.upper + u[0, 1] * self.lower
        lo = u[1, 0] * self.upper + u[1, 1] * self.lower
        return OperatorSpinor(up, lo, Frame.parse(frame))


def beta(space: FockSpace, site: int = 0, frame="old") -> OperatorSpinor:
    """HP spinor of ``site`` in ``frame``."""
    frame = Frame.parse(frame)
    a, _ = boson_ops(space, site)
    norm = 1.0 / math.sqrt(space.two_s)
    base = OperatorSpinor(norm * hp_root(space, site), norm * a, Frame.OLD)
    if frame is Frame.OLD:
        return base
    return base.rotated(frame_unitary(frame), frame)


@dataclass(frozen=True)
class SpinTriple:
    sx: OperatorMatrix
    sy: OperatorMatrix
    sz: OperatorMatrix

    def __iter__(self):
        return iter((self.sx, self.sy, self.sz))

    def __getitem__(self, i: int) -> OperatorMatrix:
        return (self.sx, self.sy, self.sz)[i]

    def transformed(self, m: np.ndarray) -> "SpinTriple":
        """Components ``sum_b m[a, b] S_b``."""
        comps = tuple(self)
        new = []
        for a in range(3):
            acc = 0 * comps[0]
            for b in range(3):
                if m[a, b] != 0:
                    acc = acc + float(m[a, b]) * comps[b]
            new.append(acc)
        return SpinTriple(*new)

    def hermiticity_error(self, mask=None) -> float:
        return max(float(np.max(np.abs(c.restrict(mask) - c.restrict(mask).conj().T))) for c in self)


def spin_from_beta(spinor: OperatorSpinor, S: float) -> SpinTriple:
    """Spin components ``S beta^dagger sigma_a beta``."""
    return SpinTriple(*(S * spinor.sandwich(p) for p in PAULI))


def lab_spins(space: FockSpace, site: int = 0, lattice: str = "triangular") -> SpinTriple:
    """Spin operators in the unrotated lab frame.

    On the square lattice this is the HP triple itself. On the triangular
    lattice the HP quantization axis is the A-sublattice Neel direction, so
    the lab components are ``R_A`` applied to the HP triple.
    """
    hp = spin_from_beta(beta(space, site, Frame.OLD), space.spin_S)
    if lattice == "square":
        return hp
    if lattice == "triangular":
        return hp.transformed(rotation_so3("A").m)
    raise ValueError(f"unknown lattice {lattice!r}")
