"""
Triangular-lattice geometry.

Neighbor shells, sublattice coloring, reciprocal space, high-symmetry points,
k-paths and the normalized structure factors gamma_k of the first and second
neighbor shells. The lattice constant is 1 and momenta are measured in radians
per lattice constant.

Functions taking a momentum accept a :class:`KVector` or any array whose last
axis has length 2, and vectorize over the leading axes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

SQRT3 = math.sqrt(3.0)

#: Tolerance on the imaginary part of a structure-factor phase sum.
IMAG_TOL = 1e-12
#: Tolerance on neighbor-shell lengths.
SHELL_TOL = 1e-12

# Direct basis: a1 = (1, 0), a2 = (1/2, sqrt(3)/2).
A1 = np.array([1.0, 0.0])
A2 = np.array([0.5, SQRT3 / 2])
DIRECT_BASIS = np.array([A1, A2])
# Reciprocal basis with a_i . b_j = 2 pi delta_ij.
B1 = 2 * math.pi * np.array([1.0, -1.0 / SQRT3])
B2 = 2 * math.pi * np.array([0.0, 2.0 / SQRT3])
RECIPROCAL_BASIS = np.array([B1, B2])


class StructureFactorError(ValueError):
    """Raised when a neighbor-shell phase sum is not real."""


class _Vec2(NamedTuple):
    x: float
    y: float


class Vec2(_Vec2):
    """Real-space vector in units of the lattice constant."""

    __slots__ = ()

    def __new__(cls, x: float, y: float) -> "Vec2":
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"Vec2 components must be finite, got ({x}, {y})")
        return super().__new__(cls, x, y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


class _KVector(NamedTuple):
    kx: float
    ky: float


class KVector(_KVector):
    """Point in 2D reciprocal space."""

    __slots__ = ()

    def __new__(cls, kx: float, ky: float) -> "KVector":
        kx, ky = float(kx), float(ky)
        if not (math.isfinite(kx) and math.isfinite(ky)):
            raise ValueError(f"KVector components must be finite, got ({kx}, {ky})")
        return super().__new__(cls, kx, ky)

    def norm(self) -> float:
        return math.hypot(self.kx, self.ky)


@dataclass(frozen=True)
class NeighborShell:
    """Ordered set of bond vectors of one neighbor shell (1 = NN, 2 = NNN)."""

    vectors: tuple[Vec2, ...]
    shell_index: int

    def __post_init__(self):
        expected = {1: 1.0, 2: SQRT3}
        if self.shell_index not in expected:
            raise ValueError(f"unsupported shell_index {self.shell_index}")
        if len(self.vectors) != 6:
            raise ValueError(f"shell {self.shell_index} needs 6 vectors, got {len(self.vectors)}")
        for v in self.vectors:
            if abs(v.norm() - expected[self.shell_index]) > SHELL_TOL:
                raise ValueError(f"vector {v} has wrong length for shell {self.shell_index}")
        arr = self.as_array()
        for v in arr:
            if not np.any(np.all(np.abs(arr + v) < SHELL_TOL, axis=1)):
                raise ValueError(f"shell not closed under inversion: -{tuple(v)} missing")

    def as_array(self) -> np.ndarray:
        """Vectors as a ``(6, 2)`` float array."""
        return np.array(self.vectors, dtype=float)

    @property
    def coordination(self) -> int:
        return len(self.vectors)


def nn_vectors() -> NeighborShell:
    """The six nearest-neighbor bond vectors, in the order
    e_x, -e_x, (-1/2, s), (1/2, -s), (-1/2, -s), (1/2, s) with s = sqrt(3)/2."""
    h = SQRT3 / 2
    vecs = [(1.0, 0.0), (-1.0, 0.0), (-0.5, h), (0.5, -h), (-0.5, -h), (0.5, h)]
    return NeighborShell(tuple(Vec2(*v) for v in vecs), 1)


def nnn_vectors() -> NeighborShell:
    """The six next-nearest-neighbor bond vectors (length sqrt(3))."""
    h = SQRT3 / 2
    vecs = [(0.0, SQRT3), (0.0, -SQRT3), (1.5, h), (-1.5, -h), (1.5, -h), (-1.5, h)]
    return NeighborShell(tuple(Vec2(*v) for v in vecs), 2)


_NN = nn_vectors().as_array()
_NNN = nnn_vectors().as_array()


class Sublattice(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    UP = "Up"
    DOWN = "Down"


_TRIANGULAR_LABELS = (Sublattice.A, Sublattice.B, Sublattice.C)

# Integer offsets (dn1, dn2) of the NN sites in each lattice.
TRIANGULAR_NN_OFFSETS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))
SQUARE_NN_OFFSETS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def sublattice_of(n1: int, n2: int, lattice: str = "triangular") -> Sublattice:
    """Sublattice label of the site ``n1*a1 + n2*a2``.

    Triangular: A/B/C for ``(n1 - n2) % 3 == 0/1/2``.
    Square (basis (1,0), (0,1)): Up/Down for ``(n1 + n2) % 2 == 0/1``.
    """
    if lattice == "triangular":
        return _TRIANGULAR_LABELS[(n1 - n2) % 3]
    if lattice == "square":
        return Sublattice.UP if (n1 + n2) % 2 == 0 else Sublattice.DOWN
    raise ValueError(f"unknown lattice {lattice!r}")


def site_position(n1: int, n2: int) -> Vec2:
    r = n1 * A1 + n2 * A2
    return Vec2(r[0], r[1])


def reciprocal_basis() -> tuple[KVector, KVector]:
    return KVector(*B1), KVector(*B2)


def high_symmetry_points() -> dict[str, KVector]:
    """Gamma, K, M and K2 (= K' = -K) of the hexagonal Brillouin zone."""
    k = 4 * math.pi / 3
    return {
        "G": KVector(0.0, 0.0),
        "K": KVector(k, 0.0),
        "M": KVector(math.pi, -math.pi / SQRT3),
        "K2": KVector(-k, 0.0),
    }


def _as_k(k) -> np.ndarray:
    arr = np.asarray(k, dtype=float)
    if arr.shape[-1:] != (2,):
        raise ValueError(f"momentum must have a trailing axis of length 2, got shape {arr.shape}")
    return arr


def _shell_gamma(k, shell: np.ndarray):
    arr = _as_k(k)
    raw = np.exp(1j * (arr @ shell.T)).mean(axis=-1)
    worst = float(np.max(np.abs(raw.imag)))
    if worst >= IMAG_TOL:
        raise StructureFactorError(f"imaginary part {worst:.3e} in structure factor")
    out = raw.real
    return float(out) if out.ndim == 0 else out


def gamma1(k):
    """NN structure factor ``(1/6) sum_delta exp(i k.delta)``, real, in [-1/2, 1]."""
    return _shell_gamma(k, _NN)


def gamma2(k):
    """NNN structure factor, same normalization as :func:`gamma1`."""
    return _shell_gamma(k, _NNN)


def to_fractional(k) -> np.ndarray:
    """Coordinates f with ``k = f1*b1 + f2*b2``."""
    return _as_k(k) @ DIRECT_BASIS.T / (2 * math.pi)


def from_fractional(f) -> np.ndarray:
    return np.asarray(f, dtype=float) @ RECIPROCAL_BASIS


def equivalent(k1, k2, tol: float = 1e-9) -> bool:
    """True if k1 and k2 differ by a reciprocal-lattice vector, within ``tol`` in |k|."""
    d = to_fractional(np.asarray(k1, float) - np.asarray(k2, float))
    d = d - np.round(d)
    return float(np.linalg.norm(from_fractional(d))) <= tol


def bz_grid(n: int) -> np.ndarray:
    """Uniform ``n x n`` grid of one reciprocal cell, fractional coordinates in [-1/2, 1/2).

    Returns an array of shape ``(n, n, 2)``; Gamma sits at index ``(n//2, n//2)``.
    The K points are grid points when ``n`` is divisible by 3.
    """
    if n < 1:
        raise ValueError("grid resolution must be positive")
    f = (np.arange(n) - n // 2) / n
    f1, f2 = np.meshgrid(f, f, indexing="ij")
    return from_fractional(np.stack([f1, f2], axis=-1))


@dataclass(frozen=True)
class KPath:
    """Piecewise-linear path through named waypoints."""

    waypoints: tuple[tuple[str, KVector], ...]
    samples_per_segment: int

    def __post_init__(self):
        object.__setattr__(self, "waypoints", tuple((str(n), KVector(*k)) for n, k in self.waypoints))
        if len(self.waypoints) < 2:
            raise ValueError("a KPath needs at least 2 waypoints")
        if int(self.samples_per_segment) != self.samples_per_segment or self.samples_per_segment < 1:
            raise ValueError(f"samples_per_segment must be a positive integer, got {self.samples_per_segment}")

    @classmethod
    def from_names(cls, names: Sequence[str], samples_per_segment: int) -> "KPath":
        table = high_symmetry_points()
        return cls(tuple((n, table[n]) for n in names), samples_per_segment)


def sample_path(path: KPath) -> list[tuple[float, KVector]]:
    """Sample ``path`` with ``samples_per_segment`` intervals per segment.

    Segment boundaries reproduce the waypoints exactly; arclength starts at 0.
    """
    n = path.samples_per_segment
    out: list[tuple[float, KVector]] = []
    s0 = 0.0
    for (_, ka), (_, kb) in zip(path.waypoints[:-1], path.waypoints[1:]):
        a, b = np.array(ka), np.array(kb)
        length = float(np.linalg.norm(b - a))
        out.append((s0, ka))
        for j in range(1, n):
            t = j / n
            p = a + t * (b - a)
            out.append((s0 + t * length, KVector(p[0], p[1])))
        s0 += length
    out.append((s0, path.waypoints[-1][1]))
    return out
