"""
Dense matrix representations of boson operators on truncated Fock spaces.

A :class:`FockSpace` holds one or two sites, each with the number basis
``|0>, ..., |D-1>``. Two-site spaces use site 0 as the slow (outer) index of
the Kronecker product. The *physical subspace* keeps every occupation
``n <= 2S``; all Holstein-Primakoff identities are exact there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np


def _is_half_integer(x: float) -> bool:
    return abs(2 * x - round(2 * x)) < 1e-12 and round(2 * x) >= 1


@dataclass(frozen=True)
class FockSpace:
    """Truncated boson number basis on ``n_sites`` sites.

    Parameters
    ----------
    spin_S : float
        Spin magnitude, a positive half-integer.
    dim_D : int, optional
        Per-site truncation dimension. Defaults to ``2S + 2``, the physical
        block plus one buffer state.
    n_sites : int
        1 or 2.
    """

    spin_S: float
    dim_D: int | None = None
    n_sites: int = 1

    def __post_init__(self):
        if not _is_half_integer(self.spin_S):
            raise ValueError(f"spin_S must be a positive half-integer, got {self.spin_S}")
        object.__setattr__(self, "spin_S", round(2 * self.spin_S) / 2)
        if self.dim_D is None:
            object.__setattr__(self, "dim_D", self.two_s + 2)
        if self.dim_D < 2:
            raise ValueError(f"dim_D must be >= 2, got {self.dim_D}")
        if self.n_sites not in (1, 2):
            raise ValueError(f"n_sites must be 1 or 2, got {self.n_sites}")

    @property
    def two_s(self) -> int:
        return round(2 * self.spin_S)

    @property
    def dim(self) -> int:
        return self.dim_D**self.n_sites

    @property
    def has_buffer(self) -> bool:
        """Whether the truncation leaves room for the physical block plus one state."""
        return self.dim_D >= self.two_s + 2

    def require_buffer(self):
        if not self.has_buffer:
            raise ValueError(
                f"dim_D={self.dim_D} too small for S={self.spin_S}: need dim_D >= 2S + 2 = {self.two_s + 2}"
            )

    @cached_property
    def occupations(self) -> np.ndarray:
        """``(dim, n_sites)`` array of site occupations for each basis index."""
        return np.array(list(itertools.product(range(self.dim_D), repeat=self.n_sites)), dtype=int)

    def index(self, *occ: int) -> int:
        """Basis index of the product state with the given occupations."""
        if len(occ) != self.n_sites:
            raise ValueError(f"need {self.n_sites} occupations, got {len(occ)}")
        idx = 0
        for n in occ:
            if not 0 <= n < self.dim_D:
                raise ValueError(f"occupation {n} outside 0..{self.dim_D - 1}")
            idx = idx * self.dim_D + n
        return idx

    @cached_property
    def physical_mask(self) -> np.ndarray:
        return np.all(self.occupations <= self.two_s, axis=1)

    def occupation_mask(self, max_total: int) -> np.ndarray:
        """Basis states whose total occupation is at most ``max_total``."""
        return self.occupations.sum(axis=1) <= max_total


class OperatorMatrix:
    """Immutable dense complex operator on a :class:`FockSpace`."""

    __slots__ = ("entries", "space")

    def __init__(self, entries, space: FockSpace):
        m = np.array(entries, dtype=complex)
        if m.shape != (space.dim, space.dim):
            raise ValueError(f"operator shape {m.shape} does not match space dimension {space.dim}")
        m.flags.writeable = False
        self.entries = m
        self.space = space

    def _check(self, other: "OperatorMatrix"):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if other.space != self.space:
            raise ValueError("operators live on different Fock spaces")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.entries + other.entries, self.space)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.entries - other.entries, self.space)

    def __neg__(self):
        return OperatorMatrix(-self.entries, self.space)

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.entries @ other.entries, self.space)

    def __mul__(self, scalar):
        if isinstance(scalar, OperatorMatrix):
            return NotImplemented
        return OperatorMatrix(complex(scalar) * self.entries, self.space)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return OperatorMatrix(self.entries / complex(scalar), self.space)

    def dag(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, self.space)

    def element(self, bra: tuple[int, ...], ket: tuple[int, ...]) -> complex:
        """Matrix element ``<bra|O|ket>`` between occupation-number states."""
        return complex(self.entries[self.space.index(*bra), self.space.index(*ket)])

    def restrict(self, mask=None) -> np.ndarray:
        """Block of the matrix on the states selected by ``mask`` (default: physical subspace)."""
        if mask is None:
            mask = self.space.physical_mask
        return self.entries[np.ix_(mask, mask)]

    def __repr__(self):
        return f"OperatorMatrix(dim={self.space.dim}, S={self.space.spin_S}, sites={self.space.n_sites})"


def _embed(local: np.ndarray, space: FockSpace, site: int) -> np.ndarray:
    if not 0 <= site < space.n_sites:
        raise IndexError(f"site {site} out of range for a {space.n_sites}-site space")
    eye = np.eye(space.dim_D)
    mats = [local if s == site else eye for s in range(space.n_sites)]
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def identity(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix(np.eye(space.dim), space)


def zero(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix(np.zeros((space.dim, space.dim)), space)


def boson_ops(space: FockSpace, site: int = 0) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Annihilation and creation operators ``(a, a^dagger)`` of ``site``.

    ``a|n> = sqrt(n)|n-1>`` in the truncated basis; the commutator
    ``[a, a^dagger]`` equals the identity except on the top state.
    """
    a = np.diag(np.sqrt(np.arange(1, space.dim_D, dtype=float)), k=1)
    a = OperatorMatrix(_embed(a, space, site), space)
    return a, a.dag()


def number_op(space: FockSpace, site: int = 0) -> OperatorMatrix:
    n = np.diag(np.arange(space.dim_D, dtype=float))
    return OperatorMatrix(_embed(n, space, site), space)


def hp_root(space: FockSpace, site: int = 0) -> OperatorMatrix:
    """``sqrt(2S - n)`` with the radicand clamped at 0 above the physical block."""
    diag = np.sqrt(np.clip(space.two_s - np.arange(space.dim_D, dtype=float), 0.0, None))
    return OperatorMatrix(_embed(np.diag(diag), space, site), space)


def site_swap(space: FockSpace) -> OperatorMatrix:
    """Permutation ``|n_0, n_1> -> |n_1, n_0>`` on a two-site space."""
    if space.n_sites != 2:
        raise ValueError("site_swap needs a two-site space")
    occ = space.occupations
    p = np.zeros((space.dim, space.dim))
    for col, (n0, n1) in enumerate(occ):
        p[space.index(n1, n0), col] = 1.0
    return OperatorMatrix(p, space)
