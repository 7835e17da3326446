"""
Boson factor of the spin-polaron pair operator.

The electron pair operator factorizes as

    sum_sigma c_{i sigma}^dagger c_{j sigma} = h_i h_j^dagger kappa_ij,
    kappa_ij = beta_i(alpha)^dagger beta_j(beta),

with holons ``h`` carried symbolically. This module builds ``kappa_ij`` on a
two-site Fock space (site 0 is ``i``, site 1 is ``j``), its truncated boson
series for the square-lattice up/down pair, and the vertex coefficients of
the expanded hopping term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frames import FRAME_ANGLE, Frame, beta
from .operators import FockSpace, OperatorMatrix, boson_ops, zero

_SQUARE_PAIRS = {(Frame.SQUARE_UP, Frame.SQUARE_DOWN), (Frame.SQUARE_DOWN, Frame.SQUARE_UP)}


def kappa_exact(space: FockSpace, frame_i, frame_j, *, same_site: bool = False) -> OperatorMatrix:
    """``beta_i(frame_i)^dagger beta_j(frame_j)``.

    With ``same_site=True`` both spinors sit on site 0, which gives the
    on-site product ``beta_i^dagger beta_i`` (any number of sites allowed).
    Otherwise ``space`` must have two sites.
    """
    if same_site:
        return beta(space, 0, frame_i).inner(beta(space, 0, frame_j))
    if space.n_sites != 2:
        raise ValueError("kappa_exact needs a two-site space (or same_site=True)")
    return beta(space, 0, frame_i).inner(beta(space, 1, frame_j))


def kappa_series(space: FockSpace, frame_i, frame_j, order: int) -> OperatorMatrix:
    """Boson expansion of kappa for the square up/down pair.

    order 0: zero (no constant term).
    order 1: ``(a_i^dagger + a_j) / sqrt(2S)``.
    order 2: adds ``-(n_i a_j + a_i^dagger n_j) / (4S sqrt(2S))``.
    """
    frame_i, frame_j = Frame.parse(frame_i), Frame.parse(frame_j)
    if (frame_i, frame_j) not in _SQUARE_PAIRS:
        raise ValueError(
            f"kappa_series only expands the square up/down pair, got ({frame_i.value}, {frame_j.value})"
        )
    if space.n_sites != 2:
        raise ValueError("kappa_series needs a two-site space")
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    if order == 0:
        return zero(space)
    S = space.spin_S
    a_i, ad_i = boson_ops(space, 0)
    a_j, ad_j = boson_ops(space, 1)
    out = ad_i + a_j
    if order == 2:
        # a_i^dag a_i a_j + a_i^dag a_j^dag a_j
        out = out - (ad_i @ a_i @ a_j + ad_i @ ad_j @ a_j) / (4 * S)
    return out / math.sqrt(2 * S)


def series_error(S: float, order: int = 2, max_total: int = 2, dim_D: int | None = None) -> float:
    """Max-abs deviation of :func:`kappa_series` from :func:`kappa_exact` on the
    two-site states with total occupation ``<= max_total``."""
    space = FockSpace(S, dim_D, n_sites=2)
    mask = space.occupation_mask(max_total)
    exact = kappa_exact(space, Frame.SQUARE_UP, Frame.SQUARE_DOWN)
    approx = kappa_series(space, Frame.SQUARE_UP, Frame.SQUARE_DOWN, order)
    return float(np.max(np.abs(exact.restrict(mask) - approx.restrict(mask))))


@dataclass(frozen=True)
class Vertex:
    """Low-order coefficients of kappa read off as matrix elements.

    constant    <00|k|00>
    adag_i      <10|k|00>, coefficient of a_i^dagger
    a_j         <00|k|01>, coefficient of a_j
    hop         <10|k|01>, coefficient of a_i^dagger a_j
    """

    constant: complex
    adag_i: complex
    a_j: complex
    hop: complex


def vertex(kappa: OperatorMatrix) -> Vertex:
    return Vertex(
        constant=kappa.element((0, 0), (0, 0)),
        adag_i=kappa.element((1, 0), (0, 0)),
        a_j=kappa.element((0, 0), (0, 1)),
        hop=kappa.element((1, 0), (0, 1)),
    )


def expected_vertex(frame_i, frame_j, S: float) -> Vertex:
    """Closed-form vertex of ``kappa`` between two triangular frames.

    With relative angle ``phi = alpha_j - alpha_i`` the constant is
    ``cos(phi)``, the linear coefficients are ``+-sin(phi)/sqrt(2S)`` and the
    hopping coefficient is ``cos(phi)/(2S)``.
    """
    phi = FRAME_ANGLE[Frame.parse(frame_j)] - FRAME_ANGLE[Frame.parse(frame_i)]
    c, s = math.cos(phi), math.sin(phi)
    r = math.sqrt(2 * S)
    return Vertex(constant=c, adag_i=s / r, a_j=-s / r, hop=c / (2 * S))
