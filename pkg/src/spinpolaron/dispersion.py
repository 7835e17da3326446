"""
Spinon and holon dispersions of the extended t-J model on the triangular lattice.

    omega_k   = (1/2) J S z sqrt((1 + 2 gamma1) (1 - gamma1)),  z = 6
    epsilon_k = -(1/2) (t gamma1 - 2 t' gamma2) - mu

Both accept a :class:`~spinpolaron.lattice.KVector` or an array of momenta
with trailing axis 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy.optimize import minimize

from .lattice import (
    KPath,
    KVector,
    _as_k,
    bz_grid,
    gamma1,
    gamma2,
    nn_vectors,
    sample_path,
)

RADICAND_TOL = 1e-12
_NN3 = nn_vectors().as_array()[[0, 2, 4]]  # three bonds summing to zero


class DispersionError(ValueError):
    """Raised when the spin-wave radicand goes negative beyond rounding."""


@dataclass(frozen=True)
class SpinonParams:
    J: float = 1.0
    S: float = 0.5
    z: int = 6

    def __post_init__(self):
        if self.z != 6:
            raise ValueError("the triangular lattice has coordination z = 6")
        if not (math.isfinite(self.J) and math.isfinite(self.S)):
            raise ValueError("J and S must be finite")
        if self.S <= 0:
            raise ValueError(f"S must be positive, got {self.S}")


@dataclass(frozen=True)
class HolonParams:
    t: float = 1.0
    t_prime: float = 0.0
    mu: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.t, self.t_prime, self.mu)):
            raise ValueError("t, t_prime and mu must be finite")


Params = Union[SpinonParams, HolonParams]


@dataclass(frozen=True)
class BandSample:
    arclength: float
    k: KVector
    value: float


@dataclass(frozen=True)
class BandSummary:
    min_value: float
    max_value: float
    argmin_k: KVector
    argmax_k: KVector

    @property
    def bandwidth(self) -> float:
        return self.max_value - self.min_value


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def spinon_radicand(k):
    """``(1 + 2 gamma1)(1 - gamma1)`` in a cancellation-free form.

    With ``theta_j = k . d_j`` for three bonds summing to zero,
    ``1 - gamma1 = (2/3) sum sin^2(theta_j / 2)`` and
    ``1 + 2 gamma1 = |1 + e^{i theta_1} + e^{-i theta_3}|^2 / 3``, so both
    factors vanish to full relative precision at the Goldstone points.
    """
    th = _as_k(k) @ _NN3.T
    one_minus = (2.0 / 3.0) * np.sum(np.sin(th / 2) ** 2, axis=-1)
    amp = 1 + np.exp(1j * th[..., 0]) + np.exp(-1j * th[..., 2])
    one_plus_2 = np.abs(amp) ** 2 / 3.0
    return _scalar_or_array(one_plus_2 * one_minus)


def omega_spinon(k, p: SpinonParams = SpinonParams()):
    """Linear spin-wave energy; vanishes at Gamma, K and K'."""
    g = np.asarray(gamma1(k))
    naive = (1 + 2 * g) * (1 - g)
    if np.any(naive < -RADICAND_TOL):
        raise DispersionError(f"negative spin-wave radicand {float(np.min(naive)):.3e}")
    rad = np.asarray(spinon_radicand(k))
    return _scalar_or_array(0.5 * p.J * p.S * p.z * np.sqrt(np.clip(rad, 0.0, None)))


def epsilon_holon(k, p: HolonParams = HolonParams()):
    """Holon band; with ``t_prime = mu = 0`` this is ``-(t/2) gamma1``."""
    g1 = np.asarray(gamma1(k))
    if p.t_prime == 0.0:
        val = -0.5 * p.t * g1 - p.mu
    else:
        val = -0.5 * (p.t * g1 - 2 * p.t_prime * np.asarray(gamma2(k))) - p.mu
    return _scalar_or_array(val)


def band_function(params: Params) -> Callable:
    if isinstance(params, SpinonParams):
        return lambda k: omega_spinon(k, params)
    if isinstance(params, HolonParams):
        return lambda k: epsilon_holon(k, params)
    raise TypeError(f"expected SpinonParams or HolonParams, got {type(params).__name__}")


def band_name(params: Params) -> str:
    return "spinon" if isinstance(params, SpinonParams) else "holon"


def sample_band(path: KPath, params: Params) -> list[BandSample]:
    """Band values at the sampled points of ``path``, in path order."""
    pts = sample_path(path)
    f = band_function(params)
    ks = np.array([k for _, k in pts])
    vals = np.atleast_1d(f(ks))
    return [BandSample(s, k, float(v)) for (s, k), v in zip(pts, vals)]


# -- extremum search -------------------------------------------------------

_N_CANDIDATES = 6
_FD_STEP = 1e-5
_ENERGY_TIE = 1e-12


def _local_minima(vals: np.ndarray) -> np.ndarray:
    """Indices of periodic-grid points not larger than any of their 8 neighbors."""
    is_min = np.ones(vals.shape, dtype=bool)
    for d1 in (-1, 0, 1):
        for d2 in (-1, 0, 1):
            if d1 or d2:
                is_min &= vals <= np.roll(vals, (d1, d2), axis=(0, 1))
    return np.argwhere(is_min)


def _polish(f, x: np.ndarray, h: float = _FD_STEP, iters: int = 4) -> np.ndarray:
    """Newton steps on a central-difference quadratic model, kept only while
    the model is convex, the step is short and the value does not increase."""
    fx = f(x)
    e = np.eye(2) * h
    for _ in range(iters):
        g = np.array([(f(x + e[i]) - f(x - e[i])) / (2 * h) for i in range(2)])
        hess = np.empty((2, 2))
        for i in range(2):
            for j in range(2):
                hess[i, j] = (
                    f(x + e[i] + e[j]) - f(x + e[i] - e[j]) - f(x - e[i] + e[j]) + f(x - e[i] - e[j])
                ) / (4 * h * h)
        if np.any(np.linalg.eigvalsh(hess) <= 0):
            break
        step = np.linalg.solve(hess, g)
        if np.linalg.norm(step) > 10 * h:
            break
        trial = x - step
        ft = f(trial)
        # near the optimum the gain is below rounding; accept ties
        if ft > fx + 1e-14 * max(1.0, abs(fx)):
            break
        x, fx = trial, ft
        if np.linalg.norm(step) < 1e-14:
            break
    return x


def _refine_min(f, x0: np.ndarray, cell: float) -> tuple[np.ndarray, float]:
    simplex = np.array([x0, x0 + [cell, 0.0], x0 + [0.0, cell]])
    res = minimize(
        f,
        x0,
        method="Nelder-Mead",
        options={"initial_simplex": simplex, "xatol": 1e-13, "fatol": 1e-16, "maxiter": 5000},
    )
    x = res.x if res.fun <= f(x0) else x0
    x = _polish(f, np.asarray(x, dtype=float))
    return x, float(f(x))


def _extremum(band: Callable, grid: np.ndarray, sign: float) -> tuple[float, KVector]:
    vals = sign * np.asarray(band(grid))
    idx = _local_minima(vals)
    order = sorted(idx.tolist(), key=lambda ij: (vals[ij[0], ij[1]], grid[ij[0], ij[1], 0], grid[ij[0], ij[1], 1]))
    cell = float(np.linalg.norm(grid[1, 0] - grid[0, 0]))
    f = lambda x: sign * float(band(x))  # noqa: E731
    best = None
    for i, j in order[:_N_CANDIDATES]:
        x, fx = _refine_min(f, grid[i, j].copy(), cell)
        key = (fx, x[0], x[1])
        if best is None or fx < best[0] - _ENERGY_TIE:
            best = key
        elif abs(fx - best[0]) <= _ENERGY_TIE and (x[0], x[1]) < (best[1], best[2]):
            best = key
    fx, kx, ky = best
    return sign * fx, KVector(kx, ky)


def band_summary(params: Params, grid_resolution: int = 48) -> BandSummary:
    """Minimum, maximum and bandwidth over the Brillouin zone.

    A uniform ``grid_resolution x grid_resolution`` grid of one reciprocal cell
    seeds a derivative-free local search (Nelder-Mead followed by a
    finite-difference Newton polish). Equal extrema are resolved in favor of
    the lexicographically smallest ``(kx, ky)``.
    """
    if grid_resolution < 8:
        raise ValueError(f"grid_resolution must be >= 8, got {grid_resolution}")
    band = band_function(params)
    grid = bz_grid(grid_resolution)
    vmin, kmin = _extremum(band, grid, 1.0)
    vmax, kmax = _extremum(band, grid, -1.0)
    return BandSummary(vmin, vmax, kmin, kmax)
