"""
Numerical checks of the HP spinor and spin-polaron identities.

Every check returns a :class:`VerificationReport`; failures are report
outcomes, never exceptions. Deviations are max-abs-entry norms on the stated
subspace.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import numpy as np

from .frames import (
    ALL_FRAMES,
    PAULI,
    ROTATION_LABELS,
    TRIANGULAR_FRAMES,
    Frame,
    SpinTriple,
    beta,
    lab_spins,
    rotation_so3,
    rotation_u2,
    spin_from_beta,
)
from .operators import FockSpace, site_swap
from .polaron import kappa_exact, kappa_series, series_error, vertex

TOL = 1e-12
DEFAULT_SPINS = (0.5, 1.0, 1.5, 2.0)
SERIES_SPINS = (2.0, 4.0, 8.0)
SERIES_RATIO = 0.6


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    max_deviation: float
    tolerance: float = TOL
    parameters: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.max_deviation <= self.tolerance)

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_name": self.check_name,
            "passed": self.passed,
            "max_deviation": float(self.max_deviation),
            "tolerance": float(self.tolerance),
            "parameters": self.parameters,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _maxabs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def verify_su2(spins: SpinTriple, space: FockSpace, **parameters) -> VerificationReport:
    """SU(2) algebra ``[S_a, S_b] = i eps_abc S_c``, Casimir ``S(S+1)`` and
    Hermiticity, all on the physical subspace."""
    space.require_buffer()
    S = space.spin_S
    mask = space.physical_mask
    sx, sy, sz = spins
    dev = 0.0
    for a, b, c in ((sx, sy, sz), (sy, sz, sx), (sz, sx, sy)):
        dev = max(dev, _maxabs((a @ b - b @ a - 1j * c).restrict(mask)))
    casimir = (sx @ sx + sy @ sy + sz @ sz).restrict(mask)
    dev = max(dev, _maxabs(casimir - S * (S + 1) * np.eye(casimir.shape[0])))
    dev = max(dev, spins.hermiticity_error(mask))
    return VerificationReport("su2", dev, TOL, {"S": S, "D": space.dim_D, **parameters})


def verify_rotation(label: str) -> VerificationReport:
    """Orthogonality and unit determinant of the SO(3) matrix, unitarity of its spinor partner."""
    r, u = rotation_so3(label), rotation_u2(label)
    dev = max(r.orthogonality_error(), abs(r.det - 1.0), u.unitarity_error())
    return VerificationReport("rotation", dev, TOL, {"label": label, "det": r.det})


def verify_pauli_conjugation(label: str) -> VerificationReport:
    """c-number version of the frame relation: ``u^dagger sigma_a u = sum_b M_ab sigma_b``."""
    u = rotation_u2(label).m
    m = _frame_map(label)
    dev = 0.0
    for a in range(3):
        lhs = u.conj().T @ PAULI[a] @ u
        rhs = sum(m[a, b] * PAULI[b] for b in range(3))
        dev = max(dev, _maxabs(lhs - rhs))
    return VerificationReport("pauli-conjugation", dev, TOL, {"label": label})


def _frame_map(label: str) -> np.ndarray:
    # spin map from HP components to the local frame of `label`
    r_inv = rotation_so3(label).inverse
    if label == "square":
        return r_inv
    return r_inv @ rotation_so3("A").m


def verify_frame_consistency(label: str, S: float, D: int | None = None) -> VerificationReport:
    """Compare ``S beta(0)^dagger u^dagger sigma u beta(0)`` with ``R^{-1}`` applied
    to the lab-frame spins, on the physical subspace."""
    space = FockSpace(S, D)
    space.require_buffer()
    if label == "square":
        frame, lattice = Frame.SQUARE_DOWN, "square"
    elif label in ("A", "B", "C"):
        frame, lattice = Frame(label), "triangular"
    else:
        raise ValueError(f"unknown rotation label {label!r}")
    lhs = spin_from_beta(beta(space, 0, frame), space.spin_S)
    rhs = lab_spins(space, 0, lattice).transformed(rotation_so3(label).inverse)
    mask = space.physical_mask
    dev = max(_maxabs((l - r).restrict(mask)) for l, r in zip(lhs, rhs))
    return VerificationReport(
        "frame", dev, TOL, {"label": label, "S": space.spin_S, "D": space.dim_D}
    )


def verify_constraint(S: float, D: int | None = None) -> VerificationReport:
    """On-site ``beta^dagger beta = 1`` on the physical subspace, for every frame.

    The first unphysical diagonal entry ``(2S+1)/(2S)`` is recorded in the
    parameters but excluded from the pass criterion.
    """
    space = FockSpace(S, D)
    space.require_buffer()
    mask = space.physical_mask
    dev = 0.0
    leak = {}
    for frame in ALL_FRAMES:
        k = kappa_exact(space, frame, frame, same_site=True)
        block = k.restrict(mask)
        dev = max(dev, _maxabs(block - np.eye(block.shape[0])))
        leak[frame.value] = float(k.entries[space.two_s + 1, space.two_s + 1].real)
    return VerificationReport(
        "constraint",
        dev,
        TOL,
        {"S": space.spin_S, "D": space.dim_D, "unphysical_diagonal": leak},
    )


def verify_kappa_hermiticity(S: float, D: int | None = None) -> VerificationReport:
    """``kappa(f_i, f_j)^dagger`` equals ``kappa(f_j, f_i)`` with sites swapped."""
    space = FockSpace(S, D, n_sites=2)
    p = site_swap(space)
    dev = 0.0
    for fi in ALL_FRAMES:
        for fj in ALL_FRAMES:
            lhs = kappa_exact(space, fi, fj).dag()
            rhs = p @ kappa_exact(space, fj, fi) @ p
            dev = max(dev, _maxabs((lhs - rhs).entries))
    return VerificationReport("kappa-hermiticity", dev, TOL, {"S": space.spin_S, "D": space.dim_D})


def verify_kappa_series(S: float, D: int | None = None) -> VerificationReport:
    """Order 0 vanishes and ``<10|kappa_1|00> = <00|kappa_1|01> = 1/sqrt(2S)``."""
    space = FockSpace(S, D, n_sites=2)
    up, down = Frame.SQUARE_UP, Frame.SQUARE_DOWN
    k0 = kappa_series(space, up, down, 0)
    k1 = kappa_series(space, up, down, 1)
    target = 1.0 / math.sqrt(2 * space.spin_S)
    exact_vac = kappa_exact(space, up, down).element((0, 0), (0, 0))
    dev = max(
        _maxabs(k0.entries),
        abs(k1.element((1, 0), (0, 0)) - target),
        abs(k1.element((0, 0), (0, 1)) - target),
        abs(exact_vac),
    )
    return VerificationReport(
        "kappa-series", dev, TOL, {"S": space.spin_S, "D": space.dim_D, "A1": target}
    )


def verify_series_convergence(spins: Iterable[float] = SERIES_SPINS) -> VerificationReport:
    """Truncation error of the order-2 series on total occupation <= 2 shrinks
    by at least ``1/0.6`` per doubling of S.

    The deviation is ``max(ratio) - 0.6`` clipped at 0, so the report passes
    exactly when every ratio is at most 0.6.
    """
    spins = tuple(spins)
    errors = [series_error(S) for S in spins]
    ratios = [b / a for a, b in zip(errors[:-1], errors[1:])]
    worst = max(ratios)
    return VerificationReport(
        "kappa-convergence",
        max(0.0, worst - SERIES_RATIO),
        0.0,
        {"S": list(spins), "errors": errors, "ratios": ratios, "max_ratio": SERIES_RATIO},
    )


def verify_ht_vertex(S: float, D: int | None = None) -> VerificationReport:
    """NN hopping vertices between triangular frames A-B and A-C.

    Checks, for the boson factor of the hopping term: constant ``-1/2`` (so
    ``-t kappa`` gives ``+t/2``), linear coefficients
    ``+-sqrt(3/(4S)) / sqrt(2)`` in the pattern ``(a_i^dagger - a_j)`` with the
    sign reversed between B and C, and the ``a_i^dagger a_j`` coefficient
    ``-1/(4S)``.
    """
    space = FockSpace(S, D, n_sites=2)
    space.require_buffer()
    S = space.spin_S
    lin = math.sqrt(3 / (4 * S)) / math.sqrt(2)
    vb = vertex(kappa_exact(space, Frame.A, Frame.B))
    vc = vertex(kappa_exact(space, Frame.A, Frame.C))
    devs = [
        abs(vb.constant + 0.5),
        abs(vc.constant + 0.5),
        abs(vb.adag_i - lin),
        abs(vb.a_j + lin),
        abs(vc.adag_i + lin),
        abs(vc.a_j - lin),
        abs(vb.adag_i + vc.adag_i),
        abs(vb.hop + 1 / (4 * S)),
        abs(vc.hop + 1 / (4 * S)),
    ]
    return VerificationReport(
        "ht-vertex",
        max(devs),
        TOL,
        {
            "S": S,
            "D": space.dim_D,
            "constant_AB": vb.constant.real,
            "linear_AB": vb.adag_i.real,
            "linear_AC": vc.adag_i.real,
            "hop_AB": vb.hop.real,
        },
    )


def verify_htprime_vertex(S: float, D: int | None = None) -> VerificationReport:
    """NNN vertex (same sublattice): constant 1, no linear term, hopping ``1/(2S)``."""
    space = FockSpace(S, D, n_sites=2)
    space.require_buffer()
    S = space.spin_S
    devs = []
    for f in TRIANGULAR_FRAMES:
        v = vertex(kappa_exact(space, f, f))
        devs += [abs(v.constant - 1), abs(v.adag_i), abs(v.a_j), abs(v.hop - 1 / (2 * S))]
    return VerificationReport("htprime-vertex", max(devs), TOL, {"S": S, "D": space.dim_D})


def combine(check_name: str, reports: list[VerificationReport], **parameters) -> VerificationReport:
    """Fold several reports into one whose deviation is the worst of them."""
    items = [{**r.parameters, "max_deviation": float(r.max_deviation)} for r in reports]
    return VerificationReport(
        check_name,
        max(r.max_deviation for r in reports),
        min(r.tolerance for r in reports),
        {**parameters, "items": items},
    )


def check_su2(S: float) -> VerificationReport:
    space = FockSpace(S)
    reports = [
        verify_su2(spin_from_beta(beta(space, 0, f), space.spin_S), space, frame=f.value)
        for f in ALL_FRAMES
    ]
    return combine("su2", reports, S=space.spin_S, D=space.dim_D)


def check_rotation() -> VerificationReport:
    return combine("rotation", [verify_rotation(l) for l in ROTATION_LABELS])


def check_pauli_conjugation() -> VerificationReport:
    return combine("pauli-conjugation", [verify_pauli_conjugation(l) for l in ROTATION_LABELS])


def check_frame(S: float) -> VerificationReport:
    reports = [verify_frame_consistency(l, S) for l in ROTATION_LABELS]
    return combine("frame", reports, S=reports[0].parameters["S"], D=reports[0].parameters["D"])


# name -> (takes S, callable)
CHECKS: dict[str, tuple[bool, Callable[..., VerificationReport]]] = {
    "su2": (True, check_su2),
    "rotation": (False, check_rotation),
    "pauli-conjugation": (False, check_pauli_conjugation),
    "frame": (True, check_frame),
    "constraint": (True, verify_constraint),
    "kappa-hermiticity": (True, verify_kappa_hermiticity),
    "kappa-series": (True, verify_kappa_series),
    "kappa-convergence": (False, verify_series_convergence),
    "ht-vertex": (True, verify_ht_vertex),
    "htprime-vertex": (True, verify_htprime_vertex),
}


def run_sweep(spins: Iterable[float] = DEFAULT_SPINS, checks: Iterable[str] | None = None) -> list[VerificationReport]:
    """Run the named checks (default: all) at ``D = 2S + 2`` for every S in ``spins``.

    S-independent checks (rotations, series convergence along S = 2, 4, 8)
    run once. Reports come out in check order, then S order.
    """
    spins = tuple(spins)
    names = list(CHECKS) if checks is None else list(checks)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}")
    reports: list[VerificationReport] = []
    for name in names:
        takes_s, fn = CHECKS[name]
        if takes_s:
            reports.extend(fn(S) for S in spins)
        else:
            reports.append(fn())
    return reports


CHECK_NAMES = tuple(CHECKS)
