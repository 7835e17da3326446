"""Acceptance criteria, one test each. Run ``pytest tests/test_acceptance.py -s``
(or plain ``pytest``; the status lines are printed either way)."""

import cmath
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from spinpolaron.dispersion import (
    HolonParams,
    SpinonParams,
    _refine_min,
    band_summary,
    omega_spinon,
)
from spinpolaron.frames import ALL_FRAMES, beta, spin_from_beta
from spinpolaron.lattice import bz_grid, equivalent, gamma1, high_symmetry_points
from spinpolaron.operators import FockSpace
from spinpolaron.polaron import kappa_exact, kappa_series, series_error, vertex
from spinpolaron.verification import verify_frame_consistency, verify_su2

HS = high_symmetry_points()
SPINS = (0.5, 1.0, 1.5, 2.0)
R3 = math.sqrt(3)
NN_LIST = [(1, 0), (-1, 0), (-0.5, R3 / 2), (0.5, -R3 / 2), (-0.5, -R3 / 2), (0.5, R3 / 2)]


@pytest.fixture
def report(capsys):
    def _report(tag, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {tag}: {detail}")
        assert ok, f"{tag}: {detail}"

    return _report


def phase_sum(k):
    return sum(cmath.exp(1j * (k[0] * dx + k[1] * dy)) for dx, dy in NN_LIST) / 6


def test_ac01_structure_factor(report):
    expected = {"G": 1.0, "K": -0.5, "M": -1 / 3}
    devs = {}
    for name, val in expected.items():
        oracle = phase_sum(HS[name]).real
        assert abs(oracle - val) < 1e-12
        devs[name] = max(abs(gamma1(HS[name]) - val), abs(gamma1(HS[name]) - oracle))
    worst = max(devs.values())
    report("AC1 gamma1 at G,K,M", worst < 1e-12, f"max dev {worst:.1e} (tol 1e-12)")


def test_ac02_goldstone(report):
    t0 = time.perf_counter()
    p = SpinonParams(1.0, 0.5)
    f = lambda x: float(omega_spinon(x, p))  # noqa: E731
    worst = 0.0
    for name in ("G", "K", "K2"):
        k0 = np.array(HS[name])
        worst = max(worst, f(k0))
        # refinement from a displaced start must return to the zero
        x, fx = _refine_min(f, k0 + [0.02, -0.015], 0.05)
        assert equivalent(x, k0, 1e-6)
        worst = max(worst, fx)
    grid_min = float(omega_spinon(bz_grid(64), p).min())
    dt = time.perf_counter() - t0
    ok = worst < 1e-9 and grid_min >= -1e-12 and dt < 1.0
    report("AC2 spinon Goldstone zeros", ok, f"max |omega| {worst:.1e} (tol 1e-9), grid min {grid_min:.1e}, {dt:.2f}s")


def test_ac03_omega_at_m(report):
    dev = abs(omega_spinon(HS["M"], SpinonParams(1.0, 0.5)) - 1.0)
    report("AC3 omega(M) = 1", dev < 1e-12, f"dev {dev:.1e} (tol 1e-12)")


def test_ac04_holon_band(report):
    t0 = time.perf_counter()
    s = band_summary(HolonParams(1.0, 0.0), 48)
    dt = time.perf_counter() - t0
    ok = (
        abs(s.min_value + 0.5) < 1e-9
        and abs(s.max_value - 0.25) < 1e-9
        and abs(s.bandwidth - 0.75) < 1e-9
        and equivalent(s.argmin_k, HS["G"], 1e-9)
        and (equivalent(s.argmax_k, HS["K"], 1e-9) or equivalent(s.argmax_k, HS["K2"], 1e-9))
        and dt < 1.0
    )
    report(
        "AC4 holon NN band",
        ok,
        f"min {s.min_value:.12f} max {s.max_value:.12f} width {s.bandwidth:.12f}, {dt:.2f}s",
    )


def test_ac05_hp_su2(report):
    t0 = time.perf_counter()
    worst = 0.0
    for S in SPINS:
        sp = FockSpace(S)
        assert sp.dim_D == round(2 * S) + 2
        for f in ALL_FRAMES:
            rep = verify_su2(spin_from_beta(beta(sp, 0, f), S), sp)
            worst = max(worst, rep.max_deviation)
    dt = time.perf_counter() - t0
    report("AC5 SU(2) + Casimir, all S and frames", worst < 1e-12 and dt < 1.0, f"max dev {worst:.1e}, {dt:.2f}s")


def test_ac06_frame_consistency(report):
    t0 = time.perf_counter()
    worst = max(verify_frame_consistency(l, S).max_deviation for l in ("square", "A", "B", "C") for S in SPINS)
    dt = time.perf_counter() - t0
    report("AC6 frame consistency", worst < 1e-12 and dt < 1.0, f"max dev {worst:.1e}, {dt:.2f}s")


def test_ac07_kappa_series(report):
    t0 = time.perf_counter()
    a0 = 0.0
    d1 = 0.0
    for S in SPINS:
        sp = FockSpace(S, n_sites=2)
        a0 = max(a0, float(np.abs(kappa_series(sp, "square-up", "square-down", 0).entries).max()))
        a0 = max(a0, abs(kappa_exact(sp, "square-up", "square-down").element((0, 0), (0, 0))))
        k1 = kappa_series(sp, "square-up", "square-down", 1)
        d1 = max(d1, abs(k1.element((1, 0), (0, 0)) - 1 / math.sqrt(2 * S)))
    e4, e8 = series_error(4), series_error(8)
    ratio = e8 / e4
    dt = time.perf_counter() - t0
    ok = a0 == 0.0 and d1 < 1e-12 and ratio <= 0.6 and dt < 1.0
    report("AC7 kappa series", ok, f"A0 {a0}, <10|k|00> dev {d1:.1e}, err(8)/err(4) {ratio:.3f} (<= 0.6), {dt:.2f}s")


def test_ac08_vertex(report):
    t0 = time.perf_counter()
    worst = 0.0
    for S in (0.5, 1.0):
        sp = FockSpace(S, n_sites=2)
        vb = vertex(kappa_exact(sp, "A", "B"))
        vc = vertex(kappa_exact(sp, "A", "C"))
        lin = math.sqrt(3 / (4 * S)) / math.sqrt(2)
        worst = max(
            worst,
            abs(vb.constant + 0.5),
            abs(vc.constant + 0.5),
            abs(vb.adag_i + vc.adag_i),
            abs(vb.a_j + vc.a_j),
            abs(vb.adag_i - lin),
            abs(vb.a_j + lin),
        )
    dt = time.perf_counter() - t0
    report("AC8 NN vertex pattern", worst < 1e-12 and dt < 1.0, f"max dev {worst:.1e}, {dt:.2f}s")


def test_ac09_constraint(report):
    worst = 0.0
    for S in SPINS:
        sp = FockSpace(S)
        for f in ALL_FRAMES:
            block = kappa_exact(sp, f, f, same_site=True).restrict()
            worst = max(worst, float(np.abs(block - np.eye(block.shape[0])).max()))
    report("AC9 on-site constraint", worst < 1e-12, f"max dev {worst:.1e}")


CLI_RUNS = [
    ["dispersion", "--band", "spinon", "--J", "1", "--S", "0.5", "--path", "G,K,M,G", "--n", "100"],
    ["dispersion", "--band", "holon", "--t", "1", "--tprime", "0.3", "--format", "json"],
    ["summary", "--band", "holon", "--t", "1", "--tprime", "0"],
    ["summary", "--band", "spinon"],
    ["verify"],
    ["bz"],
]


def test_ac10_cli_determinism(report, tmp_path):
    problems = []
    for i, argv in enumerate(CLI_RUNS):
        blobs = []
        for rep in range(2):
            out = tmp_path / f"run{i}_{rep}"
            r = subprocess.run([sys.executable, "-m", "spinpolaron.cli", *argv, "--out", str(out)], capture_output=True)
            if r.returncode != 0:
                problems.append(f"{argv[0]} exit {r.returncode}")
            blobs.append(out.read_bytes() if out.exists() else b"")
        if blobs[0] != blobs[1] or not blobs[0]:
            problems.append(f"{' '.join(argv)} not byte-identical")
    report("AC10 CLI determinism, verify exits 0", not problems, "; ".join(problems) or f"{len(CLI_RUNS)} invocations x2 identical")
