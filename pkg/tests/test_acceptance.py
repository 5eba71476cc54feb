"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` or
``python3 tests/test_acceptance.py``.
"""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from isoperim.alexandrov import CurvatureScenario, alexandrov_check
from isoperim.fiala import fiala_ineq_check, gauss_bonnet_check, parallel_flow
from isoperim.fourier import FourierCoeffs
from isoperim.geometry import area_series, area_stokes, equality_case_detect, nehari_check
from isoperim.green import green_disk, green_flux_check, green_level_bound_check, huber_point_check
from isoperim.harmonic import build_conformal_factor, disk_test_points, residual_check
from isoperim.levelsets import (
    H_of_a,
    P_profile,
    bol_check,
    build_bubble_field,
    diff_ineq_check,
    distribution,
)
from isoperim.quadrature import PolarGrid, ScalarField
from isoperim.radial import bubble, flat, hyperbolic, sphere

COS = FourierCoeffs.from_modes({1: 0.5, -1: 0.5})
FOUR_PI2 = 4 * np.pi**2


@pytest.fixture
def verdict(capsys):
    """Print one line per criterion regardless of output capture."""
    state = {}

    def record(number, title, ok, detail):
        state.update(number=number, title=title, ok=bool(ok), detail=detail)
        return bool(ok)

    yield record
    if state:
        with capsys.disabled():
            tag = "PASS" if state["ok"] else "FAIL"
            print(f"\n[{tag}] criterion {state['number']:>2}: {state['title']} ({state['detail']})")


def test_criterion_01_conformal_residual(verdict):
    start = time.perf_counter()
    u = COS.padded(16)
    res = residual_check(build_conformal_factor(u, 64), u, disk_test_points(32, 64))
    elapsed = time.perf_counter() - start
    ok = verdict(1, "conformal-factor residual", res < 1e-10 and elapsed < 1.0, f"residual {res:.2e}, {elapsed:.3f} s")
    assert ok


def test_criterion_02_stokes_parseval(verdict, random_boundaries):
    gaps = []
    for u in random_boundaries:
        g = build_conformal_factor(u, 256).g
        gaps.append(abs(area_series(g) - area_stokes(g.boundary_coeffs())))
    worst = max(gaps)
    ok = verdict(2, "Stokes/Parseval agreement", worst < 1e-9 and len(gaps) == 20, f"max gap {worst:.2e} over 20 u")
    assert ok


def test_criterion_03_nehari(verdict, random_boundaries):
    slacks = [nehari_check(u).slack for u in random_boundaries]
    const = nehari_check(FourierCoeffs.constant(0.7))
    g_const = build_conformal_factor(FourierCoeffs.constant(0.7), 256).g
    cos = nehari_check(COS)
    checks = [
        min(slacks) >= -1e-8,
        abs(const.slack) < 1e-10,
        equality_case_detect(g_const, 1e-12),
        abs(cos.lhs - 44.623) <= 0.01,
        abs(cos.rhs - 44.650) <= 0.01,
    ]
    detail = f"min random slack {min(slacks):.3e}, const slack {const.slack:.1e}, cos lhs {cos.lhs:.5f} rhs {cos.rhs:.5f}"
    assert verdict(3, "Nehari", all(checks), detail)


def test_criterion_04_bol_spherical_caps(verdict):
    grid = PolarGrid(128, 256)
    rows, ok = [], True
    for beta in (0.5, 1.0, 2.0):
        start = time.perf_counter()
        u, _, h = build_bubble_field(beta, grid)
        r = bol_check(u, h, 2.0)
        elapsed = time.perf_counter() - start
        lhs_cf = (4 * np.pi * beta / (1 + beta**2)) ** 2
        mass_cf = 4 * np.pi * beta**2 / (1 + beta**2)
        rel = abs(r.lhs - r.rhs) / r.rhs
        ok &= rel <= 1e-8 and elapsed < 5.0
        ok &= abs(r.lhs - lhs_cf) <= 1e-10 * lhs_cf and abs(r.metadata["area"] - mass_cf) <= 1e-10 * mass_cf
        rows.append(f"beta {beta}: {rel:.1e}")
    assert verdict(4, "Bol equality on spherical caps", ok, ", ".join(rows))


def test_criterion_05_level_set_backbone(verdict):
    grid = PolarGrid(128, 256)
    u, v, h = build_bubble_field(1.0, grid)
    weight = ScalarField(grid, np.full(v.values.shape, np.exp(h)), "e^h")
    profile = distribution(v, weight, 64)
    mu, a = profile.levels, profile.masses
    a_err = float(np.max(np.abs(a - np.pi * (2 * np.exp(-mu / 2) - 1))))
    H = H_of_a(u, v, 2.0, profile)
    inner = slice(2, -2)
    H_rel = float(np.max(np.abs(H.values[inner] / (8 * np.pi * a[inner] / (a[inner] + np.pi)) - 1)))
    diff = diff_ineq_check(profile, H)
    diff_max = float(np.max(np.abs(diff.metadata["slack_per_sample"])))
    P_max = float(np.max(np.abs(P_profile(profile, H).P)))
    ok = a_err <= 2 * grid.cell_area and H_rel <= 0.01 and diff_max <= 1e-3 and P_max <= 1e-3
    detail = f"a err {a_err:.1e} vs {2 * grid.cell_area:.1e}, H rel {H_rel:.1e}, diff {diff_max:.1e}, |P| {P_max:.1e}"
    assert verdict(5, "level-set backbone", ok, detail)


def test_criterion_06_green(verdict):
    rng = np.random.default_rng(6)
    x = rng.uniform(0, 0.99, 200) * np.exp(1j * rng.uniform(0, 2 * np.pi, 200))
    y = rng.uniform(0, 0.99, 200) * np.exp(1j * rng.uniform(0, 2 * np.pi, 200))
    sym = float(np.max(np.abs(green_disk(x, y[0]) - np.array([green_disk(y[0], xi) for xi in x]))))
    sym = max(sym, max(abs(float(green_disk(a, b)) - float(green_disk(b, a))) for a, b in zip(x, y)))
    circle = np.exp(1j * np.linspace(0, 2 * np.pi, 97))
    edge = max(float(np.max(np.abs(green_disk(circle, yy)))) for yy in y[:20])
    poles = [0, 0.3 + 0.4j, 0.9, -0.95j, -0.5 + 0.5j]
    flux = max(abs(green_flux_check(p).lhs - 1) for p in poles)
    centred = green_level_bound_check(0j).slack
    off = green_level_bound_check(0.5).slack
    ok = sym <= 1e-14 and edge <= 1e-12 and flux <= 1e-8 and abs(centred) <= 1e-6 and off > 0
    detail = f"sym {sym:.1e}, edge {edge:.1e}, flux {flux:.1e}, level bound centred {centred:.1e}, off-centre {off:.2e}"
    assert verdict(6, "Green machinery", ok, detail)


def test_criterion_07_huber(verdict):
    r = huber_point_check(FourierCoeffs.constant(0.0), np.pi, 0)
    values = (r.lhs, r.metadata["middle"], r.rhs)
    rel = max(abs(v - FOUR_PI2) / FOUR_PI2 for v in values)
    u = FourierCoeffs.from_modes({1: 0.4, -1: 0.4, 3: 0.1 - 0.1j, -3: 0.1 + 0.1j})
    zero = huber_point_check(u, 0.0, 0.3)
    neh = nehari_check(u)
    bit = zero.lhs == zero.metadata["middle"] == neh.lhs and zero.rhs == neh.rhs
    assert verdict(7, "Huber chain", rel <= 1e-5 and bit, f"max rel dev {rel:.1e}, alpha=0 bit-exact {bit}")


def test_criterion_08_alexandrov(verdict):
    grid = PolarGrid(128, 256)
    one = alexandrov_check(CurvatureScenario.build(bubble(1.0), 1.0, grid))
    u, _, h = build_bubble_field(1.0, grid)
    bol = bol_check(u, h, 2.0)
    same = (one.lhs, one.rhs, one.slack) == (bol.lhs, bol.rhs, bol.slack)
    half = alexandrov_check(CurvatureScenario.build(bubble(1.0), 0.5, grid))
    ok = same and abs(half.lhs - FOUR_PI2) <= 1e-6 and abs(half.rhs - 2 * np.pi**2) <= 1e-6
    detail = f"K0=1 identical {same}, K0=1/2 lhs-4pi^2 {half.lhs - FOUR_PI2:.1e} rhs-2pi^2 {half.rhs - 2 * np.pi**2:.1e}"
    assert verdict(8, "Alexandrov", ok, detail)


def test_criterion_09_fiala(verdict):
    families = {"flat": flat(), "sphere": sphere(), "hyperbolic": hyperbolic()}
    gb = max(abs(gauss_bonnet_check(m, r0).slack) for m in families.values() for r0 in np.linspace(0.05, 0.95, 10))
    worst, steps = 0.0, []
    for m, r0 in ((flat(), 1.0), (sphere(), 1.0), (hyperbolic(), 0.5)):
        for direction in ("outward", "inward"):
            trace = parallel_flow(m, r0, 0.5, direction)
            steps.append(len(trace.p) - 1)
            worst = max(worst, fiala_ineq_check(trace).metadata["max_equality_residual"])
    ok = gb <= 1e-8 and worst <= 1e-5 and min(steps) >= 100
    assert verdict(9, "Fiala radial", ok, f"Gauss-Bonnet {gb:.1e}, scaled dL/dp residual {worst:.1e}, min steps {min(steps)}")


def test_criterion_10_determinism(verdict, tmp_path):
    outputs, times = [], []
    for k in range(2):
        out = tmp_path / f"selftest{k}.json"
        start = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "isoperim", "selftest", "--out", str(out)], capture_output=True)
        times.append(time.perf_counter() - start)
        assert proc.returncode == 0, proc.stderr
        lines = out.read_text().splitlines()
        outputs.append("\n".join(line for line in lines if '"wall_time"' not in line))
    same = outputs[0] == outputs[1]
    passed = json.loads((tmp_path / "selftest0.json").read_text())["pass"]
    ok = same and max(times) < 60 and passed
    assert verdict(10, "selftest determinism", ok, f"identical {same}, slowest run {max(times):.2f} s, all anchors pass {passed}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
