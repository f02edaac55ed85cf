"""Acceptance criteria 1-11, each at its stated tolerance.

Every test records one PASS/FAIL line (shown in the terminal summary) before
asserting, so a failing run still reports what was measured.
"""
import contextlib
import io
import json
import math
import time

import numpy as np

from lwpot import heun, oracle, potential, spectrum
from lwpot.cli import main
from lwpot.potential import FIGURE1, FIGURE2, PotentialKind
from lwpot.verify import (
    closed_form_residuals,
    figure2_deformed_residual,
    kummer_transformation_error,
    lambert_identity_errors,
    pipeline_gap,
    reduction_worst,
    u_strategy_gap,
)


def test_c01_bound_state_count(record):
    buf = io.StringIO()
    t = time.perf_counter()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main(["spectrum", "--preset", "figure2"])
    dt = time.perf_counter() - t
    n = json.loads(buf.getvalue())["exact_n"]
    ok = code == 0 and n == 3 and dt < 5.0
    assert record(1, ok, f"spectrum --preset figure2 -> {n} states, exit {code}, {dt:.2f} s (limit 5 s)")


def test_c02_bargmann(record):
    b = spectrum.bargmann_bound(FIGURE2)
    i = spectrum.bargmann_integral(FIGURE2)
    gap = abs(i / 27.0 - 1)
    assert record(2, b == 27.0 and gap <= 1e-5, f"closed form {b!r}, quadrature {i!r} (rel gap {gap:.2e} <= 1e-5)")


def test_c03_calogero_chadan(record):
    cal = spectrum.calogero_bound(FIGURE2)
    ch = spectrum.chadan_estimate(FIGURE2)
    ok = abs(cal - math.sqrt(54.0)) <= 1e-12 and f"{cal:.3f}" == "7.348" and f"{ch:.3f}" == "3.674"
    assert record(3, ok, f"Calogero {cal:.3f}, Chadan {ch:.3f}, |I_c - sqrt 54| = {abs(cal - math.sqrt(54.0)):.1e}")


def test_c04_oracle_eigenvalues(record):
    a = spectrum.find_bound_states(FIGURE2).energies
    o = oracle.shooting_eigenvalues(FIGURE2)
    gap = max(abs(x / y - 1) for x, y in zip(a, o)) if len(a) == len(o) else math.inf
    assert record(4, len(a) == len(o) == 3 and gap <= 1e-6, f"analytic {a} vs Numerov {o}, max rel gap {gap:.2e} <= 1e-6")


def test_c05_zero_energy_nodes(record):
    n1 = spectrum.count_nodes_zero_energy(FIGURE2, "analytic")
    n2 = spectrum.count_nodes_zero_energy(FIGURE2, "oracle")
    assert record(5, n1 == n2 == 3, f"analytic path {n1}, oracle path {n2} (expected 3)")


def test_c06_closed_form_validity(record):
    r, w = closed_form_residuals(20)
    ok = r <= 1e-7 and w <= 1e-8
    assert record(6, ok, f"worst residual {r:.2e} <= 1e-7, Wronskian spread {w:.2e} <= 1e-8 (20 tuples, x in [0.05, 20])")


def test_c07_heun_pipeline(record):
    g = pipeline_gap()
    r, _ = figure2_deformed_residual()
    ok = g <= 1e-8 and r <= 1e-6
    assert record(7, ok, f"pipeline vs closed form {g:.2e} <= 1e-8, deformed residual {r:.2e} <= 1e-6")


def test_c08_reduction_identity(record):
    r1 = reduction_worst(PotentialKind.M1_VARIANT)
    r2 = reduction_worst(PotentialKind.M2_VARIANT)
    roots = heun.eq10_roots()
    ok = max(r1, r2) <= 1e-8 and set(roots) == {-1.0, 3.0}
    assert record(8, ok, f"residual m1 {r1:.2e}, m2 {r2:.2e} <= 1e-8; roots {roots}")


def test_c09_asymptotes(record):
    p = FIGURE1
    xs = 10.0 ** -np.arange(2, 9)
    head = np.abs(potential.eval_potential(PotentialKind.SINGULAR, xs, p) * np.sqrt(xs) + math.sqrt(p.sigma / 2) * p.V0)
    monotone = bool(np.all(np.diff(head) < 0))
    xt = np.linspace(10 * p.sigma, 60 * p.sigma, 500)
    tail = np.abs(potential.eval_potential(PotentialKind.SINGULAR, xt, p) / potential.asymptote_tail(p, xt) - 1)
    ok = monotone and tail.max() <= 0.01
    detail = f"origin gap {head[0]:.2e} -> {head[-1]:.2e} (monotone {monotone}), tail rel gap {tail.max():.2e} <= 0.01"
    assert record(9, ok, detail)


def test_c10_f_limit(record):
    v = spectrum.spectrum_function(-1e4 * FIGURE2.V0, FIGURE2)
    assert record(10, abs(v - 1) < 0.05, f"F(-1e4 V0) = {v!r}, |F - 1| = {abs(v - 1):.2e} < 0.05")


def test_c11_special_functions(record):
    wp = lambert_identity_errors("principal", 10_000)
    wl = lambert_identity_errors("lower", 10_000)
    k = kummer_transformation_error()
    u = u_strategy_gap()
    ok = wp <= 8 and wl <= 8 and k <= 1e-10 and u <= 1e-8
    detail = f"W identity/eps principal {wp:.2f}, lower {wl:.2f} (<= 8); Kummer {k:.1e} (<= 1e-10); U {u:.1e} (<= 1e-8)"
    assert record(11, ok, detail)
