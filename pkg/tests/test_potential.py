import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lwpot import potential as pot
from lwpot.errors import DomainError, ParameterError, SingularityError
from lwpot.oracle import oracle_potential
from lwpot.potential import FIGURE1, FIGURE2, PhysicalParams, PotentialKind

S = PotentialKind.SINGULAR
M1 = PotentialKind.M1_VARIANT
M2 = PotentialKind.M2_VARIANT


def mp_singular(x, p):
    with mpmath.workdps(50):
        z = -mpmath.lambertw(-mpmath.exp(-1 - mpmath.mpf(x) / p.sigma)).real
        return float(-p.V0 * z / (1 - z))


def test_presets():
    assert (FIGURE1.V0, FIGURE1.sigma, FIGURE1.m, FIGURE1.hbar) == (2.0, 1.0, 1.0, 1.0)
    assert (FIGURE2.V0, FIGURE2.sigma) == (3.0, 3.0)
    assert FIGURE1.is_singular and FIGURE2.is_singular


def test_params_validation():
    with pytest.raises(ParameterError):
        PhysicalParams(1.0, 0.0)
    with pytest.raises(ParameterError):
        PhysicalParams(1.0, 1.0, z0=0.0)
    with pytest.raises(ParameterError):
        PhysicalParams(1.0, 1.0, m=-1.0)


def test_with_keeps_singular_family():
    q = FIGURE2.with_(V0=5.0)
    assert q.is_singular and q.V1 == -5.0
    r = FIGURE2.with_(x0=0.5)
    assert not r.is_singular


@given(st.floats(min_value=1e-10, max_value=60.0))
def test_singular_matches_mpmath(x):
    v = pot.eval_potential(S, x, FIGURE1)
    assert v == pytest.approx(mp_singular(x, FIGURE1), rel=1e-13)


def test_singular_matches_bisection_oracle():
    xs = np.geomspace(1e-8, 50, 500)
    a = pot.eval_potential(S, xs, FIGURE2)
    b = oracle_potential(xs, FIGURE2)
    assert np.max(np.abs(a / b - 1)) < 1e-12


def test_singular_domain():
    with pytest.raises(SingularityError):
        pot.eval_potential(S, 0.0, FIGURE1)
    with pytest.raises(DomainError):
        pot.eval_potential(S, -1.0, FIGURE1)
    with pytest.raises(ParameterError):
        pot.eval_potential(S, 1.0, PhysicalParams(1.0, 1.0))


def test_map_z_singular_range():
    xs = np.geomspace(1e-6, 30, 300)
    z = pot.map_z(S, xs, FIGURE1)
    assert np.all((z > 0) & (z < 1)) and np.all(np.diff(z) < 0)
    assert pot.map_z(S, 0.0, FIGURE1) == 1.0


@pytest.mark.parametrize(
    "kind,p",
    [
        (M1, PhysicalParams(1.0, 0.7, 2.0, 0.3, 1.4)),
        (M2, PhysicalParams(1.0, 0.7, 2.0, 0.3, 1.2)),
        (M1, PhysicalParams(1.0, 0.7, 2.0, 0.3, -0.8)),
        (M2, PhysicalParams(1.0, 0.7, 2.0, 0.3, -1.2)),
    ],
)
def test_map_inverse_and_defining_equation(kind, p):
    lo, _ = pot.real_domain(kind, p)
    xs = np.linspace(max(lo, -3.0) + 0.05, 6.0, 120)
    z = pot.map_z(kind, xs, p)
    assert np.max(np.abs(pot.x_of_z(kind, z, p) - xs)) < 1e-11
    # the potential in z agrees with the expm1 evaluation in x
    assert np.allclose(pot.eval_potential(kind, xs, p), pot.potential_of_z(kind, z, p), rtol=1e-9)


@pytest.mark.parametrize("kind", [M1, M2])
def test_variants_against_mpmath(kind):
    p = PhysicalParams(1.3, 0.8, -0.6, 0.2, 1.5)
    lo, _ = pot.real_domain(kind, p)
    for x in np.linspace(lo + 1e-3, lo + 8, 25):
        with mpmath.workdps(50):
            xm = mpmath.mpf(float(x))
            if kind is M1:
                z = -p.z0 * mpmath.lambertw(-mpmath.exp((p.x0 - xm) / (p.sigma * p.z0)) / p.z0).real
                ref = p.V0 + p.V1 / (1 - z / p.z0)
            else:
                z = -p.z0 / mpmath.lambertw(-p.z0 * mpmath.exp((p.x0 - xm) / p.sigma)).real
                ref = p.V0 + p.V1 * (z / p.z0) ** 2 / (1 - z / p.z0)
        assert pot.eval_potential(kind, float(x), p) == pytest.approx(float(ref), rel=1e-12)


def test_rho_is_dz_dx():
    xs = np.linspace(0.2, 8, 40)
    h = 1e-6
    fd = (pot.map_z(S, xs + h, FIGURE1) - pot.map_z(S, xs - h, FIGURE1)) / (2 * h)
    r = pot.rho(S, pot.map_z(S, xs, FIGURE1), FIGURE1)
    assert np.allclose(fd, r, rtol=1e-7)


def test_select_branch():
    p = PhysicalParams(1.0, 0.7, 2.0, 0.3, 1.4)
    lo, _ = pot.real_domain(M1, p)
    assert pot.select_branch(M1, np.linspace(lo + 0.1, lo + 3, 10), p) == "principal"
    assert pot.select_branch(S, [0.1, 1.0], FIGURE1) == "principal"
    z_lo = pot.map_z(M1, lo + 1.0, p, "lower")
    z_hi = pot.map_z(M1, lo + 1.0, p)
    assert z_lo > p.z0 > z_hi


def test_below_domain_rejected():
    p = PhysicalParams(1.0, 0.7, 2.0, 0.3, 1.4)
    lo, _ = pot.real_domain(M1, p)
    with pytest.raises(DomainError):
        pot.map_z(M1, lo - 0.5, p)


def test_origin_asymptote_converges_monotonically():
    xs = 10.0 ** -np.arange(2, 9)
    gap = np.abs(pot.eval_potential(S, xs, FIGURE1) * np.sqrt(xs) + math.sqrt(FIGURE1.sigma / 2) * FIGURE1.V0)
    assert np.all(np.diff(gap) < 0)
    assert gap[-1] < 1e-3


def test_tail_asymptote():
    xs = np.linspace(10 * FIGURE1.sigma, 40 * FIGURE1.sigma, 100)
    ratio = pot.eval_potential(S, xs, FIGURE1) / pot.asymptote_tail(FIGURE1, xs)
    assert np.max(np.abs(ratio - 1)) <= 0.01


def test_origin_ratio_at_one_hundredth():
    r = pot.eval_potential(S, 0.01, FIGURE1) / pot.asymptote_origin(FIGURE1, 0.01)
    assert 0.8 <= r <= 1.2
