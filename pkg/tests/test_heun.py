import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lwpot import heun, oracle
from lwpot.closedform import SignPair
from lwpot.errors import DomainError, ParameterError, SingularityError
from lwpot.oracle import GridFunction
from lwpot.potential import FIGURE2, PhysicalParams, PotentialKind, eval_potential, real_domain
from lwpot.verify import figure2_deformed_residual, pipeline_gap, reduction_worst

S, M1, M2 = PotentialKind.SINGULAR, PotentialKind.M1_VARIANT, PotentialKind.M2_VARIANT


def test_figure2_parameters_at_zero_energy():
    d = heun.dch_params_for(S, 0.0, FIGURE2)
    s0 = math.sqrt(8 * 9 * 3)
    assert d.gamma == 0.0
    assert d.epsilon == pytest.approx(s0, rel=1e-15)
    assert d.delta == pytest.approx(1 - s0, rel=1e-15)
    # alpha = 2 m sigma^2 z0 V1 / hbar^2 with V1 = -V0
    assert d.alpha == pytest.approx(-54.0, rel=1e-15)
    assert d.z_apparent == 1.0


def test_parameter_errors():
    with pytest.raises(ParameterError):
        heun.dch_params_for(M1, -1.0, PhysicalParams(1.0, 1.0, V1=0.0))
    d = heun.dch_params_for(M1, -1.0, PhysicalParams(1.0, 1.0, V1=0.0), allow_degenerate=True)
    with pytest.raises(ParameterError):
        d.z_apparent
    with pytest.raises(DomainError):
        heun.dch_params_for(M1, 5.0, PhysicalParams(1.0, 1.0, V1=2.0))
    with pytest.raises(ParameterError):
        heun.dch_params_for(S, -1.0, PhysicalParams(1.0, 1.0, V1=2.0))


def test_solve_dche_grid_checks():
    d = heun.DchParams(0.0, 1.0, 1.0, 1.0, 1.0)
    with pytest.raises(SingularityError):
        heun.solve_dche(d, 0.5, 1.0, 0.0, [-1.0, 1.0])
    with pytest.raises(ParameterError):
        heun.solve_dche(d, 0.5, 1.0, 0.0, [1.0, 0.5])


def test_dche_first_order_case():
    # alpha = q = gamma = 0: u'' + (delta/z + eps) u' = 0, so u' = C z^-delta e^-eps z
    d = heun.DchParams(0.0, 1.5, 2.0, 0.0, 0.0)
    z = np.linspace(0.1, 3, 300)
    sol = heun.solve_dche(d, 1.0, 0.3, math.exp(-2.0), z)
    exact = z**-1.5 * np.exp(-2.0 * z)
    assert np.max(np.abs(sol.derivative / exact - 1)) < 1e-8
    assert sol.meta["residual"] < 1e-8


def test_dche_residual_against_ode():
    d = heun.DchParams(0.4, -1.2, 0.7, 2.0, -1.0)
    z = np.linspace(0.3, 4, 400)
    sol = heun.solve_dche(d, 1.0, 1.0, 0.5, z)
    r = sol.second_derivative + d.P(z) * sol.derivative + d.Q(z) * sol.values
    assert np.max(np.abs(r)) <= 1e-12 * np.max(np.abs(sol.second_derivative))


def test_deformed_equation_and_negative_control():
    r, dche = figure2_deformed_residual()
    assert r <= 1e-6 and dche <= 1e-8
    d = heun.dch_params_for(S, 0.0, FIGURE2)
    z = np.linspace(0.01, 0.99, 500)
    assert heun.deformed_residual(d, GridFunction(z, np.exp(z), np.exp(z), np.exp(z))) > 1e-3


def test_deformed_residual_refuses_apparent_point():
    d = heun.dch_params_for(S, 0.0, FIGURE2)
    z = np.linspace(0.5, 1.5, 11)
    with pytest.raises(SingularityError):
        heun.deformed_residual(d, GridFunction(z, z, z, z))


def test_apparent_singularity_is_regular():
    p = PhysicalParams(1.0, 1.0, -1.0, 0.0, 1.0)
    d = heun.dch_params_for(M1, -0.5, p)
    z = np.linspace(0.5, 1.5, 1001)
    sol = heun.solve_dche(d, 0.7, 1.0, -0.4, z[np.abs(z - 1) > 1e-9])
    parts = [sol.xs < 1, sol.xs > 1]
    left, right = (
        GridFunction(sol.xs[m], sol.values[m], sol.derivative[m], sol.second_derivative[m]) for m in parts
    )
    dw, dwp = heun.apparent_singularity_check(d, left, right)
    assert dw < 1e-6 and dwp < 1e-6
    # w' itself vanishes at a regular apparent point
    w = heun.deformed_w(d, sol)
    i = np.argmin(np.abs(w.xs - 1))
    assert abs(w.derivative[i]) < 1e-2 * np.max(np.abs(w.derivative))


def test_eq_roots_and_polynomial():
    assert heun.eq10_roots() == (-1.0, 3.0)
    v = heun.potential_polynomial(S, FIGURE2)
    assert v.shape == (7,)


@pytest.mark.parametrize("kind", [M1, M2])
def test_reduction_random(kind):
    assert reduction_worst(kind, 10) <= 1e-8


@given(
    V0=st.floats(-4, 4),
    V1=st.floats(-4, 4).filter(lambda v: abs(v) > 1e-3),
    sigma=st.floats(0.3, 3),
    z0=st.floats(0.3, 3),
    dE=st.floats(0.0, 4),
    kind=st.sampled_from([M1, M2]),
)
def test_reduction_property(V0, V1, sigma, z0, dE, kind):
    p = PhysicalParams(V0, sigma, V1, 0.0, z0)
    zz = z0 * np.linspace(0.05, 3, 201)
    zz = zz[np.abs(zz - z0) > 0.02 * z0]
    w = heun.verify_reduction(kind, p, V0 - dE, zz)
    assert w.residual_norm <= 1e-8
    # the limit coefficient at z0 is -3/4, the exponent pair (-1, 3) of the apparent point
    assert w.limit_coefficient == pytest.approx(-0.75, abs=1e-5)


def test_alternative_exponents_fail():
    p = PhysicalParams(1.0, 1.0, -2.0, 0.0, 1.0)
    zz = np.linspace(0.1, 3, 200)
    zz = zz[np.abs(zz - 1) > 0.02]
    w = heun.verify_reduction(M1, p, -0.5, zz)
    assert all(r > 1e-3 for r in w.alternative_residuals.values())


def test_pipeline_matches_closed_form():
    assert pipeline_gap(energies=(-2.5, -0.3)) <= 1e-8


def test_constant_potential_through_alpha_zero_branch():
    # V1 = 0: V = V0 everywhere, psi = exp(-kappa x)
    p = PhysicalParams(1.0, 1.0, 0.0, 0.0, 1.0)
    E = -0.5
    kappa = math.sqrt(2 * (p.V0 - E))
    lo, _ = real_domain(M2, p)
    xs = np.linspace(lo + 0.5, lo + 4, 50)
    for sign in (1, -1):
        g = heun.assemble_psi(M2, E, p, xs, math.exp(-sign * kappa * xs[0]), None, xs[0], SignPair(1, sign))
        assert np.allclose(g.values, np.exp(-sign * kappa * xs), rtol=1e-12)


@pytest.mark.parametrize(
    "kind,p",
    [(M1, PhysicalParams(0.5, 0.8, -1.5, 0.2, 1.3)), (M2, PhysicalParams(0.5, 0.8, -1.5, 0.2, 1.3))],
)
def test_general_variants_solve_schroedinger(kind, p):
    lo, _ = real_domain(kind, p)
    xs = np.linspace(lo + 0.3, lo + 3.0, 4001)
    E = -0.7
    g = heun.assemble_psi(kind, E, p, xs, 1.0, -0.5, xs[0])
    r = oracle.residual_report(g, E, p, potential=lambda x: eval_potential(kind, x, p)).residual
    assert r <= 1e-7
