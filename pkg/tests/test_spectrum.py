import math

import numpy as np
import pytest

from lwpot import oracle, spectrum
from lwpot.closedform import bound_state_psi
from lwpot.errors import DomainError, ParameterError
from lwpot.potential import FIGURE2, PhysicalParams

# frozen after cross-checking against Numerov shooting (agreement ~1e-11 relative)
GOLDEN = [-1.3578613764532903, -0.3115400846425677, -0.04541523858468211]


@pytest.fixture(scope="module")
def fig2():
    return spectrum.find_bound_states(FIGURE2)


def test_three_bound_states(fig2):
    assert fig2.exact_n == 3 == fig2.zero_energy_nodes
    assert [r.nodes for r in fig2.roots] == [0, 1, 2]


def test_golden_eigenvalues(fig2):
    assert fig2.energies == pytest.approx(GOLDEN, rel=1e-10)


def test_shooting_agrees(fig2):
    shoot = oracle.shooting_eigenvalues(FIGURE2)
    assert np.max(np.abs(np.array(shoot) / np.array(fig2.energies) - 1)) <= 1e-9


def test_roots_are_zeros_of_psi_at_origin(fig2):
    for E in fig2.energies:
        assert abs(spectrum.spectrum_function(E, FIGURE2)) < 1e-10
        assert abs(bound_state_psi(1e-13, E, FIGURE2)) < 1e-9 * abs(bound_state_psi(1.0, E, FIGURE2))


def test_poles_separate_roots(fig2):
    # D = 1F1(a; c; s0) changes sign between consecutive eigenvalues
    assert len(fig2.poles) >= 2
    for (lo, hi) in fig2.poles:
        assert spectrum.spectrum_parts(lo, FIGURE2)[1] * spectrum.spectrum_parts(hi, FIGURE2)[1] <= 0


def test_f_limit():
    assert abs(spectrum.spectrum_function(-1e4 * FIGURE2.V0, FIGURE2) - 1) < 0.05


def test_estimates():
    assert spectrum.bargmann_bound(FIGURE2) == 27.0
    assert spectrum.bargmann_integral(FIGURE2) == pytest.approx(27.0, rel=1e-5)
    assert spectrum.calogero_bound(FIGURE2) == pytest.approx(math.sqrt(54), abs=1e-12)
    assert f"{spectrum.calogero_bound(FIGURE2):.3f}" == "7.348"
    assert f"{spectrum.chadan_estimate(FIGURE2):.3f}" == "3.674"


def test_estimate_chain(fig2):
    chain = [fig2.exact_n, fig2.chadan, fig2.calogero, fig2.bargmann]
    assert chain == sorted(chain)


@pytest.mark.parametrize("V0,sigma", [(0.5, 0.5), (1.0, 1.0), (3.0, 3.0), (10.0, 0.5), (10.0, 3.0)])
def test_node_theorem_both_paths(V0, sigma):
    p = PhysicalParams.singular(V0, sigma)
    a = spectrum.count_nodes_zero_energy(p, "analytic")
    o = spectrum.count_nodes_zero_energy(p, "oracle")
    assert a == o
    assert len(oracle.shooting_eigenvalues(p)) == a


def test_count_matches_spectrum_small_well():
    p = PhysicalParams.singular(0.5, 3.0)
    r = spectrum.find_bound_states(p)
    assert r.exact_n == r.zero_energy_nodes == len(oracle.shooting_eigenvalues(p))


def test_domain_errors():
    with pytest.raises(DomainError):
        spectrum.spectrum_function(0.5, FIGURE2)
    with pytest.raises(ParameterError):
        spectrum.spectrum_function(-1.0, PhysicalParams(1.0, 1.0, V1=2.0))
    with pytest.raises(DomainError):
        spectrum.find_bound_states(PhysicalParams.singular(-1.0, 1.0))
    with pytest.raises(DomainError):
        spectrum.bargmann_bound(PhysicalParams.singular(-1.0, 1.0))
    assert spectrum.count_nodes_zero_energy(PhysicalParams.singular(0.0, 1.0)) == 0
    with pytest.raises(ParameterError):
        spectrum.count_nodes_zero_energy(FIGURE2, "guess")


def test_scan_policy_validation():
    with pytest.raises(ParameterError):
        spectrum.ScanPolicy(n_points=5)
    with pytest.raises(ParameterError):
        spectrum.ScanPolicy(e_floor=1.0)
    with pytest.raises(ParameterError):
        spectrum.ScanPolicy(ceiling_frac=2.0)


def test_result_serializes(fig2):
    d = fig2.to_dict()
    assert d["exact_n"] == 3 and len(d["roots"]) == 3
