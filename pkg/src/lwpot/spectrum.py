"""Bound states of the singular potential.

Eigenvalues are the roots on E < 0 of

    F(E) = 1 + (s0 - c)/(2c) 1F1(1+a; 1+c; s0) / 1F1(a; c; s0),

the condition that the decaying solution vanishes at the origin (z = 1).
F is handled as N/D with D = 1F1(a; c; s0), N = D + (s0 - c)/(2c) 1F1(1+a; 1+c; s0):
sign changes of N are roots, sign changes of D are poles.  Counts are
cross-checked against the zero-energy node theorem.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .closedform import bound_state_psi, chg_parameters, regular_zero_energy_coefficients, zero_energy_psi
from .errors import DomainError, ParameterError, VerificationError
from .oracle import ShootingConfig, count_nodes, numerov_integrate
from .potential import PhysicalParams, PotentialKind, eval_potential
from .specfun import kummer_m

log = logging.getLogger(__name__)

NODE_EXCLUDE = 1e-6  # nodes closer than this many sigma to the origin are the r = 0 zero
ZERO_ENERGY_XMAX = math.log(1e8)  # in units of sigma


class ScanResolutionWarning(UserWarning):
    pass


def _check_params(p: PhysicalParams) -> None:
    if p.z0 != 1.0 or p.V1 != -p.V0:
        raise ParameterError("spectrum needs the closed-form family: z0 = 1, V1 = -V0")


def spectrum_parts(E: float, p: PhysicalParams) -> tuple[float, float]:
    """(N, D) with F = N / D; both are entire in the parameters."""
    _check_params(p)
    if E >= 0:
        raise DomainError("spectrum function is defined for E < 0")
    t = chg_parameters(E, p)
    D = float(kummer_m(t.a, t.c, t.s0))
    N = D + (t.s0 - t.c) / (2.0 * t.c) * float(kummer_m(t.a + 1.0, t.c + 1.0, t.s0))
    return N, D


def spectrum_function(E: float, p: PhysicalParams) -> float:
    """F(E); returns +-inf exactly at a pole."""
    N, D = spectrum_parts(E, p)
    if D == 0:
        return math.copysign(math.inf, N)
    return N / D


@dataclass(frozen=True)
class ScanPolicy:
    """Energy scan: geometric in |E| from ``e_floor`` up to -ceiling_frac V0."""

    n_points: int = 2000
    e_floor: float | None = None
    ceiling_frac: float = 1e-8
    pole_threshold: float = 1e3
    max_refinements: int = 2

    def __post_init__(self):
        if self.n_points < 10:
            raise ParameterError("ScanPolicy.n_points must be >= 10")
        if self.e_floor is not None and self.e_floor >= 0:
            raise ParameterError("e_floor must be negative")
        if not 0 < self.ceiling_frac < 1:
            raise ParameterError("ceiling_frac must lie in (0, 1)")

    def floor(self, p: PhysicalParams) -> float:
        """Default floor: 50 times the larger of V0 and the -1/sqrt(x) head's energy scale."""
        if self.e_floor is not None:
            return self.e_floor
        A = math.sqrt(p.sigma / 2.0) * p.V0
        head = (p.k * A * A) ** (2.0 / 3.0) / p.k
        return -50.0 * max(p.V0, head)


@dataclass
class RootInfo:
    energy: float
    bracket: tuple[float, float]
    residual: float
    nodes: int


@dataclass
class SpectrumResult:
    energies: list[float]
    roots: list[RootInfo]
    exact_n: int
    bargmann: float
    calogero: float
    chadan: float
    zero_energy_nodes: int
    poles: list[tuple[float, float]] = field(default_factory=list)
    e_floor: float = math.nan
    floor_F: float = math.nan

    def to_dict(self) -> dict:
        return asdict(self)


def _scan_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """Increasing energies from lo to hi (both negative), geometric in |E|."""
    return -np.geomspace(-lo, -hi, n)


def _classify(p, e, N, D, depth=0):
    """Split a scan into root brackets and pole brackets, subdividing mixed cells."""
    roots, poles = [], []
    for i in range(len(e) - 1):
        root = np.sign(N[i]) != np.sign(N[i + 1])
        pole = np.sign(D[i]) != np.sign(D[i + 1])
        if not (root or pole):
            continue
        if root and pole:
            if depth >= 6:
                warnings.warn(
                    f"root and pole share the cell [{e[i]:.6g}, {e[i + 1]:.6g}] after refinement", ScanResolutionWarning
                )
                roots.append((float(e[i]), float(e[i + 1])))
                continue
            sub = np.linspace(e[i], e[i + 1], 9)
            parts = [spectrum_parts(x, p) for x in sub[1:-1]]
            sN = np.concatenate([[N[i]], [q[0] for q in parts], [N[i + 1]]])
            sD = np.concatenate([[D[i]], [q[1] for q in parts], [D[i + 1]]])
            r, q = _classify(p, sub, sN, sD, depth + 1)
            roots += r
            poles += q
            continue
        (roots if root else poles).append((float(e[i]), float(e[i + 1])))
    return roots, poles


def _node_grid(p: PhysicalParams, x_max: float, n: int = 1200) -> np.ndarray:
    lo = NODE_EXCLUDE * p.sigma
    return np.union1d(np.geomspace(lo, x_max, n), np.linspace(lo, x_max, n))


def eigenfunction_nodes(E: float, p: PhysicalParams) -> int:
    """Sign changes of the bound-state wavefunction on x > 1e-6 sigma."""
    kappa = math.sqrt(-2.0 * p.m * E) / p.hbar
    x_max = max(ZERO_ENERGY_XMAX * p.sigma, 10.0 * p.sigma + 40.0 / kappa)
    xs = _node_grid(p, x_max)
    return count_nodes(bound_state_psi(xs, E, p))


def count_nodes_zero_energy(p: PhysicalParams, path: str = "both") -> int:
    """Number of x > 0 zeros of the regular E = 0 solution (= number of bound states).

    ``path`` is "analytic" (closed form with psi(0) = 0), "oracle"
    (Numerov from the origin) or "both", which raises VerificationError when
    they disagree.
    """
    _check_params(p)
    if p.V0 < 0:
        raise DomainError("node count needs V0 >= 0")
    if path not in ("analytic", "oracle", "both"):
        raise ParameterError(f"unknown path {path!r}")
    if p.V0 == 0:
        return 0
    x_max = ZERO_ENERGY_XMAX * p.sigma
    counts = {}
    if path in ("analytic", "both"):
        coef = regular_zero_energy_coefficients(p)
        xs = _node_grid(p, x_max, 2000)
        counts["analytic"] = count_nodes(zero_energy_psi(xs, p, coef))
    if path in ("oracle", "both"):
        psi = numerov_integrate(0.0, p, ShootingConfig(x_max=x_max))
        counts["oracle"] = count_nodes(psi, x_exclude=NODE_EXCLUDE * p.sigma)
    if len(set(counts.values())) > 1:
        raise VerificationError(f"zero-energy node counts disagree: {counts}")
    return next(iter(counts.values()))


def _find_roots(p: PhysicalParams, scan: ScanPolicy, n_points: int):
    lo = scan.floor(p)
    hi = -scan.ceiling_frac * p.V0
    e = _scan_grid(lo, hi, n_points)
    parts = np.array([spectrum_parts(x, p) for x in e])
    roots, poles = _classify(p, e, parts[:, 0], parts[:, 1])
    found = []
    for a, b in roots:
        Ea = brentq(lambda x: spectrum_parts(x, p)[0], a, b, xtol=1e-300, rtol=1e-13, maxiter=200)
        F = spectrum_function(Ea, p)
        # classify on F itself too: a refined root with large |F| was a pole in disguise
        mid = spectrum_function(0.5 * (a + b), p)
        if abs(F) > 1e-6 and abs(mid) > scan.pole_threshold:
            poles.append((a, b))
            continue
        found.append(RootInfo(float(Ea), (a, b), abs(F), -1))
    return found, poles, lo


def find_bound_states(p: PhysicalParams, scan: ScanPolicy = ScanPolicy()) -> SpectrumResult:
    """All bound-state energies, verified by node counts.

    Each root's eigenfunction must have index - 1 nodes and the total must
    equal the zero-energy node count; on a mismatch the scan is refined
    (4x points) up to ``scan.max_refinements`` times before VerificationError.
    """
    _check_params(p)
    if p.V0 <= 0:
        raise DomainError("find_bound_states needs V0 > 0")
    n_zero = count_nodes_zero_energy(p)
    n_points = scan.n_points
    for attempt in range(scan.max_refinements + 1):
        roots, poles, floor = _find_roots(p, scan, n_points)
        if len(roots) == n_zero:
            break
        log.info("scan with %d points found %d roots, node theorem says %d", n_points, len(roots), n_zero)
        n_points *= 4
    else:
        raise VerificationError(f"spectrum scan found {len(roots)} roots but the zero-energy solution has {n_zero} nodes")
    for k, r in enumerate(roots):
        r.nodes = eigenfunction_nodes(r.energy, p)
        if r.nodes != k:
            raise VerificationError(f"eigenfunction {k} at E = {r.energy!r} has {r.nodes} nodes, expected {k}")
    return SpectrumResult(
        energies=[r.energy for r in roots],
        roots=roots,
        exact_n=len(roots),
        bargmann=bargmann_bound(p),
        calogero=calogero_bound(p),
        chadan=chadan_estimate(p),
        zero_energy_nodes=n_zero,
        poles=poles,
        e_floor=floor,
        floor_F=spectrum_function(floor, p),
    )


def _require_nonnegative(p: PhysicalParams) -> None:
    if p.V0 < 0:
        raise DomainError("bound-state estimates need V0 >= 0")


def bargmann_bound(p: PhysicalParams) -> float:
    """Closed-form Bargmann integral m sigma^2 V0 / hbar^2."""
    _require_nonnegative(p)
    return p.m * p.sigma**2 * p.V0 / p.hbar**2


def bargmann_integral(p: PhysicalParams) -> float:
    """(2m/hbar^2) * integral of x |V(x)| over x > 0, by adaptive quadrature."""
    _check_params(p)
    _require_nonnegative(p)
    if p.V0 == 0:
        return 0.0

    def f(x):
        return x * abs(eval_potential(PotentialKind.SINGULAR, x, p))

    head, _ = quad(f, 0.0, p.sigma, epsabs=0.0, epsrel=1e-12, limit=200)
    tail, _ = quad(f, p.sigma, math.inf, epsabs=0.0, epsrel=1e-12, limit=200)
    return p.k * (head + tail)


def calogero_bound(p: PhysicalParams) -> float:
    """sqrt(2 m sigma^2 V0) / hbar."""
    _require_nonnegative(p)
    return math.sqrt(2.0 * p.m * p.sigma**2 * p.V0) / p.hbar


def chadan_estimate(p: PhysicalParams) -> float:
    """Half the Calogero value; reported as an estimate, not a bound."""
    return calogero_bound(p) / 2.0
