"""Exact solutions of the Schroedinger equation for the singular potential.

For E != 0::

    psi = z^(c/2) e^(-c z/2) du/dz,   u = e^(z (c - s0)/2) [C1 1F1(a; c; s0 z) + C2 U(a; c; s0 z)]
    a = -(c - s0)^2 / (4 s0),  c = +-sqrt(-8 m sigma^2 E)/hbar,  s0 = +-sqrt(8 m sigma^2 (V0 - E))/hbar

with z = -W(-exp(-(x - x0)/sigma)).  For E = 0::

    psi = d/dz [ z e^(-s0 z/2) (C1 1F1(1 + a; 2; s0 z) + C2 U(1 + a; 2; s0 z)) ],  a = -s0/4

All z-derivatives are analytic: 1F1' = (a/c) 1F1(a+1; c+1), U' = -a U(a+1; c+1),
and second derivatives come from Kummer's equation y Y'' + (c - y) Y' - a Y = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, ParameterError
from .oracle import GridFunction
from .potential import PhysicalParams, PotentialKind, map_z, rho
from .specfun import DEFAULT_POLICY, ChgEvalPolicy, kummer_m, kummer_m_prime, tricomi_u_with_derivative


@dataclass(frozen=True)
class SignPair:
    """Signs chosen for the square roots defining c and s0."""

    sign_c: int = 1
    sign_s0: int = 1

    def __post_init__(self):
        if self.sign_c not in (1, -1) or self.sign_s0 not in (1, -1):
            raise ParameterError("SignPair entries must be +1 or -1")

    @classmethod
    def parse(cls, text: str) -> "SignPair":
        if len(text) != 2 or set(text) - {"+", "-"}:
            raise ParameterError(f"signs must look like '++', '+-', '-+' or '--', got {text!r}")
        return cls(1 if text[0] == "+" else -1, 1 if text[1] == "+" else -1)

    def __str__(self):
        return ("+" if self.sign_c > 0 else "-") + ("+" if self.sign_s0 > 0 else "-")


PLUS = SignPair()


@dataclass(frozen=True)
class ChgTriple:
    a: float
    c: float
    s0: float
    signs: SignPair = PLUS


@dataclass(frozen=True)
class SolutionCoefficients:
    C1: float = 1.0
    C2: float = 0.0

    @property
    def trivial(self) -> bool:
        return self.C1 == 0 and self.C2 == 0


def _require_closed_form(p: PhysicalParams) -> None:
    if p.z0 != 1.0 or p.V1 != -p.V0:
        raise ParameterError("closed form needs z0 = 1 and V1 = -V0 (any x0)")


def chg_parameters(E: float, p: PhysicalParams, signs: SignPair = PLUS) -> ChgTriple:
    """Confluent hypergeometric parameters (a, c, s0) at energy E."""
    if E == 0:
        raise ParameterError("E = 0 makes c vanish; use zero_energy_psi")
    if E > 0:
        raise DomainError("real-parameter mode needs E < 0 (c is imaginary for E > 0)")
    if E >= p.V0:
        raise DomainError("real-parameter mode needs E < V0")
    scale = 8.0 * p.m * p.sigma**2 / p.hbar**2
    c = signs.sign_c * math.sqrt(-scale * E)
    s0 = signs.sign_s0 * math.sqrt(scale * (p.V0 - E))
    a = -((c - s0) ** 2) / (4.0 * s0)
    return ChgTriple(a, c, s0, signs)


def _z_and_rho(x, p: PhysicalParams):
    """z(x) = -W(-exp(-(x - x0)/sigma)) and dz/dx for the z0 = 1 family."""
    kind = PotentialKind.SINGULAR if p.is_singular else PotentialKind.M1_VARIANT
    z = np.atleast_1d(map_z(kind, x, p))
    with np.errstate(divide="ignore"):
        r = rho(kind, z, p)
    return z, r


def _chg_combo(a, c, y, coef: SolutionCoefficients, policy: ChgEvalPolicy):
    """Y = C1 M + C2 U at y, with Y' and Y'' (Kummer's equation)."""
    Y = np.zeros_like(y)
    dY = np.zeros_like(y)
    if coef.C1:
        Y = Y + coef.C1 * kummer_m(a, c, y, policy)
        dY = dY + coef.C1 * kummer_m_prime(a, c, y, policy)
    if coef.C2:
        if np.any(y <= 0):
            raise DomainError("U term needs s0 z > 0 (choose sign_s0 = + or C2 = 0)")
        u, du = tricomi_u_with_derivative(a, c, y, policy)
        Y = Y + coef.C2 * u
        dY = dY + coef.C2 * du
    d2Y = (a * Y - (c - y) * dY) / y
    return Y, dY, d2Y


def _general(x, E, p, coef, signs, policy):
    _require_closed_form(p)
    t = chg_parameters(E, p, signs)
    z, r = _z_and_rho(x, p)
    a, c, s0 = t.a, t.c, t.s0
    y = s0 * z
    Y, dY, d2Y = _chg_combo(a, c, y, coef, policy)
    kk = 0.5 * (c - s0)
    # u = e^{kk z} Y(s0 z); the e^{kk z} factor is folded into the prefactor below
    du = kk * Y + s0 * dY
    d2u = kk * kk * Y + 2.0 * kk * s0 * dY + s0 * s0 * d2Y
    pre = z ** (c / 2.0) * np.exp(-0.5 * s0 * z)
    psi = pre * du
    dpsi_dz = pre * ((0.5 * c / z - 0.5 * c) * du + d2u)
    with np.errstate(invalid="ignore"):
        return z, psi, dpsi_dz * r


def general_solution_psi(
    x,
    E: float,
    p: PhysicalParams,
    coef: SolutionCoefficients = SolutionCoefficients(),
    signs: SignPair = PLUS,
    policy: ChgEvalPolicy = DEFAULT_POLICY,
):
    """General solution psi(x) for E != 0 (scalar or array x > x0 + sigma)."""
    scalar = np.ndim(x) == 0
    if coef.trivial:
        return 0.0 if scalar else np.zeros(np.shape(x))
    _, psi, _ = _general(x, E, p, coef, signs, policy)
    return float(psi[0]) if scalar else psi


def general_solution_grid(
    xs,
    E: float,
    p: PhysicalParams,
    coef: SolutionCoefficients = SolutionCoefficients(),
    signs: SignPair = PLUS,
    policy: ChgEvalPolicy = DEFAULT_POLICY,
) -> GridFunction:
    """psi and dpsi/dx on an increasing x grid; ``meta["z"]`` holds z(x)."""
    xs = np.asarray(xs, dtype=float)
    if coef.trivial:
        return GridFunction(xs, np.zeros_like(xs), np.zeros_like(xs), meta={"z": _z_and_rho(xs, p)[0]})
    z, psi, dpsi = _general(xs, E, p, coef, signs, policy)
    return GridFunction(xs, psi, dpsi, meta={"z": z})


def bound_state_psi(x, E: float, p: PhysicalParams, policy: ChgEvalPolicy = DEFAULT_POLICY):
    """Unnormalized bound-state wavefunction (plus signs, C2 = 0).

    psi_B = z^(c/2) e^(-s0 z/2) [ (c - s0)/2 1F1(a; c; s0 z) + (a s0/c) 1F1(a+1; c+1; s0 z) ]
    """
    _require_closed_form(p)
    scalar = np.ndim(x) == 0
    t = chg_parameters(E, p, PLUS)
    z, _ = _z_and_rho(x, p)
    y = t.s0 * z
    bracket = 0.5 * (t.c - t.s0) * kummer_m(t.a, t.c, y, policy) + (t.a * t.s0 / t.c) * kummer_m(
        t.a + 1, t.c + 1, y, policy
    )
    psi = z ** (t.c / 2.0) * np.exp(-0.5 * t.s0 * z) * bracket
    return float(psi[0]) if scalar else psi


def bound_state_norm(E: float, p: PhysicalParams) -> float:
    """Integral of psi_B^2 over the half axis (adaptive quadrature).

    Near the origin psi_B is regular (psi ~ x at an eigenvalue); the tail
    decays like exp(-2 kappa x).  Divide psi_B by sqrt of this to normalize.
    """
    _require_closed_form(p)
    x_start = p.x0 + p.sigma

    def f(x):
        if x <= x_start:
            return 0.0
        return bound_state_psi(x, E, p) ** 2

    kappa = math.sqrt(-2.0 * p.m * E) / p.hbar
    split = x_start + p.sigma
    far = split + 60.0 / kappa + 10.0 * p.sigma
    head, _ = quad(f, x_start, split, limit=200, epsabs=0, epsrel=1e-12)
    tail, _ = quad(f, split, far, limit=400, epsabs=0, epsrel=1e-12)
    return head + tail


def zero_energy_parameters(p: PhysicalParams) -> tuple[float, float]:
    """(a, s0) for the E = 0 solution: s0 = sqrt(8 m sigma^2 V0)/hbar, a = -s0/4."""
    if p.V0 < 0:
        raise DomainError("zero-energy solution needs V0 >= 0 for real s0")
    s0 = math.sqrt(8.0 * p.m * p.sigma**2 * p.V0) / p.hbar
    return -s0 / 4.0, s0


def _zero_energy(x, p, coef, policy):
    _require_closed_form(p)
    a, s0 = zero_energy_parameters(p)
    z, r = _z_and_rho(x, p)
    b = 1.0 + a
    if s0 == 0:
        if coef.C2:
            raise DomainError("U(1; 2; 0) diverges: V0 = 0 admits only the C1 solution")
        psi = np.full_like(z, coef.C1)
        return z, psi, np.zeros_like(z)
    y = s0 * z
    Y, dY, _ = _chg_combo(b, 2.0, y, coef, policy)
    # psi = d/dz[z e^{-y/2} Y] = e^{-y/2} H(y),  H = (1 - y/2) Y + y Y'
    H = (1.0 - 0.5 * y) * Y + y * dY
    dH = (b - 0.5) * Y + 0.5 * y * dY
    e = np.exp(-0.5 * y)
    psi = e * H
    dpsi_dz = s0 * e * (dH - 0.5 * H)
    with np.errstate(invalid="ignore"):  # rho is infinite at the origin
        return z, psi, dpsi_dz * r


def zero_energy_psi(
    x,
    p: PhysicalParams,
    coef: SolutionCoefficients = SolutionCoefficients(),
    policy: ChgEvalPolicy = DEFAULT_POLICY,
):
    """General E = 0 solution psi(x)."""
    scalar = np.ndim(x) == 0
    if coef.trivial:
        return 0.0 if scalar else np.zeros(np.shape(x))
    _, psi, _ = _zero_energy(x, p, coef, policy)
    return float(psi[0]) if scalar else psi


def zero_energy_grid(
    xs, p: PhysicalParams, coef: SolutionCoefficients = SolutionCoefficients(), policy: ChgEvalPolicy = DEFAULT_POLICY
) -> GridFunction:
    xs = np.asarray(xs, dtype=float)
    z, psi, dpsi = _zero_energy(xs, p, coef, policy)
    return GridFunction(xs, psi, dpsi, meta={"z": z})


def regular_zero_energy_coefficients(p: PhysicalParams, policy: ChgEvalPolicy = DEFAULT_POLICY) -> SolutionCoefficients:
    """(C1, C2) making the E = 0 solution vanish at the origin (z = 1)."""
    x_origin = p.x0 + p.sigma
    h1 = zero_energy_psi(x_origin, p, SolutionCoefficients(1.0, 0.0), policy)
    if p.V0 == 0:
        raise DomainError("V0 = 0: the regular zero-energy solution is psi = x, not of this form")
    h2 = zero_energy_psi(x_origin, p, SolutionCoefficients(0.0, 1.0), policy)
    norm = math.hypot(h1, h2)
    return SolutionCoefficients(h2 / norm, -h1 / norm)
