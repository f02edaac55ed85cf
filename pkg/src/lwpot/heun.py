"""Double-confluent Heun machinery behind the Lambert-W potentials.

The five-parameter DCHE

    u'' + (gamma/z^2 + delta/z + eps) u' + (alpha z - q)/z^2 u = 0

is turned by w = z^delta e^(eps z - gamma/z) u' into the deformed equation

    w'' - (gamma/z^2 + (delta-2)/z + eps + 1/(z-z0)) w' + alpha (z-z0)/z^2 w = 0,   z0 = q/alpha,

and psi(x) = phi(z) w(z) with z = z(x) solves the Schroedinger equation for
the potentials of :mod:`lwpot.potential`.  Everything here is numerical: the
DCHE is integrated with an 8th-order embedded Runge-Kutta pair and all
derivatives of w are carried analytically from (u, u', u'').
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .closedform import PLUS, SignPair
from .errors import ConvergenceError, DomainError, ParameterError, SingularityError
from .oracle import GridFunction
from .potential import PhysicalParams, PotentialKind, map_z, potential_of_z, rho, select_branch

RTOL = 1e-12


@dataclass(frozen=True)
class DchParams:
    gamma: float
    delta: float
    epsilon: float
    alpha: float
    q: float

    @property
    def z_apparent(self) -> float:
        """Location q/alpha of the apparent singularity of the deformed equation."""
        if self.alpha == 0:
            raise ParameterError("alpha = 0: the derivative map and the apparent singularity are undefined")
        return self.q / self.alpha

    # coefficient functions of the DCHE: u'' + P u' + Q u = 0
    def P(self, z):
        return self.gamma / z**2 + self.delta / z + self.epsilon

    def dP(self, z):
        return -2.0 * self.gamma / z**3 - self.delta / z**2

    def Q(self, z):
        return (self.alpha * z - self.q) / z**2

    def dQ(self, z):
        return (2.0 * self.q - self.alpha * z) / z**3


def _as_variant(kind: PotentialKind, p: PhysicalParams) -> PotentialKind:
    if kind is PotentialKind.SINGULAR:
        if not p.is_singular:
            raise ParameterError("singular kind requires z0 = 1, x0 = -sigma and V1 = -V0")
        return PotentialKind.M1_VARIANT
    return kind


def dch_params_for(
    kind: PotentialKind,
    E: float,
    p: PhysicalParams,
    signs: SignPair = PLUS,
    allow_degenerate: bool = False,
) -> DchParams:
    """DCHE parameters solving the Schroedinger problem at energy E.

    The singular kind is the m1 variant with z0 = 1.  ``signs.sign_s0``
    selects the branch of the square root; ``sign_c`` plays no role here.
    """
    kind = _as_variant(kind, p)
    radicand = 8.0 * p.m * p.sigma**2 * (p.V0 - E) / p.hbar**2
    if radicand < 0:
        raise DomainError("E > V0 makes the DCHE parameters complex; only real mode is implemented")
    root = signs.sign_s0 * math.sqrt(radicand)
    scale = 2.0 * p.m * p.sigma**2 / p.hbar**2
    if kind is PotentialKind.M2_VARIANT:
        delta = root
        alpha = scale * p.V1 / p.z0
        out = DchParams(gamma=-delta * p.z0, delta=delta, epsilon=0.0, alpha=alpha, q=alpha * p.z0)
    else:
        alpha = scale * p.z0 * p.V1
        out = DchParams(gamma=0.0, delta=1.0 - root * p.z0, epsilon=root, alpha=alpha, q=alpha * p.z0)
    if out.alpha == 0 and not allow_degenerate:
        raise ParameterError("V1 = 0 gives alpha = 0, where the derivative map is undefined")
    return out


def _check_grid(z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if z.ndim != 1 or len(z) == 0:
        raise ParameterError("z grid must be a non-empty 1-D array")
    if np.any(np.diff(z) <= 0):
        raise ParameterError("z grid must be strictly increasing")
    if z[0] <= 0 <= z[-1]:
        raise SingularityError("z grid spans the irregular singularity z = 0")
    return z


def solve_dche(params: DchParams, z_start: float, u0: float, u0p: float, z_grid) -> GridFunction:
    """Integrate the DCHE from (z_start, u0, u0p) to every point of ``z_grid``.

    Returns u on the grid with u' as ``derivative`` and u'' (from the
    equation) as ``second_derivative``.  ``meta["residual"]`` compares u''
    with a finite-difference derivative of the dense-output u' and is
    normalized by the largest term of the equation.
    """
    z = _check_grid(z_grid)
    if z_start == 0 or (z_start > 0) != (z[0] > 0):
        raise SingularityError("z_start must lie on the same side of z = 0 as the grid")

    def rhs(t, y):
        return [y[1], -params.P(t) * y[1] - params.Q(t) * y[0]]

    u = np.empty_like(z)
    up = np.empty_like(z)
    dense = []
    lo, hi = min(z[0], z_start), max(z[-1], z_start)
    pad = 1e-3 * min(abs(lo), abs(hi))
    for end, mask in ((hi + pad, z >= z_start), (lo - pad, z < z_start)):
        if end == z_start:
            continue
        sol = solve_ivp(rhs, (z_start, end), [u0, u0p], method="DOP853", rtol=RTOL, atol=0.0, dense_output=True)
        if sol.status != 0:
            raise ConvergenceError(f"DCHE integration failed: {sol.message}")
        if np.any(mask):
            y = sol.sol(z[mask])
            u[mask], up[mask] = y[0], y[1]
        dense.append((min(z_start, end), max(z_start, end), sol.sol))
    upp = -params.P(z) * up - params.Q(z) * u

    # independent check: d/dz of the dense u' by a local 5-point stencil
    h = 1e-3 * np.minimum(np.abs(z), np.min(np.abs(np.diff(z))) if len(z) > 1 else np.abs(z))
    fd = np.empty_like(z)
    for a, b, f in dense:
        sel = (z >= a) & (z <= b)
        if not np.any(sel):
            continue
        zz, hh = z[sel], h[sel]
        d = (f(zz - 2 * hh)[1] - 8 * f(zz - hh)[1] + 8 * f(zz + hh)[1] - f(zz + 2 * hh)[1]) / (12 * hh)
        fd[sel] = d
    scale = np.max(np.maximum.reduce([np.abs(upp), np.abs(params.P(z) * up), np.abs(params.Q(z) * u)]))
    residual = float(np.max(np.abs(fd - upp)) / scale) if scale > 0 else 0.0
    return GridFunction(z, u, up, upp, meta={"residual": residual, "params": params})


def _weight(params: DchParams, z):
    """e^S with S = delta ln|z| + eps z - gamma/z, so that S' = P."""
    return np.exp(params.delta * np.log(np.abs(z)) + params.epsilon * z - params.gamma / z)


def derivative_map(params: DchParams, z, u_prime):
    """w = z^delta e^(eps z - gamma/z) u'."""
    z = np.asarray(z, dtype=float)
    if np.any(z == 0):
        raise SingularityError("derivative map is singular at z = 0")
    out = _weight(params, z) * np.asarray(u_prime, dtype=float)
    return float(out) if np.ndim(out) == 0 else out


def deformed_w(params: DchParams, sol: GridFunction) -> GridFunction:
    """w, w', w'' on the DCHE grid, built from (u, u', u'') without differencing."""
    z, u, up, upp = sol.xs, sol.values, sol.derivative, sol.second_derivative
    P, Q = params.P(z), params.Q(z)
    uppp = -params.dP(z) * up - P * upp - params.dQ(z) * u - Q * up
    e = _weight(params, z)
    w = e * up
    wp = e * (P * up + upp)
    wpp = e * ((params.dP(z) + P * P) * up + 2.0 * P * upp + uppp)
    return GridFunction(z, w, wp, wpp, meta={"params": params})


def deformed_coefficients(params: DchParams, z):
    """(f, g) with the deformed equation written as w'' + f w' + g w = 0."""
    z0 = params.z_apparent
    f = -(params.gamma / z**2 + (params.delta - 2.0) / z + params.epsilon + 1.0 / (z - z0))
    g = params.alpha * (z - z0) / z**2
    return f, g


def _check_proximity(z, points):
    step = np.min(np.diff(z)) if len(z) > 1 else 0.0
    for pt, name in points:
        if np.min(np.abs(z - pt)) < 0.999 * step or np.any(z == pt):
            raise SingularityError(f"grid comes within one step of {name} = {pt:g}")


def deformed_residual(params: DchParams, w: GridFunction) -> float:
    """Max residual of the deformed equation, normalized by its largest term."""
    if w.derivative is None or w.second_derivative is None:
        raise ParameterError("w must carry its first and second derivatives")
    z = np.asarray(w.xs)
    _check_proximity(z, [(0.0, "z"), (params.z_apparent, "q/alpha")])
    f, g = deformed_coefficients(params, z)
    terms = [w.second_derivative, f * w.derivative, g * w.values]
    scale = np.max(np.maximum.reduce([np.abs(t) for t in terms]))
    if scale == 0:
        return 0.0
    return float(np.max(np.abs(terms[0] + terms[1] + terms[2])) / scale)


def _phi_exponent(kind: PotentialKind, params: DchParams) -> float:
    return -(kind.m1 + params.delta - 2.0) / 2.0


def prefactor(kind: PotentialKind, params: DchParams, z, p: PhysicalParams | None = None):
    """phi(z) = z^(-(m1+delta-2)/2) e^(-(eps z - gamma/z)/2).

    The (z - z0) factor of the general pre-factor has exponent -(m2+1)/2,
    which vanishes for the admitted m2 = -1.
    """
    if p is not None:
        kind = _as_variant(kind, p)
    z = np.asarray(z, dtype=float)
    if np.any(z == 0):
        raise SingularityError("pre-factor is singular at z = 0")
    out = np.exp(_phi_exponent(kind, params) * np.log(np.abs(z)) - 0.5 * (params.epsilon * z - params.gamma / z))
    return float(out) if np.ndim(out) == 0 else out


def _prefactor_log_derivative(kind, params, z):
    return _phi_exponent(kind, params) / z - 0.5 * (params.epsilon + params.gamma / z**2)


def _kind_z0(kind: PotentialKind, p: PhysicalParams) -> float:
    return 1.0 if kind is PotentialKind.SINGULAR else p.z0


def assemble_psi(
    kind: PotentialKind,
    E: float,
    p: PhysicalParams,
    x_grid,
    psi0: float,
    dpsi0: float | None,
    x_start: float,
    signs: SignPair = PLUS,
) -> GridFunction:
    """psi(x) = phi(z(x)) w(z(x)) from Cauchy data (psi0, dpsi0) at x_start.

    The Cauchy data for psi are converted into data (u, u') for the DCHE,
    which is integrated in z; w, phi and their derivatives then give psi
    and dpsi/dx.  With alpha = 0 (V1 = 0) w is constant and psi is
    proportional to phi; ``dpsi0`` must then be consistent or ``None``.
    """
    xs = np.asarray(x_grid, dtype=float)
    if np.any(np.diff(xs) <= 0):
        raise ParameterError("x grid must be strictly increasing")
    params = dch_params_for(kind, E, p, signs, allow_degenerate=True)
    variant = _as_variant(kind, p)
    branch = select_branch(kind, np.union1d(xs, [x_start]), p)
    z = np.atleast_1d(map_z(kind, xs, p, branch))
    zs = float(map_z(kind, x_start, p, branch))
    rho_x = rho(kind, z, p)
    rho_s = float(rho(kind, zs, p))
    phi_s = prefactor(variant, params, zs)
    lphi_s = _prefactor_log_derivative(variant, params, zs)
    phi = prefactor(variant, params, z)
    lphi = _prefactor_log_derivative(variant, params, z)

    w_s = psi0 / phi_s
    if params.alpha == 0:
        if dpsi0 is not None:
            expected = psi0 * lphi_s * rho_s
            if not math.isclose(dpsi0, expected, rel_tol=1e-8, abs_tol=1e-12 * abs(psi0)):
                raise ParameterError(
                    "alpha = 0: w is constant, so dpsi0 must equal psi0 phi'/phi dz/dx "
                    f"= {expected!r}"
                )
        psi = w_s * phi
        return GridFunction(xs, psi, psi * lphi * rho_x, meta={"z": z, "params": params, "branch": branch})

    if dpsi0 is None:
        raise ParameterError("dpsi0 is required when alpha != 0")
    if abs(zs - _kind_z0(kind, p)) <= 1e-12 * abs(zs):
        raise SingularityError("x_start maps onto the apparent singularity; pick another start point")
    wp_s = (dpsi0 / rho_s - lphi_s * psi0) / phi_s
    e_s = float(_weight(params, np.array([zs]))[0])
    up_s = w_s / e_s
    upp_s = wp_s / e_s - params.P(zs) * up_s
    u_s = -(upp_s + params.P(zs) * up_s) / params.Q(zs)

    order = np.argsort(z)
    z_sorted = z[order]
    if np.any(np.diff(z_sorted) <= 0):
        raise DomainError("z(x) is not strictly monotone on this grid")
    sol = solve_dche(params, zs, u_s, up_s, z_sorted)
    w = deformed_w(params, sol)
    inv = np.empty_like(order)
    inv[order] = np.arange(len(order))
    wv, wd = w.values[inv], w.derivative[inv]
    psi = phi * wv
    dpsi = (lphi * phi * wv + phi * wd) * rho_x
    return GridFunction(
        xs, psi, dpsi, meta={"z": z, "params": params, "branch": branch, "dche_residual": sol.meta["residual"]}
    )


@dataclass
class ReductionWitness:
    """Numerical evidence that the chosen z(x), phi and V reduce the Schroedinger equation."""

    m1: float
    m2: float
    v: tuple
    sigma: float
    grid: np.ndarray
    residual_norm: float
    eq10_roots: tuple = ()
    limit_coefficient: float = float("nan")
    alternative_residuals: dict = field(default_factory=dict)


def eq10_roots() -> tuple[float, float]:
    """Roots of -3/4 = m/2 - m^2/4, i.e. m^2 - 2m - 3 = 0, by the quadratic formula."""
    a, b, c = 1.0, -2.0, -3.0
    disc = math.sqrt(b * b - 4 * a * c)
    return ((-b - disc) / (2 * a), (-b + disc) / (2 * a))


def potential_polynomial(kind: PotentialKind, p: PhysicalParams) -> np.ndarray:
    """v0..v6 with V = rho^2 (sum v_i z^i) / (z^4 (z - z0)^2), lowest order first."""
    kind = _as_variant(kind, p)
    P = np.polynomial.Polynomial
    zz = P([-p.z0, 1.0])
    s2 = p.sigma**2
    if kind is PotentialKind.M1_VARIANT:
        poly = s2 * p.V0 * P([0, 0, 1]) * zz**4 - s2 * p.V1 * p.z0 * P([0, 0, 1]) * zz**3
    else:
        poly = s2 * p.V0 * zz**4 - s2 * (p.V1 / p.z0) * P([0, 0, 1]) * zz**3
    coef = np.zeros(7)
    coef[: len(poly.coef)] = poly.coef
    return coef


def _invariant_lhs(params: DchParams, z, z0):
    """I = g - f'/2 - f^2/4 with z0 passed in, so alpha = 0 is allowed."""
    f = -(params.gamma / z**2 + (params.delta - 2.0) / z + params.epsilon + 1.0 / (z - z0))
    g = params.alpha * (z - z0) / z**2
    df = 2.0 * params.gamma / z**3 + (params.delta - 2.0) / z**2 + 1.0 / (z - z0) ** 2
    return g - df / 2.0 - f * f / 4.0


def _invariant_rhs(m1, m2, E, p, z0, v, z):
    L = m1 / z + m2 / (z - z0)
    dL = -m1 / z**2 - m2 / (z - z0) ** 2
    rho2 = (z**m1 * (z - z0) ** m2 / p.sigma) ** 2
    V = rho2 * np.polynomial.polynomial.polyval(z, v) / (z**4 * (z - z0) ** 2)
    return -0.5 * dL - 0.25 * L * L + p.k * (E - V) / rho2


def _rel_residual(a, b):
    scale = np.maximum(np.abs(a), np.abs(b))
    scale = np.where(scale == 0, 1.0, scale)
    return float(np.max(np.abs(a - b) / scale))


def verify_reduction(
    kind: PotentialKind, p: PhysicalParams, E: float, z_grid, signs: SignPair = PLUS
) -> ReductionWitness:
    """Compare both sides of the invariant identity on a z grid.

    The left side uses the deformed-equation coefficients f, g; the right
    side uses rho = z^m1 (z - z0)^m2 / sigma with m2 = -1 and the potential
    rebuilt from its seven v coefficients.  Also recorded (not asserted):
    the residuals obtained with m2 = 3 and with m1 = 3/2.
    """
    variant = _as_variant(kind, p)
    z = np.asarray(z_grid, dtype=float)
    z0 = p.z0
    _check_proximity(np.sort(z), [(0.0, "z"), (z0, "z0")])
    params = dch_params_for(variant, E, p, signs, allow_degenerate=True)
    lhs = _invariant_lhs(params, z, z0)
    v = potential_polynomial(variant, p)
    m1 = variant.m1
    rhs = _invariant_rhs(m1, -1, E, p, z0, v, z)
    residual = _rel_residual(lhs, rhs)

    # consistency of the rebuilt potential with the direct one
    direct = potential_of_z(variant, z, p)
    rebuilt = (z**m1 / ((z - z0) * p.sigma)) ** 2 * np.polynomial.polynomial.polyval(z, v) / (z**4 * (z - z0) ** 2)
    residual = max(residual, _rel_residual(direct, rebuilt))

    zt = z0 * (1.0 + 1e-7)
    lim = float((zt - z0) ** 2 * (_invariant_lhs(params, zt, z0)))
    alternatives = {
        "m2=3": _rel_residual(lhs, _invariant_rhs(m1, 3, E, p, z0, v, z)),
        "m1=3/2": _rel_residual(lhs, _invariant_rhs(1.5, -1, E, p, z0, v, z)),
    }
    return ReductionWitness(
        m1=m1,
        m2=-1,
        v=tuple(float(c) for c in v),
        sigma=p.sigma,
        grid=z,
        residual_norm=residual,
        eq10_roots=eq10_roots(),
        limit_coefficient=lim,
        alternative_residuals=alternatives,
    )


def apparent_singularity_check(params: DchParams, sol_left: GridFunction, sol_right: GridFunction, order: int = 6):
    """Mismatch of w and w' at q/alpha when extrapolated from each side.

    Both solutions must come from the same DCHE solution (for instance one
    solve_dche run whose grid straddles q/alpha, split in two).  Returns
    (mismatch of w, mismatch of w'), each relative to the largest sample
    used in the fits; w' itself vanishes at a regular apparent point.
    """
    z0 = params.z_apparent
    out = []
    wl, wr = deformed_w(params, sol_left), deformed_w(params, sol_right)
    for attr in ("values", "derivative"):
        ends, scale = [], 1e-300
        for g in (wl, wr):
            idx = np.argsort(np.abs(g.xs - z0))[: order + 1]
            ys = getattr(g, attr)[idx]
            coef = np.polynomial.polynomial.polyfit(g.xs[idx] - z0, ys, order)
            ends.append(coef[0])
            scale = max(scale, float(np.max(np.abs(ys))))
        out.append(abs(ends[0] - ends[1]) / scale)
    return tuple(out)
