"""Independent numerical ground truth for the singular potential.

Nothing here touches the closed-form or special-function code.  The potential
is re-evaluated from its defining equation by bisection, the Schroedinger
equation is integrated with Numerov's method, and eigenvalues come from
node-count bracketing (Sturm oscillation) refined on the boundary value.

Numerov runs on a logarithmic grid t = ln x with phi = psi / sqrt(x), which
turns psi'' = k (V - E) psi into phi'' = [k x^2 (V - E) + 1/4] phi.  The
-1/sqrt(x) head becomes smooth in t, so the scheme keeps its fourth order all
the way down to x_min.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numba import njit
from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError, ParameterError
from .potential import PhysicalParams


class GridTooCoarseWarning(UserWarning):
    pass


@dataclass
class GridFunction:
    """Sampled real function on strictly increasing abscissae."""

    xs: np.ndarray
    values: np.ndarray
    derivative: np.ndarray | None = None
    second_derivative: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.xs = np.asarray(self.xs, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        n = len(self.xs)
        if self.values.shape != (n,):
            raise ParameterError("GridFunction: xs and values lengths differ")
        for name in ("derivative", "second_derivative"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.asarray(arr, dtype=float)
                if arr.shape != (n,):
                    raise ParameterError(f"GridFunction: {name} length differs")
                setattr(self, name, arr)
        if n > 1 and not np.all(np.diff(self.xs) > 0):
            raise ParameterError("GridFunction: xs must be strictly increasing")

    def __len__(self):
        return len(self.xs)


@dataclass(frozen=True)
class ShootingConfig:
    """Numerov/shooting controls.  ``None`` limits default to 1e-4 sigma and 40 sigma."""

    x_min: float | None = None
    x_max: float | None = None
    steps: int = 200_000
    match_tol: float = 1e-12
    frobenius_terms: int = 3

    def __post_init__(self):
        if self.steps < 1000:
            raise ParameterError("ShootingConfig.steps must be >= 1000")
        if self.x_min is not None and self.x_max is not None and not 0 < self.x_min < self.x_max:
            raise ParameterError("ShootingConfig needs 0 < x_min < x_max")
        if self.frobenius_terms not in (1, 2, 3):
            raise ParameterError("frobenius_terms must be 1, 2 or 3")

    def limits(self, p: PhysicalParams) -> tuple[float, float]:
        lo = 1e-4 * p.sigma if self.x_min is None else self.x_min
        hi = 40.0 * p.sigma if self.x_max is None else self.x_max
        if not 0 < lo < hi:
            raise ParameterError("ShootingConfig needs 0 < x_min < x_max")
        return lo, hi


# ---------------------------------------------------------------------------
# potential by bisection
# ---------------------------------------------------------------------------

def _exp_tail(y):
    """e^y - 1 - y, summed directly where the subtraction would cancel."""
    out = np.expm1(y) - y
    small = np.abs(y) < 0.5
    ys = y[small]
    term = ys * ys / 2.0
    acc = term.copy()
    for k in range(3, 24):
        term = term * ys / k
        acc = acc + term
    out[small] = acc
    return out


def oracle_potential(x, p: PhysicalParams):
    """Singular potential from its defining equation, solved by bisection.

    With y = ln z the map reads e^y - 1 - y = x/sigma, monotone in y on
    y <= 0; V = -V0 z / (1 - z) = V0 e^y / expm1(y).
    """
    if not p.is_singular:
        raise ParameterError("oracle covers the singular potential only")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("oracle_potential needs x > 0")
    s = x / p.sigma
    lo = -s - 2.0
    hi = np.zeros_like(s)
    act = np.arange(s.size)
    for _ in range(2200):  # enough to reach adjacent floats from any start
        a, b = lo[act], hi[act]
        mid = 0.5 * (a + b)
        neg = s[act] - _exp_tail(mid) < 0
        lo[act[neg]] = mid[neg]
        hi[act[~neg]] = mid[~neg]
        live = (b - a > 2e-16 * np.abs(a)) & (mid != a) & (mid != b)
        act = act[live]
        if act.size == 0:
            break
    y = 0.5 * (lo + hi)
    return p.V0 * np.exp(y) / np.expm1(y)


def frobenius_start(x, E: float, p: PhysicalParams, terms: int = 3):
    """Regular solution near the origin, psi = x + c5 x^(5/2) + c6 x^3.

    With V = -A/sqrt(x) + B + O(sqrt(x)), A = sqrt(sigma/2) V0 and B = 2 V0/3,
    matching powers in psi'' = k (V - E) psi gives (15/4) c5 = -k A and
    6 c6 = k (B - E).
    """
    x = np.asarray(x, dtype=float)
    A = math.sqrt(p.sigma / 2.0) * p.V0
    B = 2.0 * p.V0 / 3.0
    psi = x.copy()
    if terms >= 2:
        psi = psi - 4.0 * p.k * A / 15.0 * x**2.5
    if terms >= 3:
        psi = psi + p.k * (B - E) / 6.0 * x**3
    return psi


# ---------------------------------------------------------------------------
# Numerov kernel
# ---------------------------------------------------------------------------

_RESCALE_AT = 1e200


@njit(cache=True)
def _numerov_log(q0, qe, E, h, phi0, phi1, store):
    """March phi'' = (q0 - E qe) phi on a uniform t grid.

    Summed form: with y = (1 - h^2 f/12) phi the recurrence is carried as the
    increment d_i = y_{i+1} - y_i, d_i = d_{i-1} + h^2 f_i phi_i, so rounding
    grows linearly in the number of steps instead of quadratically.

    Returns (phi array or empty, log scales per point or empty, node count,
    last value divided by the running max |phi|).
    """
    n = q0.shape[0]
    h2 = h * h
    phi = np.empty(n if store else 0)
    logs = np.empty(n if store else 0)
    log_scale = 0.0
    f_cur = q0[1] - E * qe[1]
    y_prev = (1.0 - h2 / 12.0 * (q0[0] - E * qe[0])) * phi0
    y_cur = (1.0 - h2 / 12.0 * f_cur) * phi1
    d = y_cur - y_prev
    p_cur = phi1
    if store:
        phi[0] = phi0
        phi[1] = phi1
        logs[0] = 0.0
        logs[1] = 0.0
    vmax = max(abs(phi0), abs(phi1))
    nodes = 0
    last_sign = 0
    for v in (phi0, phi1):
        if v != 0.0:
            s = 1 if v > 0 else -1
            if last_sign != 0 and s != last_sign:
                nodes += 1
            last_sign = s
    for i in range(2, n):
        d += h2 * f_cur * p_cur
        y_cur += d
        f_cur = q0[i] - E * qe[i]
        p_cur = y_cur / (1.0 - h2 / 12.0 * f_cur)
        if p_cur != 0.0:
            s = 1 if p_cur > 0 else -1
            if last_sign != 0 and s != last_sign:
                nodes += 1
            last_sign = s
        if abs(p_cur) > _RESCALE_AT:
            p_cur /= _RESCALE_AT
            y_cur /= _RESCALE_AT
            d /= _RESCALE_AT
            vmax /= _RESCALE_AT
            log_scale += math.log(_RESCALE_AT)
        if abs(p_cur) > vmax:
            vmax = abs(p_cur)
        if store:
            phi[i] = p_cur
            logs[i] = log_scale
    return phi, logs, nodes, p_cur / vmax


class _NumerovGrid:
    """Precomputed E-independent arrays for one (params, config)."""

    def __init__(self, p: PhysicalParams, cfg: ShootingConfig):
        if not p.is_singular:
            raise ParameterError("Numerov oracle covers the singular potential only")
        self.p, self.cfg = p, cfg
        lo, hi = cfg.limits(p)
        self.t = np.linspace(math.log(lo), math.log(hi), cfg.steps + 1)
        self.h = self.t[1] - self.t[0]
        self.x = np.exp(self.t)
        self.V = oracle_potential(self.x, p)
        x2k = p.k * self.x**2
        self.q0 = x2k * self.V + 0.25
        self.qe = x2k

    def start(self, E: float):
        psi = frobenius_start(self.x[:2], E, self.p, self.cfg.frobenius_terms)
        return psi / np.sqrt(self.x[:2])

    def run(self, E: float, store: bool):
        phi0, phi1 = self.start(E)
        return _numerov_log(self.q0, self.qe, float(E), self.h, phi0, phi1, store)


def numerov_integrate(E: float, p: PhysicalParams, cfg: ShootingConfig = ShootingConfig()) -> GridFunction:
    """Regular solution of psi'' = k (V - E) psi from the Frobenius start.

    Values are rescaled to a common scale; ``meta["log_scale"]`` is the log of
    the factor removed during overflow guarding (0 when none was needed), so
    the absolute solution is ``values * exp(log_scale)``.  ``meta["nodes"]``
    is the number of sign changes on the grid.
    """
    grid = _NumerovGrid(p, cfg)
    phi, logs, nodes, _ = grid.run(E, store=True)
    final = logs[-1]
    with np.errstate(under="ignore"):
        psi = phi * np.exp(logs - final) * np.sqrt(grid.x)
    return GridFunction(grid.x, psi, meta={"log_scale": float(final), "nodes": int(nodes)})


def count_nodes(psi: GridFunction | np.ndarray, x_exclude: float = 0.0) -> int:
    """Strict sign changes of the samples with x > x_exclude (exact zeros skipped)."""
    if isinstance(psi, GridFunction):
        vals = psi.values[psi.xs > x_exclude]
    else:
        vals = np.asarray(psi, dtype=float)
    s = np.sign(vals)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def shooting_eigenvalues(p: PhysicalParams, cfg: ShootingConfig = ShootingConfig()) -> list[float]:
    """Bound-state energies by node-count bracketing and boundary-value refinement.

    The node count N(E) of the regular solution on (x_min, x_max] counts the
    levels below E.  The k-th level is bracketed by bisection on N(E) and then
    located as the sign change of psi(x_max) inside the bracket.
    """
    if p.V0 <= 0:
        return []
    grid = _NumerovGrid(p, cfg)

    def nodes(E):
        return grid.run(E, store=False)[2]

    def tail(E):
        return grid.run(E, store=False)[3]

    e_low = float(np.min(grid.V))
    n_total = nodes(0.0)
    if nodes(e_low) != 0:
        raise ConvergenceError("shooting: solution already has nodes at the potential minimum")
    levels = []
    lo_prev = e_low
    for k in range(1, n_total + 1):
        lo, hi = lo_prev, 0.0
        # shrink until N(lo) = k-1 and N(hi) = k
        for _ in range(200):
            n_lo, n_hi = nodes(lo), nodes(hi)
            if n_lo == k - 1 and n_hi == k:
                break
            mid = 0.5 * (lo + hi)
            if nodes(mid) >= k:
                hi = mid
            else:
                lo = mid
        else:
            raise ConvergenceError(f"shooting: bracket exhaustion for level {k}")
        E_k = brentq(tail, lo, hi, xtol=1e-300, rtol=max(cfg.match_tol, 4.5e-16), maxiter=500)
        levels.append(E_k)
        lo_prev = E_k
    return levels


# ---------------------------------------------------------------------------
# residual and Wronskian
# ---------------------------------------------------------------------------

def _d2_5pt(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Five-point second derivative at xs[2:-2] (uniform or smooth nonuniform grid)."""
    h = np.diff(xs)
    if np.allclose(h, h[0], rtol=1e-9, atol=0):
        hh = h[0]
        return (-ys[:-4] + 16 * ys[1:-3] - 30 * ys[2:-2] + 16 * ys[3:-1] - ys[4:]) / (12 * hh * hh)
    out = np.empty(len(xs) - 4)
    for i in range(2, len(xs) - 2):
        d = xs[i - 2:i + 3] - xs[i]
        vander = np.vander(d, 5, increasing=True).T
        rhs = np.array([0.0, 0.0, 2.0, 0.0, 0.0])
        w = np.linalg.solve(vander, rhs)
        out[i - 2] = w @ ys[i - 2:i + 3]
    return out


@dataclass(frozen=True)
class ResidualReport:
    residual: float
    truncation_bound: float


def residual_report(psi: GridFunction, E: float, p: PhysicalParams, potential=None) -> ResidualReport:
    """Normalized residual of psi'' + k (E - V) psi = 0 and a truncation estimate.

    Both numbers are max |.| over interior points divided by the largest of
    |psi''| and |k (E - V) psi| on the grid.  The truncation estimate compares
    the five-point stencil at steps h and 2h (Richardson, /15); it is NaN on a
    nonuniform grid.  ``potential`` (a callable of x) replaces the bisection
    evaluation of the singular potential, e.g. for the general variants.
    """
    if len(psi) < 5:
        raise ParameterError("schrodinger_residual needs at least 5 points")
    xs, ys = psi.xs, psi.values
    d2 = _d2_5pt(xs, ys)
    V = oracle_potential(xs[2:-2], p) if potential is None else np.asarray(potential(xs[2:-2]), dtype=float)
    pot = p.k * (E - V) * ys[2:-2]
    scale = max(np.max(np.abs(d2)), np.max(np.abs(pot)))
    if scale == 0:
        return ResidualReport(0.0, 0.0)
    res = float(np.max(np.abs(d2 + pot)) / scale)
    bound = math.nan
    h = np.diff(xs)
    if len(xs) >= 9 and np.allclose(h, h[0], rtol=1e-9, atol=0):
        coarse = _d2_5pt(xs[::2], ys[::2])
        # fine at xs[2::2] aligns with coarse centred at xs[4::2]
        fine = d2[2::2][: len(coarse)]
        bound = float(np.max(np.abs(coarse - fine)) / 15.0 / scale)
    return ResidualReport(res, bound)


def schrodinger_residual(
    psi: GridFunction, E: float, p: PhysicalParams, warn_above: float = 1e-7, potential=None
) -> float:
    """Max normalized residual of the Schroedinger equation on the grid.

    Emits GridTooCoarseWarning when the finite-difference truncation estimate
    alone exceeds ``warn_above``: the grid then cannot certify a residual at
    that level.
    """
    rep = residual_report(psi, E, p, potential)
    if math.isfinite(rep.truncation_bound) and rep.truncation_bound > warn_above:
        warnings.warn(
            f"finite-difference truncation ~{rep.truncation_bound:.2e} exceeds {warn_above:.0e}",
            GridTooCoarseWarning,
            stacklevel=2,
        )
    return rep.residual


def wronskian(psi1: GridFunction, psi2: GridFunction) -> GridFunction:
    """Pointwise psi1 psi2' - psi2 psi1'."""
    if len(psi1) != len(psi2) or not np.array_equal(psi1.xs, psi2.xs):
        raise ParameterError("wronskian: grids differ")
    if psi1.derivative is None or psi2.derivative is None:
        raise ParameterError("wronskian: derivative values required")
    return GridFunction(psi1.xs, psi1.values * psi2.derivative - psi2.values * psi1.derivative)
