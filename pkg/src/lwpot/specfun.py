"""Real-valued special functions: Lambert W, Kummer 1F1, Tricomi U, log-gamma.

Every evaluator accepts a scalar or a numpy array for its main argument and
returns the same shape (a Python float for scalar input).  Parameters of the
confluent hypergeometric functions (``a``, ``c``) are scalars.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Literal

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConvergenceError, DomainError, ParameterError

WBranch = Literal["principal", "lower"]
UStrategy = Literal["auto", "connection_formula", "ode_inward"]

EPS = float(np.finfo(float).eps)

# 1/e split into a double and its rounding remainder
_INV_E_HI = 0.36787944117144233
_INV_E_LO = -1.2428753672788363e-17

# inside this distance from -1/e the two-term branch-point series is returned
_BRANCH_SERIES_RADIUS = 1e-12
_INTEGER_C_GUARD = 1e-6
# connection formula is abandoned once its two terms cancel by more than this
_MAX_CANCELLATION = 1e4
_MAX_DIGITS = 200
_SEED_DOUBLINGS = 8


@dataclass(frozen=True)
class ChgEvalPolicy:
    """Evaluation controls for the confluent hypergeometric functions.

    ``u_strategy="auto"`` picks the connection formula for non-integer ``c``
    when its two terms do not cancel badly, and inward ODE integration
    otherwise.
    """

    max_terms: int = 100_000
    tol: float = 1e-14
    u_strategy: UStrategy = "auto"

    def __post_init__(self):
        if self.max_terms <= 0:
            raise ParameterError("max_terms must be positive")
        if not self.tol >= 10 * EPS:
            raise ParameterError(f"tol must be >= 10*eps, got {self.tol}")
        if self.u_strategy not in ("auto", "connection_formula", "ode_inward"):
            raise ParameterError(f"unknown u_strategy {self.u_strategy!r}")


DEFAULT_POLICY = ChgEvalPolicy()


def _out(arr: np.ndarray, scalar: bool):
    return float(arr.reshape(())) if scalar else arr


# ---------------------------------------------------------------------------
# Lambert W
# ---------------------------------------------------------------------------

def _branch_offset(t: np.ndarray) -> np.ndarray:
    """t + 1/e evaluated without losing the low-order bits of 1/e."""
    return (t + _INV_E_HI) + _INV_E_LO


def _w_initial(t: np.ndarray, branch: str) -> np.ndarray:
    d = np.maximum(_branch_offset(t), 0.0)
    p = np.sqrt(2.0 * math.e * d)
    w = np.empty_like(t)
    if branch == "principal":
        near = t < -0.25
        w[near] = -1.0 + p[near] - p[near] ** 2 / 3.0 + 11.0 / 72.0 * p[near] ** 3
        mid = (~near) & (t <= math.e)
        lg = np.log1p(t[mid])
        w[mid] = lg * (1.0 - np.log1p(lg) / (2.0 + lg))
        far = t > math.e
        l1 = np.log(t[far])
        l2 = np.log(l1)
        w[far] = l1 - l2 + l2 / l1
    else:
        near = t < -0.25
        w[near] = -1.0 - p[near] - p[near] ** 2 / 3.0 - 11.0 / 72.0 * p[near] ** 3
        far = ~near
        l1 = np.log(-t[far])
        l2 = np.log(-l1)
        w[far] = l1 - l2 + l2 / l1
    return w


def lambert_w(t, branch: WBranch = "principal"):
    """Real branch of the Lambert W function, the inverse of ``w * exp(w)``.

    ``branch="principal"`` is W0 on [-1/e, inf) with values >= -1;
    ``branch="lower"`` is W-1 on [-1/e, 0) with values <= -1.  Arguments up to
    4 eps below -1/e are clamped to the branch point.

    Halley iteration on ``w - t*exp(-w) = 0`` from a piecewise initial guess;
    within 1e-12 of the branch point the series ``-1 +/- sqrt(2(1 + e t))``
    is returned directly.
    """
    if branch not in ("principal", "lower"):
        raise ParameterError(f"unknown Lambert W branch {branch!r}")
    scalar = np.ndim(t) == 0
    shape = np.shape(t)
    t = np.asarray(t, dtype=float).ravel().copy()
    if np.any(np.isnan(t)):
        raise DomainError("lambert_w: NaN argument")
    d = _branch_offset(t)
    if np.any(d < -4 * EPS):
        raise DomainError(f"lambert_w: argument below -1/e (min {t.min()!r})")
    if branch == "lower" and np.any(t >= 0):
        raise DomainError("lambert_w: lower branch requires -1/e <= t < 0")
    t[d < 0] = -_INV_E_HI
    d = np.maximum(d, 0.0)

    w = _w_initial(t, branch)
    active = d >= _BRANCH_SERIES_RADIUS
    if branch == "principal":
        active &= t != 0.0
    for _ in range(12):
        if not active.any():
            break
        wa, ta = w[active], t[active]
        ew = ta * np.exp(-wa)
        g = wa - ew
        g1 = 1.0 + ew
        g2 = -ew
        step = g / (g1 - 0.5 * g * g2 / g1)
        w[active] = wa - step
        done = np.abs(step) <= 2 * EPS * np.maximum(np.abs(wa), 1e-300)
        idx = np.flatnonzero(active)
        active[idx[done]] = False

    p = np.sqrt(2.0 * math.e * d)
    series = d < _BRANCH_SERIES_RADIUS
    if branch == "principal":
        w[series] = -1.0 + p[series]
        w[t == 0.0] = 0.0
        w = np.maximum(w, -1.0)
    else:
        w[series] = -1.0 - p[series]
        w = np.minimum(w, -1.0)
    return _out(w.reshape(shape), scalar)


def _expm1_minus_id(y: np.ndarray) -> np.ndarray:
    """e^y - 1 - y without cancellation for small |y|."""
    out = np.expm1(y) - y
    small = np.abs(y) < 0.5
    if small.any():
        ys = y[small]
        term = ys * ys / 2.0
        acc = term.copy()
        for k in range(3, 24):
            term = term * ys / k
            acc += term
        out[small] = acc
    return out


def lambert_w_log(s, branch: WBranch = "principal"):
    """y = ln(-W(t)) for t = -exp(-1 - s), s >= 0.

    Taking the distance s to the branch point instead of t avoids the
    rounding of t, which near -1/e costs sqrt(eps) relative accuracy in 1 + W.
    Solves y - expm1(y) = -s by Halley iteration; the principal branch
    gives y <= 0, the lower branch y >= 0.
    """
    if branch not in ("principal", "lower"):
        raise ParameterError(f"unknown Lambert W branch {branch!r}")
    scalar = np.ndim(s) == 0
    shape = np.shape(s)
    s = np.asarray(s, dtype=float).ravel().copy()
    if np.any(np.isnan(s)) or np.any(s < -4 * EPS * np.maximum(1.0, np.abs(s))):
        raise DomainError("lambert_w_log: argument beyond the branch point")
    s = np.maximum(s, 0.0)
    p = np.sqrt(2.0 * s)
    sign = -1.0 if branch == "principal" else 1.0
    y = sign * p - p * p / 6.0
    far = s > 1.5
    if branch == "principal":
        y[far] = -s[far] - 1.0 + np.exp(-s[far] - 1.0)
    else:
        y[far] = np.log1p(s[far] + np.log1p(s[far]))
    active = s > 0
    for _ in range(50):
        if not active.any():
            break
        ya, sa = y[active], s[active]
        g = sa - _expm1_minus_id(ya)
        g1 = -np.expm1(ya)
        g2 = -np.exp(ya)
        step = g / (g1 - 0.5 * g * g2 / g1)
        y[active] = ya - step
        done = np.abs(step) <= 2 * EPS * np.maximum(np.abs(ya), 1e-300)
        idx = np.flatnonzero(active)
        active[idx[done]] = False
    if active.any():
        raise ConvergenceError("lambert_w_log: Halley iteration did not converge")
    y = np.minimum(y, 0.0) if branch == "principal" else np.maximum(y, 0.0)
    return _out(y.reshape(shape), scalar)


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------

def log_gamma(x: float) -> tuple[float, int]:
    """Return ``(ln|Gamma(x)|, sign(Gamma(x)))``.

    Raises ParameterError at the poles x = 0, -1, -2, ...
    """
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise ParameterError(f"Gamma has a pole at {x}")
    if x > 0:
        sign = 1
    else:
        sign = 1 if math.floor(x) % 2 == 0 else -1
    return math.lgamma(x), sign


def _gamma_ratio(num: float, den: float) -> float:
    """Gamma(num)/Gamma(den), with 1/Gamma(pole) taken as 0."""
    if den <= 0 and den == math.floor(den):
        return 0.0
    ln_n, s_n = log_gamma(num)
    ln_d, s_d = log_gamma(den)
    return s_n * s_d * math.exp(ln_n - ln_d)


# ---------------------------------------------------------------------------
# Kummer M
# ---------------------------------------------------------------------------

def _check_c(c: float) -> None:
    if c <= 0 and c == math.floor(c):
        raise ParameterError(f"1F1 undefined for c = {c} (zero or negative integer)")


def _series_float(a: float, c: float, x: float, policy: ChgEvalPolicy):
    """Float power series; returns (sum, sum of |terms|)."""
    total = 1.0
    absum = 1.0
    term = 1.0
    small_run = 0
    for k in range(policy.max_terms):
        term *= (a + k) / (c + k) * x / (k + 1)
        total += term
        absum += abs(term)
        if term == 0.0:
            return total, absum
        if abs(term) <= policy.tol * abs(total) and abs((a + k + 1) * x) < abs((c + k + 1) * (k + 2)):
            small_run += 1
            if small_run >= 2:
                return total, absum
        else:
            small_run = 0
    raise ConvergenceError(f"1F1({a}; {c}; {x}) did not converge in {policy.max_terms} terms")


def _series_decimal(a: float, c: float, x: float, policy: ChgEvalPolicy, digits: int) -> float:
    """Power series in extended-precision decimal arithmetic.

    Floats convert to Decimal exactly, so the only error left is the working
    precision, which is raised until the cancellation it sees is covered.
    """
    while True:
        with decimal.localcontext() as ctx:
            ctx.prec = digits
            da, dc, dx = Decimal(a), Decimal(c), Decimal(x)
            total = Decimal(1)
            absum = Decimal(1)
            term = Decimal(1)
            stop = Decimal(10) ** (-(digits - 2))
            for k in range(policy.max_terms):
                term = term * (da + k) * dx / ((dc + k) * (k + 1))
                total += term
                absum += abs(term)
                if term == 0:
                    break
                if abs(term) <= stop * abs(total) and abs((a + k + 1) * x) < abs((c + k + 1) * (k + 2)):
                    break
            else:
                raise ConvergenceError(f"1F1({a}; {c}; {x}) did not converge in {policy.max_terms} terms")
            if total != 0:
                lost = int((absum / abs(total)).log10()) + 1
                if digits - lost >= 20 or digits >= _MAX_DIGITS:
                    return float(total)
            elif digits >= _MAX_DIGITS:
                return 0.0
            digits = min(_MAX_DIGITS, digits + 20 + (lost if total != 0 else 20))


def _series_scalar(a: float, c: float, x: float, policy: ChgEvalPolicy) -> float:
    total, absum = _series_float(a, c, x, policy)
    kappa = absum / abs(total) if total != 0.0 else math.inf
    if 16 * EPS * kappa <= policy.tol:
        return total
    extra = 20 if not math.isfinite(kappa) else int(math.log10(kappa)) + 1
    return _series_decimal(a, c, x, policy, 20 + extra)


def _kummer_series(a: float, c: float, x: np.ndarray, policy: ChgEvalPolicy) -> np.ndarray:
    """Power series for x >= 0; elementwise with cancellation-driven precision."""
    return np.array([_series_scalar(a, c, float(xi), policy) for xi in x.ravel()]).reshape(x.shape)


def kummer_m(a: float, c: float, x, policy: ChgEvalPolicy = DEFAULT_POLICY):
    """Kummer's confluent hypergeometric function 1F1(a; c; x) for real x.

    Negative arguments go through 1F1(a;c;x) = e^x 1F1(c-a;c;-x) so the
    series never alternates because of the sign of x.
    """
    a, c = float(a), float(c)
    _check_c(c)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    pos = x >= 0
    if pos.any():
        out[pos] = _kummer_series(a, c, x[pos], policy)
    if (~pos).any():
        xn = -x[~pos]
        out[~pos] = np.exp(-xn) * _kummer_series(c - a, c, xn, policy)
    return _out(out, scalar)


def kummer_m_prime(a: float, c: float, x, policy: ChgEvalPolicy = DEFAULT_POLICY):
    """d/dx 1F1(a;c;x) = (a/c) 1F1(a+1; c+1; x)."""
    if a == 0:
        scalar = np.ndim(x) == 0
        return _out(np.zeros(np.shape(np.atleast_1d(x))), scalar)
    return (a / c) * kummer_m(a + 1, c + 1, x, policy)


# ---------------------------------------------------------------------------
# Tricomi U
# ---------------------------------------------------------------------------

def _asymptotic_u(a: float, c: float, x: float, tol: float, max_terms: int) -> float:
    """x^a U(a;c;x) from the large-x asymptotic series."""
    b = a - c + 1
    total, term = 1.0, 1.0
    prev = math.inf
    for n in range(max_terms):
        term *= -(a + n) * (b + n) / ((n + 1) * x)
        if term == 0.0:
            return total
        total += term
        if abs(term) <= tol * abs(total):
            return total
        # early terms may grow; growth past the parameters' size is the divergent tail
        if abs(term) > abs(prev) and n > abs(a) + abs(b) + 2:
            break
        prev = term
    raise ConvergenceError(
        f"asymptotic series for U({a}; {c}; {x}) diverges before reaching tol {tol}"
    )


def seed_point(a: float, c: float, x_max: float) -> float:
    """Seed abscissa for inward integration of the Kummer equation."""
    return max(50.0, 4.0 * (abs(a) + abs(c) + x_max))


def _u_ode_inward(a, c, x: np.ndarray, policy: ChgEvalPolicy):
    """U and dU/dx by integrating x u'' + (c - x) u' - a u = 0 inward.

    The integration runs in t = ln x with state (u, x u'), where the equation
    reads u_tt = (1 - c + x) u_t + a x u.
    """
    xs = float(x.max())
    x_seed = seed_point(a, c, xs)
    for _ in range(_SEED_DOUBLINGS):
        try:
            s_u = _asymptotic_u(a, c, x_seed, policy.tol, policy.max_terms)
            s_du = 0.0 if a == 0 else _asymptotic_u(a + 1, c + 1, x_seed, policy.tol, policy.max_terms)
            break
        except ConvergenceError:
            x_seed *= 2.0
    else:
        raise ConvergenceError(f"no usable seed point for U({a}; {c}) up to x = {x_seed}")
    # log-scaled seed keeps x^(-a) representable for large seeds
    log_scale = -a * math.log(x_seed)
    u0 = s_u
    # U' = -a U(a+1; c+1; x), times x for the t = ln x state
    du0 = -a * s_du

    def rhs(t, y):
        xx = math.exp(t)
        return [y[1], (1.0 - c + xx) * y[1] + a * xx * y[0]]

    ts = np.log(x)
    order = np.argsort(-ts, kind="stable")
    t_eval = ts[order]
    t_seed = math.log(x_seed)
    sol = solve_ivp(
        rhs,
        (t_seed, float(t_eval[-1])),
        [u0, du0],
        method="DOP853",
        t_eval=t_eval,
        rtol=2.5e-14,
        atol=1e-300,
    )
    if not sol.success:
        raise ConvergenceError(f"inward integration for U({a}; {c}) failed: {sol.message}")
    u = np.empty_like(x)
    du = np.empty_like(x)
    scale = math.exp(log_scale)
    u[order] = sol.y[0] * scale
    du[order] = sol.y[1] / x[order] * scale
    return u, du


def _u_connection(a, c, x: np.ndarray, policy: ChgEvalPolicy):
    """Both terms of the 1F1 connection formula, returned separately."""
    g1 = _gamma_ratio(1 - c, a - c + 1)
    g2 = _gamma_ratio(c - 1, a)
    t1 = g1 * kummer_m(a, c, x, policy) if g1 else np.zeros_like(x)
    t2 = g2 * x ** (1 - c) * kummer_m(a - c + 1, 2 - c, x, policy) if g2 else np.zeros_like(x)
    return t1, t2


def _near_integer(c: float) -> bool:
    return abs(c - round(c)) < _INTEGER_C_GUARD


def _tricomi(a, c, x: np.ndarray, policy: ChgEvalPolicy, want_derivative: bool):
    strategy = policy.u_strategy
    if strategy == "connection_formula" and _near_integer(c):
        raise ParameterError(f"connection formula rejected for near-integer c = {c}")
    if strategy in ("auto", "connection_formula") and not _near_integer(c):
        t1, t2 = _u_connection(a, c, x, policy)
        u = t1 + t2
        lossy = np.any((np.abs(t1) + np.abs(t2)) > _MAX_CANCELLATION * np.abs(u))
        if strategy == "connection_formula" or not lossy:
            if not want_derivative:
                return u, None
            if a == 0:
                return u, np.zeros_like(x)
            s1, s2 = _u_connection(a + 1, c + 1, x, policy)
            return u, -a * (s1 + s2)
    return _u_ode_inward(a, c, x, policy)


def tricomi_u(a: float, c: float, x, policy: ChgEvalPolicy = DEFAULT_POLICY):
    """Tricomi's confluent hypergeometric function U(a; c; x) for x > 0."""
    a, c = float(a), float(c)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~(x > 0)):
        raise DomainError("tricomi_u requires x > 0")
    u, _ = _tricomi(a, c, x, policy, want_derivative=False)
    return _out(u, scalar)


def tricomi_u_with_derivative(a: float, c: float, x, policy: ChgEvalPolicy = DEFAULT_POLICY):
    """``(U(a;c;x), dU/dx)``; the derivative equals -a U(a+1; c+1; x)."""
    a, c = float(a), float(c)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~(x > 0)):
        raise DomainError("tricomi_u requires x > 0")
    u, du = _tricomi(a, c, x, policy, want_derivative=True)
    return _out(u, scalar), _out(du, scalar)
