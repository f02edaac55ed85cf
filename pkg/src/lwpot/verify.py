"""Invariant suites and the acceptance criteria, runnable headlessly.

Each check returns ``Check(name, passed, detail)``; exceptions inside a
check count as failures.  ``run_suites`` is what ``lwpot verify`` calls.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from decimal import Decimal, localcontext

import numpy as np

from . import closedform, heun, oracle, potential, specfun, spectrum
from .closedform import SignPair, SolutionCoefficients
from .errors import ConvergenceError
from .potential import FIGURE1, FIGURE2, PhysicalParams, PotentialKind

SEED = 20240611


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


SUITES: dict[str, list] = {name: [] for name in ("specfun", "potential", "heun", "closedform", "spectrum", "oracle")}
ACCEPTANCE: list = []


def _register(registry):
    def deco(fn):
        registry.append(fn)
        return fn

    return deco


def check(suite: str):
    return _register(SUITES[suite])


def criterion(fn):
    return _register(ACCEPTANCE)(fn)


def _run(fn) -> Check:
    name = (fn.__doc__ or fn.__name__).strip().splitlines()[0]
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported with its type
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    return Check(name, bool(passed), detail)


def run_suites(names) -> list[Check]:
    out = []
    for name in names:
        fns = ACCEPTANCE if name == "acceptance" else SUITES[name]
        out.extend(_run(fn) for fn in fns)
    return out


SUITE_NAMES = tuple(SUITES) + ("acceptance",)


# ---------------------------------------------------------------------------
# shared measurements (also used by the test suite)
# ---------------------------------------------------------------------------

def lambert_identity_errors(branch: str, n: int = 10_000, seed: int = SEED) -> float:
    """Worst |w e^w - t| / (eps max(1, |t|)), with w e^w evaluated in Decimal."""
    rng = np.random.default_rng(seed)
    if branch == "principal":
        # half near the branch point, half spread log-uniformly up to 1e4
        near = -math.exp(-1) + np.abs(rng.uniform(0, 1, n // 2)) ** 4 * 0.3
        far = np.exp(rng.uniform(math.log(1e-6), math.log(1e4), n - n // 2)) * rng.choice([1, -1], n - n // 2)
        far = np.maximum(far, -math.exp(-1))
        t = np.concatenate([near, far])
    else:
        t = -np.exp(rng.uniform(math.log(1e-300), -1.0, n))
    w = specfun.lambert_w(t, branch)
    worst = 0.0
    with localcontext() as ctx:
        ctx.prec = 50
        for ti, wi in zip(t.tolist(), w.tolist()):
            d = Decimal(wi) * Decimal(wi).exp() - Decimal(ti)
            worst = max(worst, float(abs(d)) / (specfun.EPS * max(1.0, abs(ti))))
    return worst


def contiguous_relation_error(n: int = 200, seed: int = SEED) -> float:
    """Worst (c-a)M(a-1) + (2a-c+x)M(a) - aM(a+1), relative to its largest term."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        a, c, x = rng.uniform(-6, 6), rng.uniform(0.3, 8), rng.uniform(-25, 25)
        terms = (
            (c - a) * specfun.kummer_m(a - 1, c, x),
            (2 * a - c + x) * specfun.kummer_m(a, c, x),
            -a * specfun.kummer_m(a + 1, c, x),
        )
        worst = max(worst, abs(sum(terms)) / max(max(abs(t) for t in terms), 1e-300))
    return worst


def kummer_ode_residuals(n: int = 100, seed: int = SEED) -> tuple[float, float]:
    """Worst Kummer-equation residual for M and for U, derivatives from the shift identities."""
    rng = np.random.default_rng(seed)
    worst_m = worst_u = 0.0

    def rel(a, c, x, y, dy, d2y):
        terms = (x * d2y, (c - x) * dy, -a * y)
        return abs(sum(terms)) / max(max(abs(t) for t in terms), 1e-300)

    for _ in range(n):
        a, c, x = rng.uniform(-4, 4), rng.uniform(0.3, 6), rng.uniform(0.1, 20)
        m = specfun.kummer_m(a, c, x)
        dm = a / c * specfun.kummer_m(a + 1, c + 1, x)
        d2m = a * (a + 1) / (c * (c + 1)) * specfun.kummer_m(a + 2, c + 2, x)
        worst_m = max(worst_m, rel(a, c, x, m, dm, d2m))
        u = specfun.tricomi_u(a, c, x)
        du = -a * specfun.tricomi_u(a + 1, c + 1, x)
        d2u = a * (a + 1) * specfun.tricomi_u(a + 2, c + 2, x)
        worst_u = max(worst_u, rel(a, c, x, u, du, d2u))
    return worst_m, worst_u


def kummer_transformation_error(n: int = 200, seed: int = SEED) -> float:
    """Max relative gap between M(a;c;-x) and its direct extended-precision series."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        a, c, x = rng.uniform(-6, 6), rng.uniform(0.3, 8), rng.uniform(0.1, 25)
        via_transform = specfun.kummer_m(a, c, -x)
        direct = _direct_series(a, c, -x)
        worst = max(worst, abs(via_transform - direct) / max(abs(direct), 1e-300))
    return worst


def _direct_series(a, c, x, digits=60):
    with localcontext() as ctx:
        ctx.prec = digits
        a, c, x = Decimal(a), Decimal(c), Decimal(x)
        term = total = Decimal(1)
        k = 0
        while True:
            term = term * (a + k) / (c + k) * x / (k + 1)
            total += term
            k += 1
            if k > 20 and abs(term) < abs(total) * Decimal(10) ** (-digits + 5):
                return float(total)
            if k > 10_000:
                raise ConvergenceError("direct series did not converge")


def u_strategy_gap(n: int = 200, seed: int = SEED) -> float:
    rng = np.random.default_rng(seed)
    cf = specfun.ChgEvalPolicy(u_strategy="connection_formula")
    ode = specfun.ChgEvalPolicy(u_strategy="ode_inward")
    worst = 0.0
    for _ in range(n):
        c = rng.uniform(0.05, 4)
        if abs(c - round(c)) < 0.05:
            c += 0.1
        a, x = rng.uniform(-3, 3), rng.uniform(0.1, 5)
        u1, u2 = specfun.tricomi_u(a, c, x, cf), specfun.tricomi_u(a, c, x, ode)
        worst = max(worst, abs(u1 - u2) / max(abs(u2), 1e-300))
    return worst


def random_singular_tuples(n: int = 20, seed: int = SEED):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        V0 = rng.uniform(0.5, 10)
        yield PhysicalParams.singular(V0, rng.uniform(0.5, 3)), -rng.uniform(0.01, 3) * V0


def closed_form_residuals(n_tuples=20, n_grid=40_001, seed=SEED):
    """(worst Schroedinger residual, worst Wronskian spread) over random tuples."""
    xs = np.linspace(0.05, 20, n_grid)
    worst_res = worst_w = 0.0
    for p, E in random_singular_tuples(n_tuples, seed):
        g1 = closedform.general_solution_grid(xs, E, p, SolutionCoefficients(1, 0))
        g2 = closedform.general_solution_grid(xs, E, p, SolutionCoefficients(0, 1))
        for g in (g1, g2):
            worst_res = max(worst_res, oracle.residual_report(g, E, p).residual)
        w = oracle.wronskian(g1, g2).values
        worst_w = max(worst_w, float(np.ptp(w) / np.max(np.abs(w))))
    return worst_res, worst_w


def pipeline_gap(p=FIGURE2, energies=(-2.5, -1.0, -0.3, -0.01), n=401):
    """Max relative gap between the Heun pipeline and the closed form.

    The solution decaying at large x is launched from the far end of the grid
    and the others from the near end, the stable direction in each case.
    """
    xs = np.linspace(0.05, 20, n)
    worst = 0.0
    for E in energies:
        for coef, i0 in ((SolutionCoefficients(1, 0), -1), (SolutionCoefficients(0, 1), 0), (SolutionCoefficients(0.3, -2), 0)):
            g = closedform.general_solution_grid(xs, E, p, coef)
            a = heun.assemble_psi(PotentialKind.SINGULAR, E, p, xs, g.values[i0], g.derivative[i0], xs[i0])
            worst = max(worst, float(np.max(np.abs(a.values - g.values)) / np.max(np.abs(g.values))))
    return worst


def figure2_deformed_residual():
    d = heun.dch_params_for(PotentialKind.SINGULAR, 0.0, FIGURE2)
    zg = np.linspace(1e-3, 1, 2001)
    sol = heun.solve_dche(d, 0.5, 1.0, 0.3, zg)
    w = heun.deformed_w(d, sol)
    keep = slice(0, -1)  # z = 1 is the apparent singularity
    wg = oracle.GridFunction(zg[keep], w.values[keep], w.derivative[keep], w.second_derivative[keep])
    return heun.deformed_residual(d, wg), sol.meta["residual"]


def reduction_worst(kind: PotentialKind, n=40, seed=SEED) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        V0, V1 = rng.uniform(-5, 5), rng.uniform(-5, 5)
        z0 = rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 3)
        p = PhysicalParams(V0, rng.uniform(0.3, 3), V1, rng.uniform(-1, 1), z0)
        E = V0 - rng.uniform(0, 5)
        zz = abs(z0) * np.linspace(0.05, 3, 301)
        zz = zz[np.abs(zz - z0) > 0.02 * abs(z0)]
        for signs in (SignPair(1, 1), SignPair(1, -1)):
            worst = max(worst, heun.verify_reduction(kind, p, E, zz, signs).residual_norm)
    return worst


# ---------------------------------------------------------------------------
# specfun
# ---------------------------------------------------------------------------

@check("specfun")
def _w_golden():
    """Lambert W golden values"""
    omega = specfun.lambert_w(1.0)
    bp = specfun.lambert_w(-math.exp(-1))
    ok = abs(omega - 0.5671432904097838) <= 2e-16 and bp == -1.0 and specfun.lambert_w(0.0) == 0.0
    return ok, f"W(1) = {omega!r}, W(-1/e) = {bp!r}"


@check("specfun")
def _w_identity():
    """Lambert W identity on both branches"""
    p, l = lambert_identity_errors("principal", 2000), lambert_identity_errors("lower", 2000)
    return p <= 8 and l <= 8, f"worst |we^w - t|/(eps max(1,|t|)): principal {p:.3g}, lower {l:.3g}"


@check("specfun")
def _lgamma():
    """log-gamma at a negative half-integer"""
    v, s = specfun.log_gamma(-1.5)
    return abs(v - 0.8600470153764810) < 1e-14 and s == 1, f"lnGamma(-1.5) = {v!r}, sign {s}"


@check("specfun")
def _m_cancellation():
    """1F1 under heavy cancellation"""
    r = math.sqrt(216)
    v = specfun.kummer_m(-r / 4, r, r)
    ref = 0.002126321445761477
    return abs(v / ref - 1) < 1e-12, f"M(-sqrt216/4; sqrt216; sqrt216) = {v!r}"


@check("specfun")
def _kummer_transform():
    """Kummer transformation consistency"""
    e = kummer_transformation_error(100)
    return e <= 1e-10, f"max rel gap {e:.3g}"


@check("specfun")
def _u_values():
    """Tricomi U at integer and non-integer c"""
    u1 = specfun.tricomi_u(2.0, 3.0, 4.0)
    u2 = specfun.tricomi_u(0.3, 0.7, 2.5)
    ok = abs(u1 - 0.0625) < 1e-12 and abs(u2 / 0.71867489176755872 - 1) < 1e-12
    return ok, f"U(2,3,4) = {u1!r}, U(0.3,0.7,2.5) = {u2!r}"


@check("specfun")
def _contiguous():
    """1F1 contiguous relation in a"""
    e = contiguous_relation_error(200)
    return e <= 1e-10, f"worst relative residual {e:.3g}"


@check("specfun")
def _kummer_ode():
    """1F1 and U satisfy Kummer's equation"""
    em, eu = kummer_ode_residuals(60)
    return em <= 1e-7 and eu <= 1e-7, f"worst relative residual: M {em:.3g}, U {eu:.3g}"


@check("specfun")
def _u_strategies():
    """U connection formula vs inward ODE"""
    g = u_strategy_gap(100)
    return g <= 1e-8, f"max rel gap {g:.3g}"


# ---------------------------------------------------------------------------
# potential
# ---------------------------------------------------------------------------

@check("potential")
def _potential_vs_oracle():
    """singular potential vs bisection evaluation"""
    xs = np.geomspace(1e-6, 40, 400)
    a = potential.eval_potential(PotentialKind.SINGULAR, xs, FIGURE1)
    b = oracle.oracle_potential(xs, FIGURE1)
    e = float(np.max(np.abs(a / b - 1)))
    return e < 1e-12, f"max rel gap {e:.3g}"


@check("potential")
def _inverse_map():
    """z(x) inverts x(z) for both variants"""
    worst = 0.0
    for kind, p in ((PotentialKind.M1_VARIANT, PhysicalParams(1, 0.7, 2, 0.3, 1.4)), (PotentialKind.M2_VARIANT, PhysicalParams(1, 0.7, 2, 0.3, -1.2))):
        lo, _ = potential.real_domain(kind, p)
        xs = np.linspace(max(lo, -3) + 0.1, 8, 200)
        z = potential.map_z(kind, xs, p)
        worst = max(worst, float(np.max(np.abs(potential.x_of_z(kind, z, p) - xs))))
    return worst < 1e-12, f"max |x(z(x)) - x| = {worst:.3g}"


@check("potential")
def _rho():
    """dz/dx matches a centred difference"""
    xs = np.linspace(0.1, 10, 50)
    h = 1e-5
    fd = (potential.map_z(PotentialKind.SINGULAR, xs + h, FIGURE2) - potential.map_z(PotentialKind.SINGULAR, xs - h, FIGURE2)) / (2 * h)
    r = potential.rho(PotentialKind.SINGULAR, potential.map_z(PotentialKind.SINGULAR, xs, FIGURE2), FIGURE2)
    e = float(np.max(np.abs(fd - r) / np.abs(r)))
    return e < 1e-8, f"max rel gap {e:.3g}"


# ---------------------------------------------------------------------------
# heun
# ---------------------------------------------------------------------------

@check("heun")
def _dche_first_order():
    """DCHE with alpha = q = gamma = 0 against u' = z^-delta e^-eps z"""
    d = heun.DchParams(0.0, 1.5, 2.0, 0.0, 0.0)
    z = np.linspace(0.1, 3, 300)
    sol = heun.solve_dche(d, 1.0, 0.3, 1.0 * math.exp(-2.0), z)
    exact = z**-1.5 * np.exp(-2.0 * z)
    e = float(np.max(np.abs(sol.derivative / exact - 1)))
    return e < 1e-8, f"max rel error of u' {e:.3g}"


@check("heun")
def _deformed():
    """deformed equation residual and negative control"""
    r, dche = figure2_deformed_residual()
    d = heun.dch_params_for(PotentialKind.SINGULAR, 0.0, FIGURE2)
    z = np.linspace(0.01, 0.99, 500)
    neg = heun.deformed_residual(d, oracle.GridFunction(z, np.exp(z), np.exp(z), np.exp(z)))
    return r <= 1e-6 and dche <= 1e-8 and neg > 1e-3, f"residual {r:.3g}, DCHE residual {dche:.3g}, control {neg:.3g}"


@check("heun")
def _apparent():
    """w is regular across q/alpha"""
    p = PhysicalParams(1.0, 1.0, -1.0, 0.0, 1.0)
    d = heun.dch_params_for(PotentialKind.M1_VARIANT, -0.5, p)
    z = np.linspace(0.5, 1.5, 1001)
    sol = heun.solve_dche(d, 0.7, 1.0, -0.4, z[np.abs(z - 1) > 1e-9])
    left = oracle.GridFunction(sol.xs[sol.xs < 1], sol.values[sol.xs < 1], sol.derivative[sol.xs < 1], sol.second_derivative[sol.xs < 1])
    right = oracle.GridFunction(sol.xs[sol.xs > 1], sol.values[sol.xs > 1], sol.derivative[sol.xs > 1], sol.second_derivative[sol.xs > 1])
    dw, dwp = heun.apparent_singularity_check(d, left, right)
    return dw < 1e-6 and dwp < 1e-6, f"w mismatch {dw:.3g}, w' mismatch {dwp:.3g}"


@check("heun")
def _reduction():
    """reduction identity for both variants"""
    r1, r2 = reduction_worst(PotentialKind.M1_VARIANT, 15), reduction_worst(PotentialKind.M2_VARIANT, 15)
    return max(r1, r2) <= 1e-8, f"m1 {r1:.3g}, m2 {r2:.3g}"


@check("heun")
def _pipeline():
    """Heun pipeline equals the closed form"""
    g = pipeline_gap(energies=(-1.0,))
    return g <= 1e-8, f"max rel gap {g:.3g}"


# ---------------------------------------------------------------------------
# closedform
# ---------------------------------------------------------------------------

@check("closedform")
def _cf_residual():
    """Schroedinger residual and Wronskian, three random tuples"""
    r, w = closed_form_residuals(3)
    return r <= 1e-7 and w <= 1e-8, f"residual {r:.3g}, Wronskian spread {w:.3g}"


@check("closedform")
def _span():
    """other sign pairs lie in the span of the (+,+) pair"""
    x = np.linspace(0.05, 20, 22)
    E = -1.0
    f1 = closedform.general_solution_psi(x, E, FIGURE2, SolutionCoefficients(1, 0))
    f2 = closedform.general_solution_psi(x, E, FIGURE2, SolutionCoefficients(0, 1))
    worst = 0.0
    for s in ("--", "+-", "-+"):
        g = closedform.general_solution_psi(x, E, FIGURE2, SolutionCoefficients(1, 0), SignPair.parse(s))
        co = np.linalg.solve([[f1[0], f2[0]], [f1[-1], f2[-1]]], [g[0], g[-1]])
        worst = max(worst, float(np.max(np.abs(co[0] * f1 + co[1] * f2 - g)) / np.max(np.abs(g))))
    return worst <= 1e-8, f"max fit error {worst:.3g}"


@check("closedform")
def _irreducible():
    """bound state is not a single 1F1 term"""
    E = -1.3578613764532903
    t = closedform.chg_parameters(E, FIGURE2)
    x = np.linspace(0.1, 10, 50)
    z = potential.map_z(PotentialKind.SINGULAR, x, FIGURE2)
    single = z ** (t.c / 2) * np.exp(-t.s0 * z / 2) * specfun.kummer_m(t.a, t.c, t.s0 * z)
    ratio = closedform.bound_state_psi(x, E, FIGURE2) / single
    spread = float(np.std(ratio) / abs(np.mean(ratio)))
    return spread > 1e-3, f"relative spread of the ratio {spread:.3g}"


@check("closedform")
def _zero_energy_limit():
    """E = 0 solution is the E -> 0- limit"""
    gap = zero_energy_limit_gap()
    return gap <= 1e-4, f"max rel gap {gap:.3g}"


def zero_energy_limit_gap(p=FIGURE2, xs=(0.3, 2.0, 7.0)) -> float:
    """Compare (c/(a s0)) psi_E with the E = 0 solution, Richardson-extrapolated in c."""
    xs = np.asarray(xs)
    target = closedform.zero_energy_psi(xs, p)
    est = []
    for E in (-1e-10, -0.25e-10):
        t = closedform.chg_parameters(E, p)
        est.append(closedform.general_solution_psi(xs, E, p) * t.c / (t.a * t.s0))
    limit = 2.0 * est[1] - est[0]  # c halves between the two energies
    return float(np.max(np.abs(limit / target - 1)))


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

@check("spectrum")
def _three_states():
    """figure-2 parameters bind exactly three states"""
    r = spectrum.find_bound_states(FIGURE2)
    ok = r.exact_n == 3 and [x.nodes for x in r.roots] == [0, 1, 2]
    return ok, f"energies {r.energies}"


@check("spectrum")
def _root_consistency():
    """F(E*) = 0 coincides with psi_B(0) = 0"""
    r = spectrum.find_bound_states(FIGURE2)
    worst = 0.0
    for E in r.energies:
        t = closedform.chg_parameters(E, FIGURE2)
        scale = abs((t.c - t.s0) / 2 * specfun.kummer_m(t.a, t.c, t.s0)) + abs(t.a * t.s0 / t.c * specfun.kummer_m(t.a + 1, t.c + 1, t.s0))
        worst = max(worst, abs(closedform.bound_state_psi(0.0, E, FIGURE2)) / scale)
    return worst < 1e-10, f"max |psi_B(0)| / bracket scale {worst:.3g}"


@check("spectrum")
def _f_limit():
    """F -> 1 for large negative E"""
    v = spectrum.spectrum_function(-1e4 * FIGURE2.V0, FIGURE2)
    return abs(v - 1) < 0.05, f"F(-1e4 V0) = {v!r}"


@check("spectrum")
def _estimates_order():
    """exact <= Chadan <= Calogero <= Bargmann at the figure-2 point"""
    r = spectrum.find_bound_states(FIGURE2)
    chain = [r.exact_n, r.chadan, r.calogero, r.bargmann]
    return chain == sorted(chain), f"{chain}"


@check("spectrum")
def _three_way():
    """spectrum count = zero-energy nodes = shooting count (sweep)"""
    bad = []
    for V0 in (0.5, 1.0, 3.0, 10.0):
        for s in (0.5, 1.0, 3.0):
            p = PhysicalParams.singular(V0, s)
            n1 = spectrum.find_bound_states(p).exact_n
            n2 = spectrum.count_nodes_zero_energy(p, "analytic")
            n3 = len(oracle.shooting_eigenvalues(p))
            if not n1 == n2 == n3:
                bad.append((V0, s, n1, n2, n3))
    return not bad, "all 12 agree" if not bad else f"disagreements {bad}"


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

@check("oracle")
def _free_particle():
    """Numerov free particle against sinh"""
    p = PhysicalParams.singular(0.0, 1.0)
    E = -0.5
    cfg = oracle.ShootingConfig(x_min=1e-3, x_max=10.0, steps=40_000)
    psi = oracle.numerov_integrate(E, p, cfg)
    k = math.sqrt(-2 * E)
    exact = np.sinh(k * psi.xs) / k
    e = float(np.max(np.abs(psi.values / exact - 1)))
    return e < 1e-9, f"max rel error {e:.3g}"


@check("oracle")
def _order():
    """Numerov self-convergence order"""
    order = numerov_order()
    return 3.5 <= order <= 4.5, f"observed order {order:.3f}"


def numerov_order(E=-1.0, p=FIGURE2, base=1000) -> float:
    """Observed order from psi(x_max) on three grids; coarse, so truncation beats roundoff."""
    vals = []
    for n in (base, 2 * base, 4 * base):
        g = oracle.numerov_integrate(E, p, oracle.ShootingConfig(x_max=20.0, steps=n))
        vals.append(g.values[-1] * math.exp(g.meta["log_scale"]))
    return math.log2(abs(vals[0] - vals[1]) / abs(vals[1] - vals[2]))


@check("oracle")
def _numerov_residual():
    """Numerov solution satisfies the Schroedinger equation"""
    g = oracle.numerov_integrate(-1.0, FIGURE2, oracle.ShootingConfig(x_max=20.0))
    sel = slice(None, None, 20)
    sub = oracle.GridFunction(g.xs[sel], g.values[sel])
    r = oracle.residual_report(sub, -1.0, FIGURE2).residual
    return r <= 1e-6, f"residual {r:.3g}"


@check("oracle")
def _empty_well():
    """no well, no eigenvalues"""
    e = oracle.shooting_eigenvalues(PhysicalParams.singular(0.0, 1.0))
    return e == [], f"{e}"


# ---------------------------------------------------------------------------
# acceptance criteria
# ---------------------------------------------------------------------------

@criterion
def c01():
    """1 bound-state count of the figure-2 preset"""
    t = time.perf_counter()
    r = spectrum.find_bound_states(FIGURE2)
    dt = time.perf_counter() - t
    return r.exact_n == 3 and dt < 5.0, f"{r.exact_n} states in {dt:.2f} s"


@criterion
def c02():
    """2 Bargmann bound"""
    b, i = spectrum.bargmann_bound(FIGURE2), spectrum.bargmann_integral(FIGURE2)
    return b == 27.0 and abs(i / 27.0 - 1) <= 1e-5, f"closed form {b!r}, quadrature {i!r}"


@criterion
def c03():
    """3 Calogero and Chadan"""
    cal, ch = spectrum.calogero_bound(FIGURE2), spectrum.chadan_estimate(FIGURE2)
    ok = abs(cal - 7.3484692283495345) <= 1e-12 and f"{cal:.3f}" == "7.348" and f"{ch:.3f}" == "3.674"
    return ok, f"I_c = {cal:.3f}, I_c/2 = {ch:.3f}"


@criterion
def c04():
    """4 analytic eigenvalues agree with Numerov shooting"""
    a = spectrum.find_bound_states(FIGURE2).energies
    o = oracle.shooting_eigenvalues(FIGURE2)
    if len(a) != len(o):
        return False, f"counts differ: {a} vs {o}"
    gap = max(abs(x / y - 1) for x, y in zip(a, o))
    return gap <= 1e-6, f"max rel gap {gap:.3g}; analytic {a}"


@criterion
def c05():
    """5 zero-energy node count by both paths"""
    n1 = spectrum.count_nodes_zero_energy(FIGURE2, "analytic")
    n2 = spectrum.count_nodes_zero_energy(FIGURE2, "oracle")
    return n1 == n2 == 3, f"analytic {n1}, oracle {n2}"


@criterion
def c06():
    """6 closed-form residual and Wronskian on 20 random tuples"""
    r, w = closed_form_residuals(20)
    return r <= 1e-7 and w <= 1e-8, f"residual {r:.3g}, Wronskian spread {w:.3g}"


@criterion
def c07():
    """7 Heun pipeline equivalence and deformed residual"""
    g = pipeline_gap()
    r, _ = figure2_deformed_residual()
    return g <= 1e-8 and r <= 1e-6, f"pipeline gap {g:.3g}, deformed residual {r:.3g}"


@criterion
def c08():
    """8 reduction identity and the root pair"""
    r1, r2 = reduction_worst(PotentialKind.M1_VARIANT), reduction_worst(PotentialKind.M2_VARIANT)
    roots = heun.eq10_roots()
    return max(r1, r2) <= 1e-8 and set(roots) == {-1.0, 3.0}, f"m1 {r1:.3g}, m2 {r2:.3g}, roots {roots}"


@criterion
def c09():
    """9 origin and tail asymptotes (figure-1 preset)"""
    p = FIGURE1
    xs = 10.0 ** -np.arange(2, 9)
    V = potential.eval_potential(PotentialKind.SINGULAR, xs, p)
    head = np.abs(V * np.sqrt(xs) + math.sqrt(p.sigma / 2) * p.V0)
    monotone = bool(np.all(np.diff(head) < 0))
    xt = np.linspace(10 * p.sigma, 60 * p.sigma, 200)
    tail = np.abs(potential.eval_potential(PotentialKind.SINGULAR, xt, p) / potential.asymptote_tail(p, xt) - 1)
    return monotone and head[-1] < 1e-3 and tail.max() <= 0.01, f"head {head[0]:.3g} -> {head[-1]:.3g}, tail {tail.max():.3g}"


@criterion
def c10():
    """10 F -> 1 at E = -1e4 V0"""
    v = spectrum.spectrum_function(-1e4 * FIGURE2.V0, FIGURE2)
    return abs(v - 1) < 0.05, f"|F - 1| = {abs(v - 1):.3g}"


@criterion
def c11():
    """11 special-function core"""
    wp, wl = lambert_identity_errors("principal"), lambert_identity_errors("lower")
    k = kummer_transformation_error()
    u = u_strategy_gap()
    ok = wp <= 8 and wl <= 8 and k <= 1e-10 and u <= 1e-8
    return ok, f"W/eps principal {wp:.3g}, lower {wl:.3g}; Kummer {k:.3g}; U {u:.3g}"
