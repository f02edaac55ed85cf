"""Command-line front end.

Subcommands: potential, spectrum, wavefunction, bounds, figure2, verify.
Numbers are written as shortest round-trip reprs, CSV with LF line endings,
JSON with non-finite values as null.  Exit codes: 0 success, 2 usage or
domain error, 3 numerical failure, 4 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from . import closedform, spectrum, verify
from .closedform import SignPair, SolutionCoefficients
from .errors import ConvergenceError, DomainError, LWPotError, ParameterError, VerificationError
from .potential import PRESETS, PhysicalParams, PotentialKind, asymptote_origin, asymptote_tail, eval_potential, map_z

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VERIFY = 0, 2, 3, 4

PARAM_FLAGS = {"V0": "V0", "sigma": "sigma", "V1": "V1", "x0": "x0", "z0": "z0", "mass": "m", "hbar": "hbar"}
DEFAULT_PRESET = {"potential": "figure1"}  # everything else defaults to figure2
DEFAULT_FORMAT = {"spectrum": "json", "bounds": "json"}  # everything else defaults to csv


class UsageError(LWPotError):
    pass


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 1:
            raise UsageError("grid needs at least one point")
        if not self.x_min < self.x_max and self.n_points > 1:
            raise UsageError("grid needs xmin < xmax")

    def linspace(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)


@dataclass
class RunConfig:
    subcommand: str
    params: PhysicalParams
    fmt: str = "csv"
    out: str | None = None
    header: bool = False
    options: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def _num(v):
    """Python float (round-trip repr) or None for non-finite values in JSON."""
    v = float(v)
    return v if math.isfinite(v) else None


def _version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def csv_text(columns: list[str], rows, header_line: str | None) -> str:
    buf = io.StringIO()
    if header_line:
        buf.write(f"# {header_line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json_text(obj, header_line: str | None) -> str:
    if header_line:
        obj = {"version": header_line, **obj}
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _header(cfg: RunConfig) -> str | None:
    return f"lwpot {_version()}" if cfg.header else None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _grid(cfg: RunConfig, x_min: float, x_max: float, n: int) -> GridSpec:
    o = cfg.options
    return GridSpec(
        x_min if o.get("xmin") is None else o["xmin"],
        x_max if o.get("xmax") is None else o["xmax"],
        n if o.get("grid") is None else o["grid"],
    )


def cmd_potential(cfg: RunConfig) -> int:
    p = cfg.params
    kind = PotentialKind(cfg.options.get("kind") or "singular")
    xs = _grid(cfg, 0.01 * p.sigma, 10.0 * p.sigma, 1000).linspace()
    z = map_z(kind, xs, p)
    V = eval_potential(kind, xs, p)
    if kind is PotentialKind.SINGULAR:
        head, tail = asymptote_origin(p, xs), asymptote_tail(p, xs)
    else:
        head = tail = np.full_like(xs, math.nan)
    cols = ["x", "z", "V", "asymptote_origin", "asymptote_tail"]
    if cfg.fmt == "json":
        data = {c: [_num(v) for v in arr] for c, arr in zip(cols, (xs, z, V, head, tail))}
        _emit(cfg, _json_text(data, _header(cfg)))
    else:
        _emit(cfg, csv_text(cols, zip(xs, z, V, head, tail), _header(cfg)))
    return EXIT_OK


def _curve(p: PhysicalParams, e_min: float, e_max: float, n: int):
    if not e_min < e_max < 0:
        raise UsageError("energy range needs emin < emax < 0")
    es = np.linspace(e_min, e_max, n)
    parts = np.array([spectrum.spectrum_parts(e, p) for e in es])
    with np.errstate(divide="ignore", invalid="ignore"):
        F = parts[:, 0] / parts[:, 1]
    return es, parts[:, 0], parts[:, 1], F


def _energy_range(cfg: RunConfig, lowest: float | None) -> tuple[float, float, int]:
    p = cfg.params
    o = cfg.options
    e_min = o.get("emin")
    if e_min is None:
        e_min = -p.V0 if lowest is None else min(-p.V0, 1.2 * lowest)
    e_max = -1e-3 * p.V0 if o.get("emax") is None else o["emax"]
    return e_min, e_max, o.get("grid") or 2000


def _table(res: spectrum.SpectrumResult) -> str:
    lines = [f"{'n':>3}  {'E':>24}  {'|F(E)|':>10}  nodes"]
    for k, r in enumerate(res.roots):
        lines.append(f"{k:>3}  {r.energy!r:>24}  {r.residual:>10.2e}  {r.nodes}")
    lines.append(f"bound states: {res.exact_n} (zero-energy nodes {res.zero_energy_nodes})")
    lines.append(f"Bargmann {res.bargmann:.6g}  Calogero {res.calogero:.3f}  Chadan estimate {res.chadan:.3f}")
    return "\n".join(lines) + "\n"


def cmd_spectrum(cfg: RunConfig) -> int:
    p = cfg.params
    if p.V0 <= 0:
        raise DomainError("spectrum needs V0 > 0 (no well, no bound states)")
    scan = spectrum.ScanPolicy(n_points=cfg.options.get("scan_points") or 2000)
    res = spectrum.find_bound_states(p, scan)
    curve = None
    if cfg.options.get("curve"):
        curve = _curve(p, *_energy_range(cfg, res.energies[0] if res.energies else None))
    if cfg.fmt == "csv":
        if curve is not None:
            _emit(cfg, csv_text(["E", "F", "N", "D"], zip(curve[0], curve[3], curve[1], curve[2]), _header(cfg)))
        else:
            rows = [(k, r.energy, r.residual, r.nodes, *r.bracket) for k, r in enumerate(res.roots)]
            _emit(cfg, csv_text(["index", "E", "abs_F", "nodes", "bracket_lo", "bracket_hi"], rows, _header(cfg)))
    else:
        data = {
            "energies": [_num(e) for e in res.energies],
            "exact_n": res.exact_n,
            "zero_energy_nodes": res.zero_energy_nodes,
            "bargmann": _num(res.bargmann),
            "calogero": _num(res.calogero),
            "chadan": _num(res.chadan),
            "roots": [
                {"energy": _num(r.energy), "bracket": [_num(b) for b in r.bracket], "abs_F": _num(r.residual), "nodes": r.nodes}
                for r in res.roots
            ],
            "poles": [[_num(a), _num(b)] for a, b in res.poles],
            "e_floor": _num(res.e_floor),
            "floor_F": _num(res.floor_F),
        }
        if curve is not None:
            data["curve"] = {k: [_num(v) for v in arr] for k, arr in zip(("E", "N", "D", "F"), curve)}
        _emit(cfg, _json_text(data, _header(cfg)))
    if not cfg.options.get("quiet"):
        sys.stderr.write(_table(res))
    return EXIT_OK


def cmd_figure2(cfg: RunConfig) -> int:
    e_min, e_max, n = _energy_range(cfg, None)
    es, _, _, F = _curve(cfg.params, e_min, e_max, n)
    if cfg.fmt == "json":
        _emit(cfg, _json_text({"E": [_num(e) for e in es], "F": [_num(f) for f in F]}, _header(cfg)))
    else:
        _emit(cfg, csv_text(["E", "F"], zip(es, F), _header(cfg)))
    return EXIT_OK


def cmd_bounds(cfg: RunConfig) -> int:
    p = cfg.params
    vals = {
        "bargmann": spectrum.bargmann_bound(p),
        "bargmann_integral": spectrum.bargmann_integral(p),
        "calogero": spectrum.calogero_bound(p),
        "chadan": spectrum.chadan_estimate(p),
    }
    if cfg.fmt == "json":
        _emit(cfg, _json_text({k: _num(v) for k, v in vals.items()}, _header(cfg)))
    else:
        _emit(cfg, csv_text(["name", "value"], vals.items(), _header(cfg)))
    return EXIT_OK


STENCIL = (-2, -1, 1, 2)


def _pointwise_residual(fn, xs, E, p, kind, origin):
    """|psi'' + k (E - V) psi| per point from a local five-point stencil.

    Each point gets its own step min(2e-3 sigma, distance to the origin / 20),
    small enough for the fractional powers of x that psi carries near the origin;
    the column is scaled by the largest |k (E - V) psi| on the grid.
    """
    h = np.minimum(2e-3 * p.sigma, (xs - origin) / 20.0)
    if np.any(h <= 0):
        raise DomainError("wavefunction grid must lie strictly right of the origin")
    centre = fn(xs)
    side = {j: fn(xs + j * h) for j in STENCIL}
    d2 = (-side[-2] + 16 * side[-1] - 30 * centre + 16 * side[1] - side[2]) / (12 * h * h)
    pot = p.k * (E - eval_potential(kind, xs, p)) * centre
    scale = max(float(np.max(np.abs(pot))), float(np.max(np.abs(d2))), 1e-300)
    return np.abs(d2 + pot) / scale


def cmd_wavefunction(cfg: RunConfig) -> int:
    p = cfg.params
    o = cfg.options
    coef = SolutionCoefficients(1.0 if o.get("C1") is None else o["C1"], o.get("C2") or 0.0)
    if coef.trivial:
        raise UsageError("C1 = C2 = 0 is the trivial solution")
    signs = SignPair.parse(o.get("signs") or "++")
    if o.get("state") is not None and o.get("E") is not None:
        raise UsageError("give either --E or --state, not both")
    if o.get("state") is not None:
        energies = spectrum.find_bound_states(p).energies
        if not 0 <= o["state"] < len(energies):
            raise UsageError(f"--state must lie in [0, {len(energies) - 1}]")
        E = energies[o["state"]]
    else:
        E = -1.0 if o.get("E") is None else o["E"]
    origin = p.x0 + p.sigma
    xs = _grid(cfg, origin + 0.05 * p.sigma, origin + 20.0 * p.sigma, 1001).linspace()
    kind = PotentialKind.SINGULAR if p.is_singular else PotentialKind.M1_VARIANT
    if E == 0:
        g = closedform.zero_energy_grid(xs, p, coef)

        def fn(x):
            return closedform.zero_energy_psi(x, p, coef)
    else:
        g = closedform.general_solution_grid(xs, E, p, coef, signs)

        def fn(x):
            return closedform.general_solution_psi(x, E, p, coef, signs)
    res = _pointwise_residual(fn, xs, E, p, kind, origin)
    s = np.sign(g.values)
    flips = np.concatenate([[0], (s[1:] * s[:-1] < 0).astype(int)])
    nodes = np.cumsum(flips)
    cols = ["x", "z", "psi", "dpsi", "residual", "nodes"]
    arrays = (xs, g.meta["z"], g.values, g.derivative, res)
    if cfg.fmt == "json":
        data = {c: [_num(v) for v in arr] for c, arr in zip(cols, arrays)}
        data["nodes"] = [int(n) for n in nodes]
        data["E"] = _num(E)
        _emit(cfg, _json_text(data, _header(cfg)))
    else:
        rows = (tuple(float(a[i]) for a in arrays) + (int(nodes[i]),) for i in range(len(xs)))
        _emit(cfg, csv_text(cols, rows, _header(cfg)))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    names = cfg.options.get("suite") or ["all"]
    if "all" in names:
        names = list(verify.SUITE_NAMES)
    checks = verify.run_suites(names)
    failed = sum(not c.passed for c in checks)
    lines = [c.line() for c in checks]
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {
    "potential": cmd_potential,
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "bounds": cmd_bounds,
    "figure2": cmd_figure2,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _common(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("physical parameters (override the preset)")
    g.add_argument("--preset", choices=sorted(PRESETS))
    for flag in PARAM_FLAGS:
        g.add_argument(f"--{flag}", type=float)
    sp.add_argument("--format", dest="fmt", choices=("csv", "json"))
    sp.add_argument("--out", help="output file (default: standard output)")
    sp.add_argument("--config", help="JSON file mirroring the flags; flags win")
    sp.add_argument("--version-header", dest="header", action="store_true", help="prepend a version line")
    sp.add_argument("-v", "--verbose", action="store_true")


def _grid_flags(sp, energy=False):
    if energy:
        sp.add_argument("--emin", type=float)
        sp.add_argument("--emax", type=float)
    else:
        sp.add_argument("--xmin", type=float)
        sp.add_argument("--xmax", type=float)
    sp.add_argument("--grid", type=int, help="number of grid points")


def _build() -> tuple[argparse.ArgumentParser, dict]:
    ap = argparse.ArgumentParser(prog="lwpot", description="Lambert-W potentials: closed forms, spectrum, checks.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("potential", help="V(x), z(x) and the two asymptotes on a grid")
    _common(sp)
    _grid_flags(sp)
    sp.add_argument("--kind", choices=[k.value for k in PotentialKind])

    sp = sub.add_parser("spectrum", help="bound-state energies and estimates")
    _common(sp)
    _grid_flags(sp, energy=True)
    sp.add_argument("--curve", action="store_true", help="also emit F(E) on [emin, emax]")
    sp.add_argument("--scan-points", dest="scan_points", type=int)
    sp.add_argument("--quiet", action="store_true", help="no table on standard error")

    sp = sub.add_parser("wavefunction", help="closed-form psi with residual and node columns")
    _common(sp)
    _grid_flags(sp)
    sp.add_argument("--E", type=float)
    sp.add_argument("--state", type=int, help="use the n-th bound-state energy (0 = ground state)")
    sp.add_argument("--C1", type=float)
    sp.add_argument("--C2", type=float)
    sp.add_argument("--signs", choices=("++", "+-", "-+", "--"))

    sp = sub.add_parser("bounds", help="Bargmann, Calogero and Chadan numbers")
    _common(sp)

    sp = sub.add_parser("figure2", help="(E, F(E)) curve data")
    _common(sp)
    _grid_flags(sp, energy=True)

    sp = sub.add_parser("verify", help="run invariant suites and the acceptance criteria")
    _common(sp)
    sp.add_argument("--suite", action="append", choices=list(verify.SUITE_NAMES) + ["all"])
    return ap, sub.choices


def build_parser() -> argparse.ArgumentParser:
    return _build()[0]


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    return data


def parse(argv=None) -> RunConfig:
    ap, subs = _build()
    ns = ap.parse_args(argv)
    if ns.config:
        conf = _load_config(ns.config)
        sp = subs[ns.subcommand]
        # config keys are flag names without dashes ("format", "scan_points", "V0")
        dests = {
            s.lstrip("-").replace("-", "_"): a.dest for a in sp._actions for s in a.option_strings if s.startswith("--")
        }
        unknown = set(conf) - set(dests) - {"config"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        sp.set_defaults(**{dests[k]: v for k, v in conf.items() if k != "config"})
        ns = ap.parse_args(argv)
    opts = vars(ns).copy()
    preset = opts.pop("preset") or DEFAULT_PRESET.get(ns.subcommand, "figure2")
    p = PRESETS[preset]
    changes = {PARAM_FLAGS[f]: opts.pop(f) for f in PARAM_FLAGS if opts.get(f) is not None}
    for f in PARAM_FLAGS:
        opts.pop(f, None)
    if changes:
        p = p.with_(**changes)
    if opts.pop("verbose"):
        logging.basicConfig(level=logging.INFO)
    return RunConfig(
        subcommand=opts.pop("subcommand"),
        params=p,
        fmt=opts.pop("fmt") or DEFAULT_FORMAT.get(ns.subcommand, "csv"),
        out=opts.pop("out"),
        header=opts.pop("header"),
        options={k: v for k, v in opts.items() if k != "config"},
    )


def main(argv=None) -> int:
    try:
        cfg = parse(argv)
        return COMMANDS[cfg.subcommand](cfg)
    except (UsageError, DomainError, ParameterError) as exc:
        print(f"lwpot: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, ArithmeticError) as exc:
        print(f"lwpot: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except VerificationError as exc:
        print(f"lwpot: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
