"""The two Lambert-W potentials, their coordinate maps z(x) and asymptotes.

Three kinds are supported:

* ``M2_VARIANT``: V = V0 + V1 (z/z0)^2 / (1 - z/z0),  z = -z0 / W(-z0 exp((x0 - x)/sigma))
* ``M1_VARIANT``: V = V0 + V1 / (1 - z/z0),           z = -z0 W(-exp((x0 - x)/(sigma z0)) / z0)
* ``SINGULAR``: the M1 variant with z0 = 1, x0 = -sigma, V1 = -V0, living on x > 0,
  where V = V0 / (1 + 1/W(-exp(-(x + sigma)/sigma))) = -V0 z / (1 - z).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, ParameterError, SingularityError
from .specfun import EPS, lambert_w, lambert_w_log


class PotentialKind(enum.Enum):
    M2_VARIANT = "m2"
    M1_VARIANT = "m1"
    SINGULAR = "singular"

    @property
    def m1(self) -> int:
        """Power of z in dz/dx = z^m1 (z - z0)^-1 / sigma."""
        return 2 if self is PotentialKind.M2_VARIANT else 1


@dataclass(frozen=True)
class PhysicalParams:
    """Physical configuration; m = hbar = 1 by default as in the figures."""

    V0: float
    sigma: float
    V1: float = 0.0
    x0: float = 0.0
    z0: float = 1.0
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.m > 0 and self.hbar > 0 and self.sigma > 0):
            raise ParameterError("m, hbar and sigma must be positive")
        if self.z0 == 0:
            raise ParameterError("z0 must be nonzero")

    @classmethod
    def singular(cls, V0: float, sigma: float, m: float = 1.0, hbar: float = 1.0) -> "PhysicalParams":
        """The half-axis potential: z0 = 1, x0 = -sigma, V1 = -V0."""
        return cls(V0=V0, sigma=sigma, V1=-V0, x0=-sigma, z0=1.0, m=m, hbar=hbar)

    @property
    def is_singular(self) -> bool:
        return self.z0 == 1.0 and self.x0 == -self.sigma and self.V1 == -self.V0

    @property
    def k(self) -> float:
        """2m/hbar^2, the factor multiplying E - V in the Schroedinger equation."""
        return 2.0 * self.m / self.hbar**2

    def with_(self, **changes) -> "PhysicalParams":
        """Copy with fields replaced; keeps the singular specialization if it held."""
        if self.is_singular and {"V0", "sigma"} & changes.keys() and not {"V1", "x0", "z0"} & changes.keys():
            base = {"V0": self.V0, "sigma": self.sigma, "m": self.m, "hbar": self.hbar}
            base.update(changes)
            return PhysicalParams.singular(**base)
        return replace(self, **changes)


FIGURE1 = PhysicalParams.singular(V0=2.0, sigma=1.0)
FIGURE2 = PhysicalParams.singular(V0=3.0, sigma=3.0)
PRESETS = {"figure1": FIGURE1, "figure2": FIGURE2}


def _require_singular(p: PhysicalParams) -> None:
    if not p.is_singular:
        raise ParameterError("singular kind requires z0 = 1, x0 = -sigma and V1 = -V0")


def _as_array(x):
    scalar = np.ndim(x) == 0
    return np.atleast_1d(np.asarray(x, dtype=float)), scalar


def _ret(arr, scalar):
    return float(arr[0]) if scalar else arr


def w_argument(kind: PotentialKind, x, p: PhysicalParams):
    """Argument handed to the Lambert function by the coordinate map."""
    x = np.asarray(x, dtype=float)
    if kind is PotentialKind.M2_VARIANT:
        return -p.z0 * np.exp((p.x0 - x) / p.sigma)
    if kind is PotentialKind.SINGULAR:
        _require_singular(p)
    return -np.exp((p.x0 - x) / (p.sigma * p.z0)) / p.z0


def real_domain(kind: PotentialKind, p: PhysicalParams) -> tuple[float, float]:
    """Interval of x on which z(x) is real (W argument >= -1/e)."""
    if kind is PotentialKind.SINGULAR:
        _require_singular(p)
        return (0.0, math.inf)
    if p.z0 < 0:
        return (-math.inf, math.inf)
    if kind is PotentialKind.M2_VARIANT:
        return (p.x0 + p.sigma * (1.0 + math.log(p.z0)), math.inf)
    return (p.x0 - p.sigma * p.z0 * (math.log(p.z0) - 1.0), math.inf)


def _log_map(kind: PotentialKind, xa: np.ndarray, p: PhysicalParams, branch: str) -> np.ndarray:
    """y with z = z0 e^y (m1 family) or z = z0 e^-y (m2), for z0 > 0.

    The W argument is then -exp(-1 - s) with s = (x - x_edge)/(sigma z0) or
    (x - x_edge)/sigma, x_edge being the edge of the real domain.
    """
    edge, _ = real_domain(kind, p)
    scale = p.sigma if kind is PotentialKind.M2_VARIANT else p.sigma * p.z0
    s = (xa - edge) / scale
    if np.any(s < -4 * EPS * np.maximum(1.0, np.abs(xa) / scale)):
        raise DomainError(f"x below the real domain edge {edge!r} of the {kind.value} map")
    return lambert_w_log(s, branch)


def map_z(kind: PotentialKind, x, p: PhysicalParams, branch: str = "principal"):
    """Coordinate transformation z(x).

    The singular kind always uses the principal branch, giving z in (0, 1]
    with z(0) = 1.  ``branch="lower"`` is honoured for the general variants
    where the W argument is negative.
    """
    xa, scalar = _as_array(x)
    if kind is PotentialKind.SINGULAR:
        _require_singular(p)
        branch = "principal"
        if np.any(xa < 0):
            raise DomainError("singular potential is defined for x >= 0 only")
    if p.z0 > 0:
        y = _log_map(kind, xa, p, branch)
        z = p.z0 * np.exp(-y if kind is PotentialKind.M2_VARIANT else y)
        return _ret(z, scalar)
    if branch == "lower":
        raise DomainError("lower Lambert branch needs a negative argument; no real z there")
    w = lambert_w(w_argument(kind, xa, p), branch)
    z = -p.z0 / w if kind is PotentialKind.M2_VARIANT else -p.z0 * w
    return _ret(z, scalar)


def select_branch(kind: PotentialKind, xs, p: PhysicalParams) -> str:
    """Branch giving a real, finite, strictly monotone z(x) over the grid.

    The principal branch is preferred; the lower branch is tried when the
    principal one fails.
    """
    if kind is PotentialKind.SINGULAR:
        return "principal"
    xs = np.asarray(xs, dtype=float)
    for branch in ("principal", "lower"):
        try:
            z = map_z(kind, xs, p, branch)
        except DomainError:
            continue
        dz = np.diff(z)
        if np.all(np.isfinite(z)) and (np.all(dz > 0) or np.all(dz < 0) or len(z) < 2):
            return branch
    raise DomainError(f"no Lambert branch yields a real monotone z(x) for {kind.value} on this grid")


def x_of_z(kind: PotentialKind, z, p: PhysicalParams):
    """Inverse of the coordinate map (z > 0)."""
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise DomainError("x_of_z requires z > 0")
    if kind is PotentialKind.M2_VARIANT:
        return p.x0 + p.sigma * (np.log(z) + p.z0 / z)
    if kind is PotentialKind.SINGULAR:
        _require_singular(p)
    return p.x0 - p.sigma * p.z0 * np.log(z) + p.sigma * z


def rho(kind: PotentialKind, z, p: PhysicalParams):
    """dz/dx = z^m1 (z - z0)^-1 / sigma."""
    z = np.asarray(z, dtype=float)
    z0 = 1.0 if kind is PotentialKind.SINGULAR else p.z0
    return z ** kind.m1 / (p.sigma * (z - z0))


def potential_of_z(kind: PotentialKind, z, p: PhysicalParams):
    """V as a function of the transformed coordinate."""
    z = np.asarray(z, dtype=float)
    if kind is PotentialKind.SINGULAR:
        return -p.V0 * z / (1.0 - z)
    r = z / p.z0
    if kind is PotentialKind.M2_VARIANT:
        return p.V0 + p.V1 * r**2 / (1.0 - r)
    return p.V0 + p.V1 / (1.0 - r)


def eval_potential(kind: PotentialKind, x, p: PhysicalParams, branch: str = "principal"):
    """V(x) for the selected potential kind.

    For z0 > 0 the 1/(1 - z/z0) factor is formed from expm1 of the log map,
    so V keeps full relative accuracy next to the singular point.
    """
    xa, scalar = _as_array(x)
    if kind is PotentialKind.SINGULAR:
        _require_singular(p)
        branch = "principal"
        if np.any(xa <= 0):
            if np.any(xa == 0):
                raise SingularityError("singular potential diverges at x = 0")
            raise DomainError("singular potential is defined for x > 0 only")
    if p.z0 > 0:
        y = _log_map(kind, xa, p, branch)
        if np.any(y == 0):
            raise SingularityError("potential evaluated at z = z0")
        if kind is PotentialKind.SINGULAR:
            V = p.V0 * np.exp(y) / np.expm1(y)
        elif kind is PotentialKind.M2_VARIANT:
            V = p.V0 - p.V1 * np.exp(-2.0 * y) / np.expm1(-y)
        else:
            V = p.V0 - p.V1 / np.expm1(y)
        return _ret(V, scalar)
    z = np.atleast_1d(map_z(kind, xa, p, branch))
    if np.any(np.abs(z - p.z0) <= 4 * EPS * abs(p.z0)):
        raise SingularityError("potential evaluated at z = z0")
    return _ret(np.atleast_1d(potential_of_z(kind, z, p)), scalar)


def asymptote_origin(p: PhysicalParams, x):
    """Leading small-x behaviour of the singular potential, -sqrt(sigma/2) V0 / sqrt(x)."""
    xa, scalar = _as_array(x)
    if np.any(xa <= 0):
        raise DomainError("origin asymptote needs x > 0")
    return _ret(-math.sqrt(p.sigma / 2.0) * p.V0 / np.sqrt(xa), scalar)


def asymptote_tail(p: PhysicalParams, x):
    """Exponential tail of the singular potential, -V0 exp(-(x + sigma)/sigma)."""
    xa, scalar = _as_array(x)
    return _ret(-p.V0 * np.exp(-(xa + p.sigma) / p.sigma), scalar)
