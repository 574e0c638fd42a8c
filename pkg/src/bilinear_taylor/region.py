"""Where does ``rho_X(1) > rho_{X^2}(1)`` hold?

The difference ``delta(r)`` is scanned on a uniform grid over the
stationarity interval ``(0, r_max)``; every sign change is bracketed and
bisected until the bracket half-width is at most ``tol``. No derivative
information is used, so each reported interior endpoint is certified by the
sign change across its final bracket.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import reference
from .errors import DomainError, UnresolvedBracketError
from .innovations import InnovationSpec, from_name, raw_moments
from .lag1 import lag1_curves

__all__ = [
    "Interval",
    "TaylorRegion",
    "SweepRow",
    "delta_function",
    "kurtosis_function",
    "domain_upper",
    "find_regions",
    "sweep_delta",
    "PARETO_SHAPES",
]

DEFAULT_GRID = 100_000
FLAT_TOL = 1e-14
PARETO_SHAPES = (9.0, 10.0, 20.0, 50.0, 100.0)


@dataclass(frozen=True)
class Interval:
    """Open interval ``]lo, hi[`` on which delta is positive.

    Interior endpoints carry the half-width of their final bisection
    bracket; endpoints on the domain boundary have radius 0 and are flagged
    (at 0 delta only tends to 0, at ``r_max`` stationarity is lost).
    """

    lo: float
    hi: float
    lo_radius: float
    hi_radius: float
    lo_boundary: bool = False
    hi_boundary: bool = False


@dataclass(frozen=True)
class TaylorRegion:
    family: str
    domain: tuple[float, float]
    intervals: tuple[Interval, ...]
    grid_points: int
    tol: float
    source: str

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "domain": list(self.domain),
            "intervals": [asdict(iv) for iv in self.intervals],
            "grid_points": self.grid_points,
            "tol": self.tol,
            "source": self.source,
        }


@dataclass(frozen=True)
class SweepRow:
    family: str
    r: float
    delta: float
    kurtosis: float


def _unit_spec(target) -> InnovationSpec:
    spec = from_name(target) if isinstance(target, str) else target
    if not spec.is_nonnegative:
        raise DomainError(
            f"{spec.name}: closed-form Taylor analysis covers non-negative innovations only"
        )
    return spec.with_alpha(1.0)


def domain_upper(target) -> float:
    """``r_max = mu_4(alpha=1)^(-1/4)``."""
    return raw_moments(_unit_spec(target))[4] ** -0.25


def delta_function(target, source: str = "analytic"):
    """Vectorised ``r -> delta(r)`` from the generic engine or the
    published polynomials."""
    spec = _unit_spec(target)
    if source == "analytic":
        mu = raw_moments(spec)

        def delta(r):
            rho1, rho1_sq, _ = lag1_curves(mu, np.atleast_1d(r))
            return rho1 - rho1_sq

        return delta
    if source == "polynomial":
        family = spec.name
        if family not in reference.FAMILIES:
            raise DomainError(f"no published formulas for {family}")
        return lambda r: np.atleast_1d(reference.delta_poly(family, np.atleast_1d(r)))
    raise DomainError(f"unknown delta source {source!r}; use 'analytic' or 'polynomial'")


def kurtosis_function(target):
    mu = raw_moments(_unit_spec(target))
    return lambda r: lag1_curves(mu, np.atleast_1d(r))[2]


def _grid(r_hi: float, grid_points: int) -> np.ndarray:
    eps0 = r_hi * 1e-6
    return np.linspace(eps0, r_hi - eps0, grid_points)


def _bisect(delta, a: float, b: float, pos_a: bool, tol: float) -> tuple[float, float]:
    while (b - a) / 2.0 > tol:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        if (float(delta(m)[0]) > 0.0) == pos_a:
            a = m
        else:
            b = m
    return 0.5 * (a + b), 0.5 * (b - a)


def find_regions(
    target,
    grid_points: int = DEFAULT_GRID,
    tol: float = 5e-9,
    source: str = "analytic",
) -> TaylorRegion:
    """Certified positive sub-intervals of delta inside ``(0, r_max)``.

    ``target`` is a non-negative family name or :class:`InnovationSpec`
    (its scale is ignored: everything depends on ``r = alpha beta`` only).
    """
    if grid_points < 1000:
        raise DomainError("grid_points must be at least 1000")
    if not tol > 0:
        raise DomainError("tol must be positive")
    spec = _unit_spec(target)
    delta = delta_function(spec, source)
    r_hi = raw_moments(spec)[4] ** -0.25
    grid = _grid(r_hi, grid_points)
    values = delta(grid)
    positive = values > 0.0

    # crossings[j] is the endpoint between grid[j] and grid[j+1]
    crossings: dict[int, tuple[float, float]] = {}
    for j in np.flatnonzero(positive[1:] != positive[:-1]):
        a, b = float(grid[j]), float(grid[j + 1])
        if abs(values[j]) < FLAT_TOL and abs(values[j + 1]) < FLAT_TOL:
            raise UnresolvedBracketError(
                f"delta is flat (|delta| < {FLAT_TOL:g}) on [{a!r}, {b!r}]; refine the grid"
            )
        crossings[int(j)] = _bisect(delta, a, b, bool(positive[j]), tol)

    intervals = []
    start = 0 if positive[0] else None
    for j in range(grid_points - 1):
        if j not in crossings:
            continue
        if positive[j]:
            lo, lo_rad, lo_bd = (0.0, 0.0, True) if start == 0 else (*crossings[start - 1], False)
            hi, hi_rad = crossings[j]
            intervals.append(Interval(lo, hi, lo_rad, hi_rad, lo_bd, False))
            start = None
        else:
            start = j + 1
    if start is not None:
        lo, lo_rad, lo_bd = (0.0, 0.0, True) if start == 0 else (*crossings[start - 1], False)
        intervals.append(Interval(lo, r_hi, lo_rad, 0.0, lo_bd, True))

    return TaylorRegion(spec.name, (0.0, r_hi), tuple(intervals), grid_points, tol, source)


def sweep_delta(target=None, grid_points: int = 1000, nus=None) -> list[SweepRow]:
    """Tabulate ``(r, delta, kurtosis)`` on the region-finder grid.

    With ``nus`` the Pareto laws of those shapes share the grid of the
    smallest stationarity interval among them, for side-by-side curves.
    """
    if grid_points < 2:
        raise DomainError("grid_points must be at least 2")
    if nus is not None:
        specs = [InnovationSpec.pareto(nu) for nu in nus]
        r_hi = min(domain_upper(s) for s in specs)
    else:
        if target is None:
            raise DomainError("give a family or a list of Pareto shapes")
        specs = [_unit_spec(target)]
        r_hi = domain_upper(specs[0])
    grid = _grid(r_hi, grid_points)
    rows = []
    for spec in specs:
        rho1, rho1_sq, kurt = lag1_curves(raw_moments(spec), grid)
        d = rho1 - rho1_sq
        rows.extend(
            SweepRow(spec.name, float(r), float(dv), float(k)) for r, dv, k in zip(grid, d, kurt)
        )
    return rows
