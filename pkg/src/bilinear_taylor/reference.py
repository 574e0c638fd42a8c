"""Published closed forms for the four non-negative innovation laws.

Each formula is a rational function of the reduced coordinate ``r = alpha *
beta`` written, as published, as a product of polynomial factors over a
product of polynomial factors plus an integer offset (``-3`` for the
kurtosis formulas). Coefficients are exact integers, lowest degree first.
Two exponents of the ``nu = 9`` squared-process numerator are typeset
ambiguously in the source (``r^1{2}``, ``r^1{3}``); they are read as
``r^12`` and ``r^13``, which the agreement with :mod:`bilinear_taylor.lag1`
confirms to 1e-9.

These formulas are independent of the generic moment pipeline and serve as
its cross-validation oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, PoleError
from .innovations import CATALOG, raw_moments

__all__ = [
    "ROLES",
    "FAMILIES",
    "RationalFormula",
    "FORMULAS",
    "formula",
    "r_max",
    "eval_formula",
    "evaluate",
    "delta_poly",
    "export_json",
]

ROLES = ("rho1", "rho1_sq", "kurtosis")
FAMILIES = ("uniform0a", "exp", "pareto12", "pareto9")
POLE_TOL = 1e-300

Poly = tuple[int, ...]


@dataclass(frozen=True)
class RationalFormula:
    family: str
    role: str
    numerator: tuple[tuple[Poly, int], ...]
    denominator: tuple[tuple[Poly, int], ...]
    offset: int = 0

    def to_dict(self) -> dict:
        def facs(fs):
            return [{"coefficients": list(c), "power": p} for c, p in fs]

        return {
            "family": self.family,
            "role": self.role,
            "numerator_factors": facs(self.numerator),
            "denominator_factors": facs(self.denominator),
            "offset": self.offset,
            "domain": [0.0, r_max(self.family)],
        }


# uniform on ]0, alpha[
_U_RHO1_N = (-180, 120, -51, -4, 1)
_U_RHO1_D = (-180, 180, -177, 12, 7)
_U_N = (-604800, -480600, -155700, -257400, -2490, 48525, -6270, 6810, 10620, 11384,
        4012, -586, 94, -53, 6)
_U_D = (50400, 12600, 35700, 40200, 13490, 14015, 8360, -5210, -5999, -2407, -720, 114,
        177, -8)
_U_KN = (907200, -1814400, 4284000, -4510800, 3254460, -2030520, 1973540, -617175,
         -185700, 371005, -236308, 78747, -11496, 511)

# exponential with mean alpha
_E_RHO1_N = (2, -3, 7, -6, 2)
_E_RHO1_D = (1, -2, 19, -20, 6)
_E_N = (-5, -80, 65, -112, -1184, -5774, 10848, 12720, -9408, -17880, -16272, 52992,
        9216, -46656, 17280)
_E_D = (-5, 2, -21, -602, -9060, 11126, 13252, -26448, 16368, 13896, -12192, 13824,
        -12672, 4032)
_E_KN = (3, -12, 52, -134, 11815, -36752, 44802, 1062, -42648, 17028, 12240, 5616,
         -17280, 6048)

# Pareto, nu = 12
_P12_RHO1_N = (6050, -10230, 13035, -7524, 1296)
_P12_RHO1_D = (36300, -79200, 219255, -171160, 29472)
_P12_N = (-7043652000, -5638479000, -1900483200, -6228372150, -3064649280, 2622844140,
          24533447400, 19854650865, 11360213480, -16340416020, -30235824828,
          23037530976, 7650162960, -11215587456, 2802615552)
_P12_D = (-58697100, 14229600, -142425360, -468153840, -218936564, 536116224,
          616017864, 374454192, 130906149, -805701976, -15605040, 401099652,
          -245871648, 48736320)
_P12_KN = (599933276250, -2617890660000, 4970166270300, -5546727078200,
           59041720498845, -161234870633760, 126074334149694, 2238307939140,
           25296348317400, -57875913071352, -89078826937116, 180941306693040,
           -102607682886720, 19713391884288)

# Pareto, nu = 9
_P9_RHO1_N = (15680, -27720, 39564, -27864, 6561)
_P9_RHO1_D = (47040, -105840, 343119, -315504, 73791)
_P9_N = (-67737600, -83339200, 19038600, -88401600, -148138920, -511287075, 1466330040,
         1499354145, -1537629480, -1966005837, -602608896, 3869347563,
         -61620912, -2818841796, 1179090432)  # last three: r^12, r^13, r^14
_P9_D = (-627200, 235200, -1650600, -8601600, -13809280, 31729095, 27010080, -23002305,
         -21773448, -24182469, 58517640, 9248823, -50143536, 19665504)
_P9_KD = (15680, -35280, 114373, -105168, 24597)
_P9_KN = (62449049600, -281020723200, 532657440000, -582241598400, 25718506014670,
          -92872063045440, 100396353649230, -6337711636725, -8536591340550,
          -41782534519365, -62336742758694, 195729014255481, -145385404543008,
          35664808109193)

_R = ((0, 1), 1)


def _f(poly, power=1):
    return (tuple(poly), power)


FORMULAS: dict[tuple[str, str], RationalFormula] = {
    # r N / D
    ("uniform0a", "rho1"): RationalFormula("uniform0a", "rho1", (_R, _f(_U_RHO1_N)), (_f(_U_RHO1_D),)),
    # -(r / 12) N_u / D_u
    ("uniform0a", "rho1_sq"): RationalFormula(
        "uniform0a", "rho1_sq", (_f((0, -1)), _f(_U_N)), (_f((12,)), _f(_U_D))
    ),
    # -3(-3 + r^2) / (7 (-4 + r^3)(-5 + r^4)) * N*_u / D*_u - 3
    ("uniform0a", "kurtosis"): RationalFormula(
        "uniform0a",
        "kurtosis",
        (_f((9, 0, -3)), _f(_U_KN)),
        (_f((7,)), _f((-4, 0, 0, 1)), _f((-5, 0, 0, 0, 1)), _f(_U_RHO1_D, 2)),
        -3,
    ),
    # 2r N / D
    ("exp", "rho1"): RationalFormula("exp", "rho1", (_f((0, 2)), _f(_E_RHO1_N)), (_f(_E_RHO1_D),)),
    # 2r N_e / D_e
    ("exp", "rho1_sq"): RationalFormula("exp", "rho1_sq", (_f((0, 2)), _f(_E_N)), (_f(_E_D),)),
    # -3(-1 + 2r^2) / ((-1 + 6r^3)(-1 + 24r^4)) * N*_e / D*_e - 3
    ("exp", "kurtosis"): RationalFormula(
        "exp",
        "kurtosis",
        (_f((3, 0, -6)), _f(_E_KN)),
        (_f((-1, 0, 0, 6)), _f((-1, 0, 0, 0, 24)), _f(_E_RHO1_D, 2)),
        -3,
    ),
    # 44r N / (3 D)
    ("pareto12", "rho1"): RationalFormula(
        "pareto12", "rho1", (_f((0, 44)), _f(_P12_RHO1_N)), (_f((3,)), _f(_P12_RHO1_D))
    ),
    # (r / 55) N_p12 / D_p12
    ("pareto12", "rho1_sq"): RationalFormula(
        "pareto12", "rho1_sq", (_R, _f(_P12_N)), (_f((55,)), _f(_P12_D))
    ),
    # -2(-5 + 6r^2) / (49 (-3 + 4r^3)(-2 + 3r^4)) * N*_p12 / D*_p12 - 3
    ("pareto12", "kurtosis"): RationalFormula(
        "pareto12",
        "kurtosis",
        (_f((10, 0, -12)), _f(_P12_KN)),
        (_f((49,)), _f((-3, 0, 0, 4)), _f((-2, 0, 0, 0, 3)), _f(_P12_RHO1_D, 2)),
        -3,
    ),
    # 8r N / D
    ("pareto9", "rho1"): RationalFormula("pareto9", "rho1", (_f((0, 8)), _f(_P9_RHO1_N)), (_f(_P9_RHO1_D),)),
    # (r / 48) N_p9 / D_p9
    ("pareto9", "rho1_sq"): RationalFormula("pareto9", "rho1_sq", (_R, _f(_P9_N)), (_f((48,)), _f(_P9_D))),
    # (7 - 9r^2) / (9 (-2 + 3r^3)(-5 + 9r^4)) * N*_p9 / D*_p9 - 3
    ("pareto9", "kurtosis"): RationalFormula(
        "pareto9",
        "kurtosis",
        (_f((7, 0, -9)), _f(_P9_KN)),
        (_f((9,)), _f((-2, 0, 0, 3)), _f((-5, 0, 0, 0, 9)), _f(_P9_KD, 2)),
        -3,
    ),
}


def formula(family: str, role: str) -> RationalFormula:
    try:
        return FORMULAS[(family, role)]
    except KeyError:
        raise DomainError(
            f"no published formula for family={family!r}, role={role!r}; "
            f"families: {', '.join(FAMILIES)}; roles: {', '.join(ROLES)}"
        ) from None


def r_max(family: str) -> float:
    """Upper end of the stationarity interval in ``r`` (unit scale)."""
    if family not in FAMILIES:
        raise DomainError(f"no published formulas for family {family!r}")
    return raw_moments(CATALOG[family])[4] ** -0.25


def _horner(coeffs: Poly, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _product(factors, x, one):
    out = one
    for coeffs, power in factors:
        out = out * _horner(coeffs, x) ** power
    return out


def _exact(f: RationalFormula, r) -> Fraction:
    rv = float(r)
    lim = r_max(f.family)
    if not 0.0 < rv < lim:
        raise DomainError(f"r={rv!r} outside the stationarity interval (0, {lim:.12g}) of {f.family}")
    x = Fraction(rv)
    den = _product(f.denominator, x, Fraction(1))
    if abs(den) < POLE_TOL:
        raise PoleError(f"denominator of {f.family}/{f.role} vanishes at r={rv!r}")
    return _product(f.numerator, x, Fraction(1)) / den


def eval_formula(f: RationalFormula, r, exact: bool = False):
    """Evaluate a published formula at ``r`` (scalar, or array when not exact).

    Float mode runs Horner's scheme in extended precision (``np.longdouble``)
    and rounds once to float64. ``exact=True`` evaluates in rational
    arithmetic from the float value of ``r`` and returns the correctly
    rounded float.
    """
    if exact:
        return float(_exact(f, r) + f.offset)

    lim = r_max(f.family)
    scalar = np.ndim(r) == 0
    x = np.asarray(r, dtype=float)
    if not np.all((x > 0.0) & (x < lim)):
        raise DomainError(f"r outside the stationarity interval (0, {lim:.12g}) of {f.family}")
    xl = x.astype(np.longdouble)
    one = np.longdouble(1)
    num = _product(f.numerator, xl, one)
    den = _product(f.denominator, xl, one)
    if np.any(np.abs(den) < POLE_TOL):
        raise PoleError(f"denominator of {f.family}/{f.role} vanishes")
    out = (num / den + f.offset).astype(float)
    return float(out) if scalar else out


def evaluate(family: str, role: str, r, exact: bool = False):
    return eval_formula(formula(family, role), r, exact=exact)


def delta_poly(family: str, r, exact: bool = False):
    """Published ``rho_X(1) - rho_{X^2}(1)`` at ``r``."""
    if exact:
        # difference taken in rational arithmetic before rounding
        return float(_exact(formula(family, "rho1"), r) - _exact(formula(family, "rho1_sq"), r))
    return evaluate(family, "rho1", r) - evaluate(family, "rho1_sq", r)


def export_json(indent: int | None = 2) -> str:
    """All formula tables as JSON for external audit."""
    return json.dumps([FORMULAS[k].to_dict() for k in sorted(FORMULAS)], indent=indent)
