"""Cross-validation of the generic lag-1 analytics against the published formulas."""

from __future__ import annotations

import numpy as np

from . import reference
from .innovations import CATALOG, raw_moments
from .lag1 import lag1_curves


def interior_grid(family: str, points: int = 100) -> np.ndarray:
    rm = reference.r_max(family)
    return np.linspace(0.01 * rm, 0.99 * rm, points)


def max_relative_discrepancy(points: int = 100) -> dict[tuple[str, str], float]:
    """Max of ``|generic - published| / |published|`` per (family, role)."""
    out = {}
    for fam in reference.FAMILIES:
        r = interior_grid(fam, points)
        curves = lag1_curves(raw_moments(CATALOG[fam]), r)
        for role, generic in zip(reference.ROLES, curves):
            printed = reference.evaluate(fam, role, r)
            out[(fam, role)] = float(np.max(np.abs(generic - printed) / np.abs(printed)))
    return out
