"""Lag-1 autocorrelations of ``X`` and ``X^2`` for any innovation law.

Everything here is expressed through the raw moments ``mu_1..mu_8`` and the
tables of :mod:`bilinear_taylor.moments`, so the four non-negative families
are plain data rather than separate code paths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .innovations import InnovationSpec, MomentVector, raw_moments
from .moments import ModelSpec, _ex_core, _exe_core, _require_lag1, _variance_kurtosis

__all__ = [
    "CrossMoments",
    "Lag1Report",
    "cross_moment_lag1",
    "cross_moment_sq_lag1",
    "cross_moments",
    "lag1_report",
    "lag1_curves",
]

CORR_SLACK = 1e-9


@dataclass(frozen=True)
class CrossMoments:
    """``m11 = E(X_t X_{t-1})``, ``m22 = E(X_t^2 X_{t-1}^2)`` and the
    auxiliary expectations ``e = (E1, ..., E6)`` used to build ``m22``."""

    m11: float
    m22: float
    e: tuple[float, ...]


@dataclass(frozen=True)
class Lag1Report:
    rho1: float
    rho1_sq: float
    delta: float
    excess_kurtosis: float
    r: float | None = None

    @property
    def taylor_holds(self) -> bool:
        return self.delta > 0


def cross_moment_lag1(b, mu: MomentVector, exe, ex):
    """``E(X_t X_{t-1}) = b^3 mu1 E(X^2e^2) + 2 b^2 mu2 E(Xe) + mu1 E(X) + b mu3``."""
    return b**3 * mu[1] * exe[2] + 2.0 * b**2 * mu[2] * exe[1] + mu[1] * ex[1] + b * mu[3]


def cross_moment_sq_lag1(b, mu: MomentVector, exe, ex):
    """Return ``(m22, (E1, ..., E6))``."""
    e1 = b**2 * mu[2] * exe[4] + 2.0 * b * mu[3] * exe[3] + mu[4] * exe[2]
    e2 = b**2 * mu[3] * exe[3] + 2.0 * b * mu[4] * exe[2] + mu[5] * exe[1]
    e3 = b * mu[1] * exe[3] + mu[2] * exe[2]
    e4 = b * mu[2] * exe[2] + mu[3] * exe[1]
    e5 = b**2 * mu[4] * exe[2] + 2.0 * b * mu[5] * exe[1] + mu[6]
    e6 = b * mu[3] * exe[1] + mu[4]
    m22 = (
        b**4 * e1
        + 2.0 * b**3 * e2
        + 2.0 * b**3 * mu[1] * e3
        + 4.0 * b**2 * mu[1] * e4
        + b**2 * e5
        + 2.0 * b * mu[1] * e6
        + b**2 * mu[2] * exe[2]
        + 2.0 * b * mu[1] * mu[2] * exe[1]
        + mu[2] ** 2
    )
    return m22, (e1, e2, e3, e4, e5, e6)


def cross_moments(model: ModelSpec, mu: MomentVector) -> CrossMoments:
    _require_lag1(model)
    b = float(model.beta)
    exe = _exe_core(b, mu)
    ex = _ex_core(b, mu, exe)
    m11 = cross_moment_lag1(b, mu, exe, ex)
    m22, e = cross_moment_sq_lag1(b, mu, exe, ex)
    return CrossMoments(float(m11), float(m22), tuple(float(v) for v in e))


def _lag1_core(b, mu: MomentVector):
    exe = _exe_core(b, mu)
    ex = _ex_core(b, mu, exe)
    var, kurt = _variance_kurtosis(ex)
    m11 = cross_moment_lag1(b, mu, exe, ex)
    m22, _ = cross_moment_sq_lag1(b, mu, exe, ex)
    rho1 = (m11 - ex[1] ** 2) / var
    rho1_sq = (m22 - ex[2] ** 2) / (ex[4] - ex[2] ** 2)
    if np.any(np.abs(rho1) > 1.0 + CORR_SLACK) or np.any(np.abs(rho1_sq) > 1.0 + CORR_SLACK):
        raise NumericalError("autocorrelation outside [-1, 1]; evaluation is numerically unreliable here")
    return rho1, rho1_sq, kurt


def lag1_report(spec: InnovationSpec, model: ModelSpec) -> Lag1Report:
    """Closed-form ``rho_X(1)``, ``rho_{X^2}(1)``, their difference and the
    excess kurtosis of ``X``."""
    _require_lag1(model)
    rho1, rho1_sq, kurt = _lag1_core(float(model.beta), raw_moments(spec))
    r = spec.alpha * model.beta if spec.is_scale_family else None
    return Lag1Report(float(rho1), float(rho1_sq), float(rho1 - rho1_sq), float(kurt), r)


def lag1_curves(mu: MomentVector, betas):
    """Vectorised ``(rho1, rho1_sq, kurtosis)`` over an array of betas."""
    b = np.asarray(betas, dtype=float)
    if b.ndim != 1:
        raise DomainError("betas must be one-dimensional")
    rho1, rho1_sq, kurt = _lag1_core(b, mu)
    return np.asarray(rho1), np.asarray(rho1_sq), np.asarray(kurt)
