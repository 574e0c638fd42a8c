"""Stationarity checks and moments of order <= 4 of the bilinear process.

For ``X_t = beta * X_{t-1} * eps_{t-1} + eps_t`` with i.i.d. innovations the
mixed moments ``E(X^n eps^n)`` satisfy

    E(X^n eps^n) (1 - beta^n mu_n) = sum_{i=1..n} C(n, i) beta^(n-i) mu_(n+i) E(X^(n-i) eps^(n-i))

and the plain moments follow as

    E(X^n) = sum_{i=0..n} C(n, i) beta^(n-i) mu_i E(X^(n-i) eps^(n-i)).

The core routines accept either a float ``beta`` or a numpy array of them
(the region finder evaluates whole grids at once).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DegenerateError, DomainError, PoleError, StationarityError
from .innovations import InnovationSpec, MomentVector, expected_log_abs, raw_moments

__all__ = [
    "ModelSpec",
    "StationarityReport",
    "MomentTable",
    "check_stationarity",
    "max_admissible_beta",
    "xeps_moments",
    "x_moments",
    "moment_table",
]

POLE_TOL = 1e-12
VARIANCE_TOL = 1e-14


@dataclass(frozen=True)
class ModelSpec:
    """Coefficient and lag of ``X_t = beta X_{t-k} eps_{t-k} + eps_t``."""

    beta: float
    lag: int = 1

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise DomainError(f"beta must be finite, got {self.beta!r}")
        if int(self.lag) != self.lag or self.lag < 1:
            raise DomainError(f"lag must be a positive integer, got {self.lag!r}")


@dataclass(frozen=True)
class StationarityReport:
    x_weakly_stationary: bool
    x2_weakly_stationary: bool
    lyapunov_gamma: float | None
    margin: float


@dataclass(frozen=True)
class MomentTable:
    """``exe[n] = E(X^n eps^n)`` and ``ex[n] = E(X^n)``, index 0 holds 1."""

    exe: tuple[float, ...]
    ex: tuple[float, ...]
    variance: float
    excess_kurtosis: float


def check_stationarity(model: ModelSpec, spec: InnovationSpec, mu: MomentVector | None = None) -> StationarityReport:
    mu = raw_moments(spec) if mu is None else mu
    b = model.beta
    if b == 0.0:
        gamma = -math.inf
    else:
        gamma = math.log(abs(b)) + expected_log_abs(spec)
    return StationarityReport(
        x_weakly_stationary=b * b * mu[2] < 1.0,
        x2_weakly_stationary=b**4 * mu[4] < 1.0,
        lyapunov_gamma=gamma,
        margin=1.0 - b**4 * mu[4],
    )


def max_admissible_beta(mu: MomentVector) -> float:
    """Supremum of ``|beta|`` with ``beta^4 mu_4 < 1``."""
    return mu[4] ** -0.25


def _require_lag1(model: ModelSpec) -> None:
    if model.lag != 1:
        raise DomainError(f"closed-form moments need lag 1, got lag {model.lag}")


def _exe_core(b, mu: MomentVector) -> list:
    """Mixed moments ``E(X^n eps^n)``, n = 0..4, for scalar or array beta."""
    fourth = np.abs(b) ** 4 * mu[4]
    if np.any(fourth >= 1.0):
        worst = float(np.max(fourth))
        raise StationarityError(
            f"stationarity violated: beta^4*mu_4 = {worst:.6g} >= 1 "
            f"(need |beta| < {max_admissible_beta(mu):.6g})"
        )
    exe = [1.0]
    for n in range(1, 5):
        growth = b**n * mu[n]
        if np.any(np.abs(growth) >= 1.0 - POLE_TOL):
            raise PoleError(f"pole in moment recursion: |beta^{n} mu_{n}| >= 1 - {POLE_TOL:g}")
        acc = 0.0
        for i in range(1, n + 1):
            acc = acc + comb(n, i) * b ** (n - i) * mu[n + i] * exe[n - i]
        exe.append(acc / (1.0 - growth))
    return exe


def _ex_core(b, mu: MomentVector, exe: list) -> list:
    ex = [1.0]
    for n in range(1, 5):
        acc = 0.0
        for i in range(0, n + 1):
            acc = acc + comb(n, i) * b ** (n - i) * mu[i] * exe[n - i]
        ex.append(acc)
    return ex


def _variance_kurtosis(ex: list):
    m1 = ex[1]
    var = ex[2] - m1 * m1
    if np.any(var <= VARIANCE_TOL):
        raise DegenerateError("variance of X is not positive")
    c4 = ex[4] - 4.0 * ex[3] * m1 + 6.0 * ex[2] * m1 * m1 - 3.0 * m1**4
    return var, c4 / (var * var) - 3.0


def xeps_moments(model: ModelSpec, mu: MomentVector) -> tuple[float, ...]:
    """``(1, E(X eps), E(X^2 eps^2), E(X^3 eps^3), E(X^4 eps^4))``."""
    _require_lag1(model)
    return tuple(float(v) for v in _exe_core(float(model.beta), mu))


def x_moments(model: ModelSpec, mu: MomentVector) -> MomentTable:
    _require_lag1(model)
    b = float(model.beta)
    exe = _exe_core(b, mu)
    ex = _ex_core(b, mu, exe)
    var, kurt = _variance_kurtosis(ex)
    return MomentTable(
        exe=tuple(float(v) for v in exe),
        ex=tuple(float(v) for v in ex),
        variance=float(var),
        excess_kurtosis=float(kurt),
    )


def moment_table(spec: InnovationSpec, model: ModelSpec) -> MomentTable:
    return x_moments(model, raw_moments(spec))
