import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from bilinear_taylor.errors import DomainError, PoleError, StationarityError
from bilinear_taylor.innovations import CATALOG, InnovationSpec, MomentVector, from_name, raw_moments
from bilinear_taylor.moments import (
    ModelSpec,
    check_stationarity,
    max_admissible_beta,
    moment_table,
    x_moments,
    xeps_moments,
)

from conftest import batch_means_se, brute_force_path

NONNEG = ["uniform0a", "exp", "pareto12", "pareto9"]


def test_beta_zero_reduces_to_innovations():
    for spec in CATALOG.values():
        mu = raw_moments(spec)
        exe = xeps_moments(ModelSpec(0.0), mu)
        assert exe[1:] == tuple(mu[2 * n] for n in range(1, 5))
        table = x_moments(ModelSpec(0.0), mu)
        assert table.ex[1:] == tuple(mu[n] for n in range(1, 5))
        var = mu[2] - mu[1] ** 2
        k = (mu[4] - 4 * mu[3] * mu[1] + 6 * mu[2] * mu[1] ** 2 - 3 * mu[1] ** 4) / var**2 - 3
        assert table.excess_kurtosis == pytest.approx(k, rel=1e-10, abs=1e-12)


def test_exponential_base_case():
    exe = xeps_moments(ModelSpec(0.2), raw_moments(CATALOG["exp"]))
    assert exe[1] == pytest.approx(2 / (1 - 0.2), rel=1e-15)


def _exact_exe_exponential_beta_02():
    # hand-unrolled recursion in rationals: mu_i = i!, beta = 1/5
    from fractions import Fraction as F

    b = F(1, 5)
    mu = [F(math.factorial(i)) for i in range(9)]
    e1 = mu[2] / (1 - b * mu[1])
    e2 = (2 * b * mu[3] * e1 + mu[4]) / (1 - b**2 * mu[2])
    e3 = (3 * b**2 * mu[4] * e2 + 3 * b * mu[5] * e1 + mu[6]) / (1 - b**3 * mu[3])
    e4 = (4 * b**3 * mu[5] * e3 + 6 * b**2 * mu[6] * e2 + 4 * b * mu[7] * e1 + mu[8]) / (1 - b**4 * mu[4])
    return [1, e1, e2, e3, e4]


def test_exponential_recursion_unrolled_by_hand():
    exe = xeps_moments(ModelSpec(0.2), raw_moments(CATALOG["exp"]))
    for got, want in zip(exe, _exact_exe_exponential_beta_02()):
        assert got == pytest.approx(float(want), rel=1e-14)


MC_CELLS = [("exp", 0.2), ("uniform0a", 0.9), ("pareto12", 0.5), ("pareto9", 0.4)]
_DRAWS = {
    "exp": lambda rng: (lambda n: stats.expon.rvs(size=n, random_state=rng)),
    "uniform0a": lambda rng: (lambda n: stats.uniform.rvs(size=n, random_state=rng)),
    "pareto12": lambda rng: (lambda n: stats.pareto.rvs(12, size=n, random_state=rng)),
    "pareto9": lambda rng: (lambda n: stats.pareto.rvs(9, size=n, random_state=rng)),
}


@pytest.mark.parametrize("fam, beta", MC_CELLS)
def test_moments_against_monte_carlo(fam, beta):
    rng = np.random.default_rng(2024)
    x, eps = brute_force_path(_DRAWS[fam](rng), beta, 10**6)
    table = moment_table(CATALOG[fam], ModelSpec(beta))
    for n in range(1, 5):
        xe = (x * eps) ** n
        assert abs(xe.mean() - table.exe[n]) < 4 * batch_means_se(xe, np.mean), ("exe", n)
        xn = x**n
        assert abs(xn.mean() - table.ex[n]) < 4 * batch_means_se(xn, np.mean), ("ex", n)


def test_kurtosis_limits():
    k_u = moment_table(CATALOG["uniform0a"], ModelSpec(1e-9)).excess_kurtosis
    k_e = moment_table(CATALOG["exp"], ModelSpec(1e-9)).excess_kurtosis
    assert k_u == pytest.approx(-1.2, abs=1e-7)
    assert k_e == pytest.approx(6.0, abs=1e-7)


def test_uniform_kurtosis_nondecreasing_in_r():
    spec = CATALOG["uniform0a"]
    rmax = max_admissible_beta(raw_moments(spec))
    ks = [moment_table(spec, ModelSpec(r)).excess_kurtosis for r in np.linspace(0, rmax, 202)[1:-1]]
    assert np.all(np.diff(ks) >= 0)


def test_exponential_kurtosis_dips_before_rising():
    # K_e falls from 6 to about 5.5834 near r = 0.0598, then increases
    spec = CATALOG["exp"]
    rmax = max_admissible_beta(raw_moments(spec))
    r = np.linspace(0, rmax, 2002)[1:-1]
    ks = np.array([moment_table(spec, ModelSpec(v)).excess_kurtosis for v in r])
    i = int(np.argmin(ks))
    assert r[i] == pytest.approx(0.0598, abs=5e-4)
    assert ks[i] == pytest.approx(5.5834, abs=1e-3)
    assert np.all(np.diff(ks[: i + 1]) < 0)
    assert np.all(np.diff(ks[i:]) > 0)


@pytest.mark.parametrize(
    "fam, bound",
    [("uniform0a", 5 ** 0.25), ("exp", 24 ** -0.25), ("pareto12", (2 / 3) ** 0.25), ("pareto9", (5 / 9) ** 0.25)],
)
def test_fourth_moment_frontier_in_r(fam, bound):
    mu = raw_moments(CATALOG[fam])
    assert max_admissible_beta(mu) == pytest.approx(bound, rel=1e-14)
    assert check_stationarity(ModelSpec(bound * (1 - 1e-9)), CATALOG[fam]).x2_weakly_stationary
    assert not check_stationarity(ModelSpec(bound * (1 + 1e-9)), CATALOG[fam]).x2_weakly_stationary


def test_published_frontier_values():
    assert 5 ** 0.25 == pytest.approx(1.495, abs=5e-4)
    assert 24 ** -0.25 == pytest.approx(0.4518, abs=5e-5)
    # published Table-1 values are the frontier truncated to the printed digits
    for name, digits, printed in (("unif-sym", 3, 0.863), ("normal", 2, 0.75), ("t30", 2, 0.74), ("t9", 2, 0.69)):
        b = max_admissible_beta(raw_moments(CATALOG[name]))
        assert math.floor(b * 10**digits) / 10**digits == pytest.approx(printed, abs=1e-12)


def test_beta_zero_stationarity():
    rep = check_stationarity(ModelSpec(0.0), CATALOG["exp"])
    assert rep.x_weakly_stationary and rep.x2_weakly_stationary
    assert rep.lyapunov_gamma == -math.inf
    assert rep.margin == 1.0


@settings(max_examples=200, deadline=None)
@given(name=st.sampled_from(sorted(CATALOG)), frac=st.floats(-1.6, 1.6))
def test_stationarity_implications(name, frac):
    spec = CATALOG[name]
    beta = frac * max_admissible_beta(raw_moments(spec))
    rep = check_stationarity(ModelSpec(beta), spec)
    if rep.x2_weakly_stationary:
        assert rep.x_weakly_stationary
    if rep.x_weakly_stationary:
        assert rep.lyapunov_gamma < 0


@settings(max_examples=200, deadline=None)
@given(name=st.sampled_from(sorted(CATALOG)), frac=st.floats(0.0, 0.999))
def test_moment_table_invariants(name, frac):
    spec = CATALOG[name]
    beta = frac * max_admissible_beta(raw_moments(spec))
    t = moment_table(spec, ModelSpec(beta))
    assert t.variance > 0
    assert t.variance == pytest.approx(t.ex[2] - t.ex[1] ** 2, rel=1e-12)
    assert t.ex[2] >= t.ex[1] ** 2
    assert t.ex[4] >= t.ex[2] ** 2
    if spec.is_nonnegative:
        assert min(t.exe) >= 0 and min(t.ex) >= 0


@settings(max_examples=100, deadline=None)
@given(name=st.sampled_from(NONNEG), frac=st.floats(0.001, 0.999), alpha=st.sampled_from([0.25, 0.5, 2.0, 4.0]))
def test_moments_scale_with_alpha(name, frac, alpha):
    # E(X^n) is homogeneous of degree n in alpha at fixed r
    r = frac * max_admissible_beta(raw_moments(CATALOG[name]))
    base = moment_table(CATALOG[name], ModelSpec(r))
    scaled = moment_table(from_name(name, alpha=alpha), ModelSpec(r / alpha))
    for n in range(1, 5):
        assert scaled.ex[n] == pytest.approx(alpha**n * base.ex[n], rel=1e-12)
    assert scaled.excess_kurtosis == pytest.approx(base.excess_kurtosis, rel=1e-12)


def test_errors():
    mu = raw_moments(CATALOG["exp"])
    with pytest.raises(StationarityError, match="stationarity violated"):
        x_moments(ModelSpec(0.5), mu)
    with pytest.raises(DomainError):
        x_moments(ModelSpec(0.1, lag=2), mu)
    with pytest.raises(DomainError):
        ModelSpec(0.1, lag=0)
    with pytest.raises(DomainError):
        ModelSpec(float("nan"))
    edge = max_admissible_beta(mu) * (1 - 1e-15)
    with pytest.raises(PoleError):
        x_moments(ModelSpec(edge), mu)


def test_pole_guard_on_lower_orders():
    # a synthetic law with beta*mu_1 at the pole but beta^4*mu_4 < 1 (not a
    # catalog law; moment vectors of real laws cannot do this)
    mu = MomentVector((1.0, 2.0, 4.1, 8.5, 10.0, 40.0, 90.0, 200.0, 500.0))
    with pytest.raises(PoleError):
        xeps_moments(ModelSpec(0.5), mu)


def test_negative_beta_symmetric_laws():
    # for symmetric laws the sign of beta only flips odd moments
    spec = CATALOG["normal"]
    pos = moment_table(spec, ModelSpec(0.5))
    neg = moment_table(spec, ModelSpec(-0.5))
    assert neg.ex[2] == pytest.approx(pos.ex[2])
    assert neg.ex[4] == pytest.approx(pos.ex[4])
