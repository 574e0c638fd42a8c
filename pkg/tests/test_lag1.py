import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from bilinear_taylor import reference
from bilinear_taylor.errors import DomainError
from bilinear_taylor.innovations import CATALOG, from_name, raw_moments
from bilinear_taylor.lag1 import cross_moments, lag1_curves, lag1_report
from bilinear_taylor.moments import ModelSpec, max_admissible_beta
from bilinear_taylor.montecarlo import sample_acf1
from bilinear_taylor.validation import interior_grid, max_relative_discrepancy

from conftest import batch_means_se, brute_force_path

NONNEG = ["uniform0a", "exp", "pareto12", "pareto9"]


def test_iid_case():
    for spec in CATALOG.values():
        mu = raw_moments(spec)
        cm = cross_moments(ModelSpec(0.0), mu)
        assert cm.m11 == pytest.approx(mu[1] ** 2, abs=1e-15)
        assert cm.m22 == mu[2] ** 2
        rep = lag1_report(spec, ModelSpec(0.0))
        assert rep.delta == 0.0 and rep.rho1 == 0.0 and rep.rho1_sq == 0.0
        assert not rep.taylor_holds


@pytest.mark.parametrize("fam", NONNEG)
@pytest.mark.parametrize("role", reference.ROLES)
def test_matches_published_formulas(fam, role):
    r = interior_grid(fam, 100)
    curves = dict(zip(reference.ROLES, lag1_curves(raw_moments(CATALOG[fam]), r)))
    printed = reference.evaluate(fam, role, r)
    np.testing.assert_allclose(curves[role], printed, rtol=1e-9, atol=0)


def test_scalar_and_vector_paths_agree():
    spec = CATALOG["pareto9"]
    r = interior_grid("pareto9", 7)
    rho1, rho1_sq, k = lag1_curves(raw_moments(spec), r)
    for i, v in enumerate(r):
        rep = lag1_report(spec, ModelSpec(float(v)))
        assert (rep.rho1, rep.rho1_sq, rep.excess_kurtosis) == (rho1[i], rho1_sq[i], k[i])


def test_max_relative_discrepancy_below_threshold():
    gaps = max_relative_discrepancy(100)
    assert len(gaps) == 12
    assert max(gaps.values()) < 1e-9


def test_report_examples():
    assert lag1_report(CATALOG["uniform0a"], ModelSpec(1.0)).delta < 0
    assert lag1_report(CATALOG["exp"], ModelSpec(0.1)).delta < 0
    for r in (0.1, 0.45, 0.9):
        assert lag1_report(CATALOG["pareto12"], ModelSpec(r)).taylor_holds
    # exponential with mean 0.2 and beta 0.5
    rep = lag1_report(from_name("exp", alpha=0.2), ModelSpec(0.5))
    assert rep.r == pytest.approx(0.1)
    assert rep.delta < 0 < rep.excess_kurtosis
    assert lag1_report(CATALOG["normal"], ModelSpec(0.5)).r is None


@pytest.mark.parametrize("fam", NONNEG)
@pytest.mark.parametrize("alpha", [2.0, 0.5, 8.0])
def test_reduced_coordinate_invariance_exact(fam, alpha):
    # power-of-two rescaling of (alpha, beta) is exact in binary floating point
    for r in interior_grid(fam, 25):
        a = lag1_report(CATALOG[fam], ModelSpec(float(r)))
        b = lag1_report(from_name(fam, alpha=alpha), ModelSpec(float(r) / alpha))
        assert (a.rho1, a.rho1_sq, a.delta, a.excess_kurtosis) == (b.rho1, b.rho1_sq, b.delta, b.excess_kurtosis)
        assert b.r == pytest.approx(a.r, rel=1e-15)


@settings(max_examples=100, deadline=None)
@given(fam=st.sampled_from(NONNEG), frac=st.floats(0.001, 0.999), alpha=st.floats(0.1, 10))
def test_reduced_coordinate_invariance_general_alpha(fam, frac, alpha):
    r = frac * max_admissible_beta(raw_moments(CATALOG[fam]))
    a = lag1_report(CATALOG[fam], ModelSpec(r))
    b = lag1_report(from_name(fam, alpha=alpha), ModelSpec(r / alpha))
    assert b.delta == pytest.approx(a.delta, rel=1e-9, abs=1e-13)
    assert b.excess_kurtosis == pytest.approx(a.excess_kurtosis, rel=1e-9)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_bounded_correlations_on_dense_grid(name):
    mu = raw_moments(CATALOG[name])
    bmax = max_admissible_beta(mu)
    lo = -bmax if CATALOG[name].is_symmetric else 0.0
    b = np.linspace(lo, bmax, 4001)[1:-1]
    rho1, rho1_sq, _ = lag1_curves(mu, b)
    assert np.all(np.abs(rho1) <= 1) and np.all(np.abs(rho1_sq) <= 1)


@pytest.mark.parametrize("fam", NONNEG)
def test_continuity_at_origin(fam):
    assert abs(lag1_report(CATALOG[fam], ModelSpec(1e-6)).delta) < 1e-4


@pytest.mark.parametrize("fam", NONNEG)
def test_cross_moments_nonnegative(fam):
    mu = raw_moments(CATALOG[fam])
    for b in interior_grid(fam, 20):
        cm = cross_moments(ModelSpec(float(b)), mu)
        assert cm.m11 >= 0 and cm.m22 >= 0 and min(cm.e) >= 0


def test_lag_two_rejected():
    with pytest.raises(DomainError):
        lag1_report(CATALOG["exp"], ModelSpec(0.1, lag=2))


_DRAWS = {
    "exp": lambda rng: (lambda n: stats.expon.rvs(size=n, random_state=rng)),
    "uniform0a": lambda rng: (lambda n: stats.uniform.rvs(size=n, random_state=rng)),
    "pareto12": lambda rng: (lambda n: stats.pareto.rvs(12, size=n, random_state=rng)),
    "pareto9": lambda rng: (lambda n: stats.pareto.rvs(9, size=n, random_state=rng)),
}


@pytest.mark.parametrize("fam, beta", [("exp", 0.2), ("uniform0a", 0.9), ("pareto12", 0.5), ("pareto9", 0.4)])
def test_autocorrelations_against_monte_carlo(fam, beta):
    rng = np.random.default_rng(77)
    x, _ = brute_force_path(_DRAWS[fam](rng), beta, 10**6)
    rep = lag1_report(CATALOG[fam], ModelSpec(beta))
    cm = cross_moments(ModelSpec(beta), raw_moments(CATALOG[fam]))
    for stat, want in (
        (lambda y: sample_acf1(y), rep.rho1),
        (lambda y: sample_acf1(y, "square"), rep.rho1_sq),
        (lambda y: np.mean(y[1:] * y[:-1]), cm.m11),
        (lambda y: np.mean(y[1:] ** 2 * y[:-1] ** 2), cm.m22),
    ):
        assert abs(stat(x) - want) < 4 * batch_means_se(x, stat)


@pytest.mark.parametrize("fam, beta", [("uniform0a", 0.9), ("pareto12", 0.5)])
def test_auxiliary_expectations_against_monte_carlo(fam, beta):
    rng = np.random.default_rng(5)
    x, e = brute_force_path(_DRAWS[fam](rng), beta, 10**6)
    xt, xp, et, ep = x[1:], x[:-1], e[1:], e[:-1]
    samples = [
        xt**2 * xp**2 * et**2 * ep**2,
        xt**2 * xp * et**3 * ep,
        xt * xp**2 * et * ep**2,
        xt * xp * et**2 * ep,
        xt**2 * et**4,
        xt * et**3,
    ]
    cm = cross_moments(ModelSpec(beta), raw_moments(CATALOG[fam]))
    for i, (s, want) in enumerate(zip(samples, cm.e), start=1):
        assert abs(s.mean() - want) < 4 * batch_means_se(s, np.mean), f"E{i}"
