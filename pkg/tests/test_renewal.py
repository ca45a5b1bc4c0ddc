"""Renewal-series expectations and the empirical first-passage oracle."""

import numpy as np
import pytest
import scipy.integrate
import scipy.stats

from driftinv import (
    ParameterError,
    PolicyParams,
    ProcessParams,
    RenewalSeriesConfig,
    SeriesNotConvergedError,
    expected_integrated_renewals,
    expected_renewals,
    fpt_empirical_cdf,
    fpt_gamma_spec,
    gamma_cdf,
)


def test_fpt_spec_reference_values(ref_process, ref_policy):
    spec = fpt_gamma_spec(ref_process, ref_policy, 1)
    assert (spec.shape, spec.rate) == (10.0, 10.0)
    spec = fpt_gamma_spec(ref_process, ref_policy, 2)
    assert (spec.shape, spec.rate) == (20.0, 10.0)


def test_fpt_spec_exponential_case():
    p = ProcessParams(mu=1.0, alpha=1.0, lam=1.0)
    pol = PolicyParams(x0=2.0, a=1.0, Q=1.0)
    spec = fpt_gamma_spec(p, pol, 1)
    assert (spec.shape, spec.rate) == (1.0, 1.0)


def test_fpt_spec_bad_index(ref_process, ref_policy):
    with pytest.raises(ParameterError):
        fpt_gamma_spec(ref_process, ref_policy, 0)


def test_series_config_validation():
    with pytest.raises(ParameterError):
        RenewalSeriesConfig(tail_tol=0.0)
    with pytest.raises(ParameterError):
        RenewalSeriesConfig(n_max=0)


def test_expected_renewals_at_zero(ref_process, ref_policy, series_cfg):
    assert expected_renewals(ref_process, ref_policy, 0.0, series_cfg) == 0.0
    assert expected_integrated_renewals(ref_process, ref_policy, 0.0, series_cfg) == 0.0


def test_huge_order_quantity_leaves_first_term(ref_process, series_cfg):
    # with Q enormous, later thresholds are unreachable
    pol = PolicyParams(x0=100.0, a=50.0, Q=1e9)
    t = 5.0
    want = gamma_cdf(fpt_gamma_spec(ref_process, pol, 1), t)
    assert expected_renewals(ref_process, pol, t, series_cfg) == pytest.approx(want, abs=1e-15)


def test_terms_strictly_decreasing_in_n(ref_process, ref_policy):
    t = 8.0
    terms = [
        gamma_cdf(fpt_gamma_spec(ref_process, ref_policy, n), t) for n in range(1, 12)
    ]
    assert all(b < a for a, b in zip(terms, terms[1:]))


def test_monotone_in_time(ref_process, ref_policy, series_cfg):
    grid = np.linspace(0.0, 12.0, 49)
    er = [expected_renewals(ref_process, ref_policy, t, series_cfg) for t in grid]
    ei = [expected_integrated_renewals(ref_process, ref_policy, t, series_cfg) for t in grid]
    assert all(b >= a for a, b in zip(er, er[1:]))
    assert all(b >= a for a, b in zip(ei, ei[1:]))
    assert all(v >= 0 for v in ei)


def test_more_renewals_with_smaller_orders(ref_process, series_cfg):
    # shrinking Q raises every term, so the sum is nondecreasing in 1/Q
    t = 6.0
    values = [
        expected_renewals(
            ref_process, PolicyParams(x0=100.0, a=50.0, Q=Q), t, series_cfg
        )
        for Q in (80.0, 60.0, 50.0, 30.0)
    ]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_integrated_bounded_by_t_times_count(ref_process, ref_policy, series_cfg):
    for t in (1.0, 3.0, 7.0):
        er = expected_renewals(ref_process, ref_policy, t, series_cfg)
        ei = expected_integrated_renewals(ref_process, ref_policy, t, series_cfg)
        assert 0.0 <= ei <= t * er


def test_integrated_matches_quadrature_of_count(ref_process, ref_policy, series_cfg):
    # Fubini: E[integral of R over [0,t]] == integral of E[R_s] ds
    t = 6.0
    want, _ = scipy.integrate.quad(
        lambda s: expected_renewals(ref_process, ref_policy, s, series_cfg), 0.0, t, limit=200
    )
    got = expected_integrated_renewals(ref_process, ref_policy, t, series_cfg)
    assert got == pytest.approx(want, abs=1e-6)


def test_series_not_converged_error(ref_process, ref_policy):
    cfg = RenewalSeriesConfig(tail_tol=1e-12, n_max=3)
    with pytest.raises(SeriesNotConvergedError) as exc:
        expected_renewals(ref_process, ref_policy, 10.0, cfg)
    err = exc.value
    want_partial = sum(
        gamma_cdf(fpt_gamma_spec(ref_process, ref_policy, n), 10.0) for n in (1, 2, 3)
    )
    assert err.partial_sum == pytest.approx(want_partial, abs=1e-12)
    assert err.n_terms == 3
    assert err.last_term >= 1e-12
    assert err.t == 10.0


def test_empirical_cdf_basics(ref_process, ref_policy):
    grid = np.array([0.0, 1.0, 2.0, 5.0])
    ecdf = fpt_empirical_cdf(ref_process, ref_policy, 1, grid, n_paths=500, seed=3)
    assert ecdf[0] == 0.0
    assert np.all(np.diff(ecdf) >= 0)
    assert np.all((ecdf >= 0) & (ecdf <= 1))


def test_empirical_cdf_drift_only_limit():
    # with jumps vanishingly rare, the first passage is a/mu exactly
    p = ProcessParams(mu=5.0, alpha=10.0, lam=1e-9)
    pol = PolicyParams(x0=100.0, a=50.0, Q=50.0)
    grid = np.array([9.0, 9.999, 10.0, 10.5])
    ecdf = fpt_empirical_cdf(p, pol, 1, grid, n_paths=200, seed=1)
    assert np.allclose(ecdf, [0.0, 0.0, 1.0, 1.0])


def test_empirical_cdf_matches_exact_law(ref_process, ref_policy):
    # monotone demand: P(T_1 <= t) = P(D_t >= a) = P(N_t >= ceil((a - mu t)/alpha))
    n_paths = 40_000
    grid = np.array([1.0, 2.0, 3.0, 5.0])
    ecdf = fpt_empirical_cdf(ref_process, ref_policy, 1, grid, n_paths=n_paths, seed=21)
    for t, est in zip(grid, ecdf):
        need = np.ceil((ref_policy.a - ref_process.mu * t) / ref_process.alpha)
        want = float(scipy.stats.poisson.sf(need - 1, ref_process.lam * t))
        stderr = np.sqrt(max(want * (1 - want), 1e-12) / n_paths)
        assert abs(est - want) <= 4 * stderr
