import numpy as np
import pytest

from driftinv import (
    CostParams,
    PolicyParams,
    ProcessParams,
    RenewalSeriesConfig,
)


@pytest.fixture(scope="session")
def ref_process():
    """Reference demand process: drift 5, jumps of 10 at unit rate."""
    return ProcessParams(mu=5.0, alpha=10.0, lam=1.0)


@pytest.fixture(scope="session")
def ref_policy():
    return PolicyParams(x0=100.0, a=50.0, Q=50.0)


@pytest.fixture(scope="session")
def ref_costs():
    return CostParams(c_o=5.0, c_h=1.0, c_so=10.0)


@pytest.fixture(scope="session")
def series_cfg():
    return RenewalSeriesConfig()


def exact_expected_orders(process, policy, t, kmax=400):
    """Exact E[order count at t] from the Poisson law of the monotone
    demand: orders at t = max(floor((D_t - a)/Q) + 1, 0)."""
    from scipy.stats import poisson

    ks = np.arange(kmax)
    pmf = poisson.pmf(ks, process.lam * t)
    demand = process.mu * t + process.alpha * ks
    orders = np.maximum(np.floor((demand - policy.a) / policy.Q).astype(int) + 1, 0)
    return float((pmf * orders).sum())
