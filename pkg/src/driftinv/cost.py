"""Closed-form expected inventory and expected total cost.

Expected inventory is x0 - (mu + alpha*lam) t + Q * E[orders by t]; the
expected total cost decomposes into ordering, holding and shortage
components, with the shortage component fixed at zero in the closed
form (the stockout probability is treated as negligible).  The Monte
Carlo module measures the true shortage so that approximation error
stays observable.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .params import CostParams, PolicyParams, ProcessParams
from .renewal import (
    RenewalSeriesConfig,
    expected_integrated_renewals,
    expected_renewals,
)

CSV_HEADER = "a,Q,c_h,c_o,c_so,mode,t,ordering,holding,shortage,total"


@dataclass(frozen=True)
class CostBreakdown:
    ordering: float
    holding: float
    shortage: float
    total: float
    t: float


@dataclass(frozen=True)
class CostCurve:
    grid: np.ndarray
    points: list = field(default_factory=list)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=np.float64)
        object.__setattr__(self, "grid", grid)
        if grid.size and np.any(np.diff(grid) <= 0):
            raise ParameterError("curve grid must be strictly increasing")
        if len(self.points) != grid.size:
            raise ParameterError(
                f"curve has {len(self.points)} points for {grid.size} grid times"
            )

    def totals(self) -> np.ndarray:
        return np.array([p.total for p in self.points])


def expected_inventory(
    params: ProcessParams,
    policy: PolicyParams,
    t: float,
    cfg: RenewalSeriesConfig,
) -> float:
    """E[inventory at t] = x0 - (mu + alpha*lam) t + Q E[orders by t]."""
    return (
        policy.x0
        - params.demand_rate * t
        + policy.Q * expected_renewals(params, policy, t, cfg)
    )


def expected_total_cost(
    params: ProcessParams,
    policy: PolicyParams,
    costs: CostParams,
    t: float,
    cfg: RenewalSeriesConfig,
) -> CostBreakdown:
    er = expected_renewals(params, policy, t, cfg)
    ei = expected_integrated_renewals(params, policy, t, cfg)
    ordering = costs.order_cost(policy.Q) * er
    holding = costs.c_h * (
        policy.x0 * t - 0.5 * t * t * params.demand_rate + policy.Q * ei
    )
    shortage = 0.0
    return CostBreakdown(
        ordering=ordering,
        holding=holding,
        shortage=shortage,
        total=ordering + holding + shortage,
        t=t,
    )


def cost_curve(
    params: ProcessParams,
    policy: PolicyParams,
    costs: CostParams,
    grid,
    cfg: RenewalSeriesConfig,
) -> CostCurve:
    grid = np.asarray(grid, dtype=np.float64)
    points = [expected_total_cost(params, policy, costs, float(t), cfg) for t in grid]
    return CostCurve(grid=grid, points=points)


def argmax_time(curve: CostCurve):
    """Grid time with the largest total; earliest time wins ties."""
    if curve.grid.size == 0:
        raise ParameterError("cannot take the argmax of an empty curve")
    totals = curve.totals()
    idx = int(np.argmax(totals))  # np.argmax returns the first maximizer
    return float(curve.grid[idx]), float(totals[idx])


def negative_inventory_times(
    params: ProcessParams,
    policy: PolicyParams,
    grid,
    cfg: RenewalSeriesConfig,
) -> list:
    """Grid times where the closed-form expected inventory is negative.

    Late times can go negative once the quadratic demand term outruns
    the truncated series; flagged so reports can mark them."""
    return [
        float(t)
        for t in np.asarray(grid, dtype=np.float64)
        if expected_inventory(params, policy, float(t), cfg) < 0
    ]


def sweep(
    params: ProcessParams,
    costs_list,
    a_list,
    Q_list,
    grid,
    cfg: RenewalSeriesConfig,
    x0: float = 100.0,
):
    """Cross-product evaluation over (a, Q, costs, t), in that
    lexicographic order.  Yields (a, Q, costs, t, CostBreakdown) rows."""
    if not (len(costs_list) and len(a_list) and len(Q_list)):
        raise ParameterError("sweep lists must be non-empty")
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise ParameterError("sweep grid must be non-empty")
    rows = []
    for a in a_list:
        for Q in Q_list:
            policy = PolicyParams(x0=x0, a=a, Q=Q)
            for costs in costs_list:
                for t in grid:
                    bd = expected_total_cost(params, policy, costs, float(t), cfg)
                    rows.append((a, Q, costs, float(t), bd))
    return rows


def _format_row(a, Q, costs, t, bd):
    mode = costs.ordering_mode.value
    return (
        f"{a!r},{Q!r},{costs.c_h!r},{costs.c_o!r},{costs.c_so!r},{mode},"
        f"{t!r},{bd.ordering!r},{bd.holding!r},{bd.shortage!r},{bd.total!r}"
    )


def write_sweep_csv(rows, file) -> None:
    with open(file, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for a, Q, costs, t, bd in rows:
            fh.write(_format_row(a, Q, costs, t, bd) + "\n")


def write_curve_csv(curve: CostCurve, policy: PolicyParams, costs: CostParams, file) -> None:
    with open(file, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for t, bd in zip(curve.grid, curve.points):
            fh.write(_format_row(policy.a, policy.Q, costs, float(t), bd) + "\n")
