"""Closed-form cost engine: breakdowns, curves, sweeps."""

import numpy as np
import pytest
import scipy.integrate

from driftinv import (
    CostParams,
    OrderingMode,
    ParameterError,
    PolicyParams,
    ProcessParams,
    argmax_time,
    cost_curve,
    expected_inventory,
    expected_renewals,
    expected_total_cost,
    sweep,
)
from driftinv.cost import CostBreakdown, CostCurve, negative_inventory_times, write_sweep_csv


def test_policy_validation():
    with pytest.raises(ParameterError):
        PolicyParams(x0=0.0, a=1.0, Q=1.0)
    with pytest.raises(ParameterError):
        PolicyParams(x0=100.0, a=0.0, Q=1.0)
    with pytest.raises(ParameterError):
        PolicyParams(x0=100.0, a=150.0, Q=1.0)
    with pytest.raises(ParameterError):
        PolicyParams(x0=100.0, a=50.0, Q=0.0)


def test_cost_params_soft_warning():
    with pytest.warns(UserWarning):
        CostParams(c_o=5.0, c_h=6.0, c_so=10.0)
    with pytest.raises(ParameterError):
        CostParams(c_o=-1.0, c_h=1.0, c_so=1.0)


def test_inventory_at_zero(ref_process, ref_policy, series_cfg):
    assert expected_inventory(ref_process, ref_policy, 0.0, series_cfg) == 100.0


def test_inventory_early_linear(ref_process, ref_policy, series_cfg):
    # before the first threshold is plausibly reachable, E[X_t] ~ 100 - 15 t
    t = 0.2
    got = expected_inventory(ref_process, ref_policy, t, series_cfg)
    assert got == pytest.approx(100.0 - 15.0 * t, abs=0.01)


def test_total_cost_at_zero(ref_process, ref_policy, ref_costs, series_cfg):
    bd = expected_total_cost(ref_process, ref_policy, ref_costs, 0.0, series_cfg)
    assert (bd.ordering, bd.holding, bd.shortage, bd.total) == (0.0, 0.0, 0.0, 0.0)


def test_only_ordering_when_holding_free(ref_process, ref_policy, series_cfg):
    costs = CostParams(c_o=5.0, c_h=0.0, c_so=10.0, ordering_mode=OrderingMode.PER_ORDER)
    t = 4.0
    bd = expected_total_cost(ref_process, ref_policy, costs, t, series_cfg)
    want = 5.0 * expected_renewals(ref_process, ref_policy, t, series_cfg)
    assert bd.total == pytest.approx(want, rel=1e-12)
    assert bd.holding == 0.0 and bd.shortage == 0.0


def test_component_identity(ref_process, ref_policy, ref_costs, series_cfg):
    for t in np.linspace(0.0, 10.0, 21):
        bd = expected_total_cost(ref_process, ref_policy, ref_costs, float(t), series_cfg)
        assert bd.total == bd.ordering + bd.holding + bd.shortage
        assert bd.shortage == 0.0


def test_ordering_mode_relation(ref_process, ref_policy, series_cfg):
    per_unit = CostParams(c_o=5.0, c_h=1.0, c_so=10.0, ordering_mode=OrderingMode.PER_UNIT_TIMES_Q)
    per_order = CostParams(c_o=5.0, c_h=1.0, c_so=10.0, ordering_mode=OrderingMode.PER_ORDER)
    t = 6.0
    a = expected_total_cost(ref_process, ref_policy, per_unit, t, series_cfg)
    b = expected_total_cost(ref_process, ref_policy, per_order, t, series_cfg)
    assert a.ordering == ref_policy.Q * b.ordering
    assert a.holding == b.holding


def test_holding_decomposition(ref_process, ref_policy, ref_costs, series_cfg):
    # holding == c_h * integral of expected inventory over [0, t]
    t = 8.0
    bd = expected_total_cost(ref_process, ref_policy, ref_costs, t, series_cfg)
    want, _ = scipy.integrate.quad(
        lambda s: expected_inventory(ref_process, ref_policy, s, series_cfg),
        0.0,
        t,
        limit=200,
    )
    assert bd.holding == pytest.approx(ref_costs.c_h * want, abs=1e-6)


def test_curve_single_zero_point(ref_process, ref_policy, ref_costs, series_cfg):
    curve = cost_curve(ref_process, ref_policy, ref_costs, [0.0], series_cfg)
    assert curve.points[0].total == 0.0
    assert argmax_time(curve) == (0.0, 0.0)


def test_curve_continuity(ref_process, ref_policy, ref_costs, series_cfg):
    grid = np.linspace(0.0, 10.0, 201)
    curve = cost_curve(ref_process, ref_policy, ref_costs, grid, series_cfg)
    dt = grid[1] - grid[0]
    diffs = np.abs(np.diff(curve.totals()))
    # slope bound: C_o Q sum of densities + C_h (x + Q E[R_t]) stays
    # modest on this range; 2000 is a generous envelope
    assert np.max(diffs) <= 2000.0 * dt


def test_curve_grid_validation(ref_process, ref_policy, ref_costs, series_cfg):
    with pytest.raises(ParameterError):
        cost_curve(ref_process, ref_policy, ref_costs, [0.0, 0.0, 1.0], series_cfg)


def test_default_curve_is_increasing_argmax_at_end(
    ref_process, ref_policy, ref_costs, series_cfg
):
    # with the corrected CDF and tail-tolerance truncation the renewal
    # series keeps saturating, so the curve rises on the whole grid and
    # the argmax is the last grid point
    grid = np.linspace(0.0, 12.0, 121)
    curve = cost_curve(ref_process, ref_policy, ref_costs, grid, series_cfg)
    totals = curve.totals()
    assert np.all(np.diff(totals) > 0)
    t_star, total_star = argmax_time(curve)
    assert t_star == grid[-1]
    assert total_star == totals[-1]


def test_argmax_tie_breaks_to_earliest():
    flat = CostCurve(
        grid=np.array([0.0, 1.0, 2.0]),
        points=[CostBreakdown(0.0, 5.0, 0.0, 5.0, t) for t in (0.0, 1.0, 2.0)],
    )
    assert argmax_time(flat) == (0.0, 5.0)


def test_argmax_single_and_empty():
    single = CostCurve(grid=np.array([3.0]), points=[CostBreakdown(1.0, 2.0, 0.0, 3.0, 3.0)])
    assert argmax_time(single) == (3.0, 3.0)
    empty = CostCurve(grid=np.array([]), points=[])
    with pytest.raises(ParameterError):
        argmax_time(empty)


def test_negative_inventory_flagging(series_cfg):
    # drift-dominated process: expected inventory goes negative past x0/mu
    p = ProcessParams(mu=100.0, alpha=0.001, lam=0.001)
    pol = PolicyParams(x0=100.0, a=50.0, Q=10.0)
    flagged = negative_inventory_times(p, pol, [0.5, 0.9, 1.5, 3.0], series_cfg)
    assert flagged == [1.5, 3.0]
    # nothing to flag with the reference setup
    ref_p = ProcessParams(mu=5.0, alpha=10.0, lam=1.0)
    ref_pol = PolicyParams(x0=100.0, a=50.0, Q=50.0)
    assert negative_inventory_times(ref_p, ref_pol, np.linspace(0, 12, 25), series_cfg) == []


def test_sweep_singletons_match_single_eval(ref_process, ref_policy, ref_costs, series_cfg):
    rows = sweep(
        ref_process, [ref_costs], [ref_policy.a], [ref_policy.Q], [4.0], series_cfg,
        x0=ref_policy.x0,
    )
    assert len(rows) == 1
    a, Q, costs, t, bd = rows[0]
    want = expected_total_cost(ref_process, ref_policy, ref_costs, 4.0, series_cfg)
    assert bd == want


def test_sweep_monotone_in_ordering_cost(ref_process, ref_policy, series_cfg):
    costs_list = [CostParams(c_o=c, c_h=1.0, c_so=10.0) for c in (5.0, 7.5, 10.0)]
    rows = sweep(ref_process, costs_list, [50.0], [50.0], [6.0], series_cfg)
    totals = [bd.total for (_, _, _, _, bd) in rows]
    assert totals == sorted(totals)


def test_sweep_ordering_component_falls_with_a(ref_process, series_cfg):
    costs = CostParams(c_o=5.0, c_h=1.0, c_so=10.0)
    rows = sweep(ref_process, [costs], [40.0, 50.0, 60.0], [50.0], [6.0], series_cfg)
    ordering = [bd.ordering for (_, _, _, _, bd) in rows]
    assert ordering[0] >= ordering[1] >= ordering[2]


def test_sweep_row_order_and_csv(tmp_path, ref_process, series_cfg):
    costs_list = [CostParams(c_o=c, c_h=1.0, c_so=10.0) for c in (5.0, 10.0)]
    rows = sweep(ref_process, costs_list, [40.0, 50.0], [50.0, 60.0], [2.0, 4.0], series_cfg)
    keys = [(a, Q, costs.c_o, t) for (a, Q, costs, t, _) in rows]
    assert keys == sorted(keys)
    out = tmp_path / "sweep.csv"
    write_sweep_csv(rows, out)
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "a,Q,c_h,c_o,c_so,mode,t,ordering,holding,shortage,total"
    assert len(lines) == 1 + len(rows)


def test_sweep_empty_lists_rejected(ref_process, ref_costs, series_cfg):
    with pytest.raises(ParameterError):
        sweep(ref_process, [], [50.0], [50.0], [1.0], series_cfg)


def test_super_linear_early_window(ref_process, ref_policy, ref_costs, series_cfg):
    for t in (1.0, 3.0, 5.0):
        small = expected_total_cost(ref_process, ref_policy, ref_costs, t, series_cfg).total
        large = expected_total_cost(ref_process, ref_policy, ref_costs, 2 * t, series_cfg).total
        assert large > 2 * small
