"""Rolling forecast baselines and the discrete reorder-point experiment.

The forecaster is a small ARIMA: differencing order d in {0, 1} picked
by comparing sample variances of the raw and differenced window, then a
grid search over (p, q) fitted by two-stage conditional least squares
(a long autoregression proxies the innovations, then AR and MA terms
are regressed jointly) and scored by AIC.  A mean model is always in
the grid, so degenerate windows fall back to the trailing-window mean.

The discrete simulation replays a reorder-point policy period by
period: order Q when on-hand inventory is at or below the reorder
point (a forecast-projected trigger, inventory minus the one-step
forecast, is available for sensitivity runs), subtract the realized
demand, then accrue holding on positive and shortage on backordered
stock.  Unmet demand is carried as negative inventory.  The on-hand
trigger is the default because it reproduces the reference experiment
to within Monte Carlo noise; the forecast-projected variant lands far
outside it.
"""

from dataclasses import dataclass

import numpy as np

from ._accel import maybe_njit
from .cost import CostBreakdown
from .demand import period_increments, sample_path
from .errors import InsufficientDataError, ParameterError
from .params import CostParams, PolicyParams, ProcessParams

TABLE_CSV_HEADER = "R,Q,C_h,C_o,C_so,mean_total,stderr_total,mean_orders,stockout_rate"

# (R, Q, C_h, C_o, C_so) rows of the 48-point experiment grid.
TABLE1_GRID = [
    (float(R), float(Q), 1.0, float(c_o), float(c_so))
    for (R, Q) in [
        (40, 50), (40, 60), (50, 50), (50, 60), (60, 50), (60, 60),
        (40, 110), (40, 120), (50, 110), (50, 120), (60, 110), (60, 120),
    ]
    for (c_o, c_so) in [(5, 10), (10, 10), (5, 15), (10, 15)]
]


@dataclass(frozen=True)
class ArimaModel:
    p: int
    d: int
    q: int
    ar_coeffs: np.ndarray
    ma_coeffs: np.ndarray
    intercept: float


@dataclass(frozen=True)
class ExperimentConfig:
    """Protocol of the rolling-forecast comparison experiment."""

    process: ProcessParams
    policy: PolicyParams
    costs: CostParams
    n_series: int = 1000
    window: int = 12
    sim_start: int = 13
    sim_end: int = 50
    period_length: float = 1.0
    base_seed: int = 7_000_000
    p_max: int = 2
    q_max: int = 2
    d_set: tuple = (0, 1)
    trigger: str = "on_hand"
    forecaster: str = "arima"
    croston_smoothing: float = 0.1

    def __post_init__(self):
        if self.window < 1:
            raise ParameterError(f"window must be >= 1, got {self.window}")
        if self.sim_start != self.window + 1:
            raise ParameterError(
                f"simulation must start right after the window "
                f"(window={self.window}, sim_start={self.sim_start})"
            )
        if self.sim_end < self.sim_start:
            raise ParameterError("sim_end must be >= sim_start")
        if not self.period_length > 0:
            raise ParameterError("period_length must be positive")
        if self.n_series < 1:
            raise ParameterError("n_series must be >= 1")
        if not (0 <= self.p_max <= 2 and 0 <= self.q_max <= 2):
            raise ParameterError("p_max and q_max must lie in {0, 1, 2}")
        if not set(self.d_set) <= {0, 1} or len(self.d_set) == 0:
            raise ParameterError(f"d_set must be a non-empty subset of {{0, 1}}")
        if self.trigger not in ("forecast_projected", "on_hand"):
            raise ParameterError(f"unknown trigger rule {self.trigger!r}")
        if self.forecaster not in ("arima", "croston"):
            raise ParameterError(f"unknown forecaster {self.forecaster!r}")

    @property
    def n_sim_periods(self) -> int:
        return self.sim_end - self.sim_start + 1


@dataclass(frozen=True)
class TableRow:
    R: float
    Q: float
    c_h: float
    c_o: float
    c_so: float
    mean_total: float
    stderr_total: float
    mean_orders: float
    stockout_rate: float


def _ge_solve(A, b):
    """Gaussian elimination with partial pivoting; flags singularity."""
    n = A.shape[0]
    M = A.copy()
    x = b.copy()
    scale = 0.0
    for i in range(n):
        if abs(M[i, i]) > scale:
            scale = abs(M[i, i])
    if scale == 0.0:
        return x, False
    for col in range(n):
        piv = col
        best = abs(M[col, col])
        for r in range(col + 1, n):
            if abs(M[r, col]) > best:
                best = abs(M[r, col])
                piv = r
        if best < 1e-10 * scale:
            return x, False
        if piv != col:
            for c in range(n):
                tmp = M[col, c]
                M[col, c] = M[piv, c]
                M[piv, c] = tmp
            tmp = x[col]
            x[col] = x[piv]
            x[piv] = tmp
        for r in range(col + 1, n):
            f = M[r, col] / M[col, col]
            if f != 0.0:
                for c in range(col, n):
                    M[r, c] -= f * M[col, c]
                x[r] -= f * x[col]
    for i in range(n - 1, -1, -1):
        s = x[i]
        for c in range(i + 1, n):
            s -= M[i, c] * x[c]
        x[i] = s / M[i, i]
    return x, True


ge_solve = maybe_njit(_ge_solve)


def _ols(X, y):
    """Least squares via normal equations; returns (beta, rss, ok)."""
    Xt = np.ascontiguousarray(X.T)
    A = Xt @ X
    b = Xt @ y
    beta, ok = ge_solve(A, b)
    if not ok:
        return beta, 0.0, False
    resid = y - X @ beta
    rss = 0.0
    for i in range(resid.shape[0]):
        rss += resid[i] * resid[i]
    return beta, rss, True


ols = maybe_njit(_ols)


def _ar_stationary(p, phi1, phi2):
    """Roots of the AR polynomial strictly outside the unit disk
    (closed-form conditions, valid for p <= 2)."""
    if p == 0:
        return True
    if p == 1:
        return abs(phi1) < 1.0
    return abs(phi2) < 1.0 and (phi1 + phi2) < 1.0 and (phi2 - phi1) < 1.0


ar_stationary = maybe_njit(_ar_stationary)


def _fit_candidate(z, p, q):
    """Two-stage conditional least squares for one (p, q) candidate.

    Returns (ok, intercept, phi1, phi2, th1, th2, rss, rows)."""
    n = z.shape[0]
    if p == 0 and q == 0:
        m = 0.0
        for i in range(n):
            m += z[i]
        m /= n
        rss = 0.0
        for i in range(n):
            rss += (z[i] - m) * (z[i] - m)
        return True, m, 0.0, 0.0, 0.0, 0.0, rss, n
    ehat = np.zeros(n)
    if q > 0:
        half = (n - 2) // 2
        L = p + q if p + q > 4 else 4
        if L > half:
            L = half
        if L < 1 or n - L < L + 2:
            return False, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0
        rows_a = n - L
        XA = np.empty((rows_a, L + 1))
        for r in range(rows_a):
            XA[r, 0] = 1.0
        for i in range(1, L + 1):
            XA[:, i] = z[L - i : n - i]
        ya = z[L:n].copy()
        beta_a, _, ok_a = ols(XA, ya)
        if not ok_a:
            return False, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0
        fit = XA @ beta_a
        for r in range(rows_a):
            ehat[L + r] = ya[r] - fit[r]
        s = L + (p if p > q else q)
    else:
        s = p
    rows = n - s
    k = 1 + p + q
    if rows < k + 1:
        return False, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0
    X = np.empty((rows, k))
    for r in range(rows):
        X[r, 0] = 1.0
    for i in range(1, p + 1):
        X[:, i] = z[s - i : n - i]
    for j in range(1, q + 1):
        X[:, p + j] = ehat[s - j : n - j]
    y = z[s:n].copy()
    beta, rss, ok = ols(X, y)
    if not ok:
        return False, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0
    phi1 = beta[1] if p >= 1 else 0.0
    phi2 = beta[2] if p >= 2 else 0.0
    th1 = beta[p + 1] if q >= 1 else 0.0
    th2 = beta[p + 2] if q >= 2 else 0.0
    if not ar_stationary(p, phi1, phi2):
        return False, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0
    return True, beta[0], phi1, phi2, th1, th2, rss, rows


fit_candidate = maybe_njit(_fit_candidate)


def _fit_window(z, p_max, q_max):
    """AIC-selected (p, q) fit; candidates scanned in tie-break order
    (smaller p+q first, then smaller p).  Returns
    (found, p, q, intercept, phi1, phi2, th1, th2, aic)."""
    best_found = False
    best_aic = 0.0
    bp = 0
    bq = 0
    bc = 0.0
    b1 = 0.0
    b2 = 0.0
    bt1 = 0.0
    bt2 = 0.0
    for total in range(p_max + q_max + 1):
        pmax_here = total if total < p_max else p_max
        for p in range(pmax_here + 1):
            q = total - p
            if q > q_max:
                continue
            ok, c, phi1, phi2, th1, th2, rss, rows = fit_candidate(z, p, q)
            if not ok:
                continue
            mean_sq = rss / rows
            if mean_sq < 1e-12:
                mean_sq = 1e-12
            aic = rows * np.log(mean_sq) + 2.0 * (p + q + 1)
            if (not best_found) or aic < best_aic:
                best_found = True
                best_aic = aic
                bp = p
                bq = q
                bc = c
                b1 = phi1
                b2 = phi2
                bt1 = th1
                bt2 = th2
    return best_found, bp, bq, bc, b1, b2, bt1, bt2, best_aic


fit_window = maybe_njit(_fit_window)


def _one_step(z, p, q, c, phi1, phi2, th1, th2):
    """Conditional one-step-ahead prediction (pre-sample residuals 0)."""
    n = z.shape[0]
    ehat = np.zeros(n)
    for t in range(p, n):
        pred = c
        if p >= 1:
            pred += phi1 * z[t - 1]
        if p >= 2:
            pred += phi2 * z[t - 2]
        if q >= 1 and t - 1 >= 0:
            pred += th1 * ehat[t - 1]
        if q >= 2 and t - 2 >= 0:
            pred += th2 * ehat[t - 2]
        ehat[t] = z[t] - pred
    pred = c
    if p >= 1:
        pred += phi1 * z[n - 1]
    if p >= 2:
        pred += phi2 * z[n - 2]
    if q >= 1:
        pred += th1 * ehat[n - 1]
    if q >= 2:
        pred += th2 * ehat[n - 2]
    return pred


one_step = maybe_njit(_one_step)


def _sample_var(v):
    n = v.shape[0]
    if n < 2:
        return 0.0
    m = 0.0
    for i in range(n):
        m += v[i]
    m /= n
    s = 0.0
    for i in range(n):
        s += (v[i] - m) * (v[i] - m)
    return s / (n - 1)


sample_var = maybe_njit(_sample_var)


def _pick_d(w, allow_d0, allow_d1):
    if allow_d0 and not allow_d1:
        return 0
    if allow_d1 and not allow_d0:
        return 1
    dw = np.diff(w)
    if sample_var(dw) < sample_var(w):
        return 1
    return 0


pick_d = maybe_njit(_pick_d)


def _forecast_window(w, p_max, q_max, allow_d0, allow_d1):
    """One-step forecast from one trailing window, clamped to
    [0, max(window)]."""
    n = w.shape[0]
    wmax = w[0]
    wsum = 0.0
    for i in range(n):
        if w[i] > wmax:
            wmax = w[i]
        wsum += w[i]
    d = pick_d(w, allow_d0, allow_d1)
    z = np.diff(w) if d == 1 else w
    found, p, q, c, phi1, phi2, th1, th2, _ = fit_window(z, p_max, q_max)
    if not found:
        yhat = wsum / n
    else:
        zhat = one_step(z, p, q, c, phi1, phi2, th1, th2)
        yhat = w[n - 1] + zhat if d == 1 else zhat
    if yhat < 0.0:
        yhat = 0.0
    if yhat > wmax:
        yhat = wmax
    return yhat


forecast_window = maybe_njit(_forecast_window)


def _rolling_kernel(series, window, start0, count, p_max, q_max, allow_d0, allow_d1):
    out = np.empty(count)
    for k in range(count):
        w = series[start0 + k - window : start0 + k].copy()
        out[k] = forecast_window(w, p_max, q_max, allow_d0, allow_d1)
    return out


rolling_kernel = maybe_njit(_rolling_kernel)


def _discrete_sim(actuals, forecasts, x0, R, Q, c_h, c_so, order_charge, on_hand, per_period):
    """Period loop: maybe order (arrives immediately), subtract demand,
    accrue costs on the end-of-period level.  Backorders go negative."""
    inv = x0
    ordering = 0.0
    holding = 0.0
    shortage = 0.0
    orders = 0
    stockout = False
    n = actuals.shape[0]
    for k in range(n):
        cost_k = 0.0
        proj = inv if on_hand else inv - forecasts[k]
        if proj <= R:
            inv += Q
            orders += 1
            ordering += order_charge
            cost_k += order_charge
        inv -= actuals[k]
        h = c_h * inv if inv > 0.0 else 0.0
        s = -c_so * inv if inv < 0.0 else 0.0
        if inv < 0.0:
            stockout = True
        holding += h
        shortage += s
        per_period[k] = cost_k + h + s
    return ordering, holding, shortage, orders, stockout


discrete_sim = maybe_njit(_discrete_sim)


def fit_arima(series, p_max: int = 2, q_max: int = 2, d_set=(0, 1)) -> ArimaModel:
    """Fit the AIC-selected small ARIMA to a whole series."""
    y = np.asarray(series, dtype=np.float64)
    if not (0 <= p_max <= 2 and 0 <= q_max <= 2):
        raise ParameterError("p_max and q_max must lie in {0, 1, 2}")
    if not set(d_set) <= {0, 1} or len(d_set) == 0:
        raise ParameterError("d_set must be a non-empty subset of {0, 1}")
    max_lag = max(p_max, q_max) + (1 if 1 in d_set else 0)
    if y.size < max_lag + 2:
        raise InsufficientDataError(
            f"series of length {y.size} cannot support lags up to {max_lag}"
        )
    d = int(pick_d(y, 0 in d_set, 1 in d_set))
    z = np.diff(y) if d == 1 else y
    found, p, q, c, phi1, phi2, th1, th2, _ = fit_window(z, p_max, q_max)
    if not found:
        return ArimaModel(
            p=0, d=d, q=0, ar_coeffs=np.empty(0), ma_coeffs=np.empty(0),
            intercept=float(np.mean(z)),
        )
    ar = np.array([phi1, phi2][: int(p)])
    ma = np.array([th1, th2][: int(q)])
    return ArimaModel(p=int(p), d=d, q=int(q), ar_coeffs=ar, ma_coeffs=ma, intercept=float(c))


def one_step_forecast(model: ArimaModel, series) -> float:
    """Unclamped one-step-ahead forecast of the next observation."""
    y = np.asarray(series, dtype=np.float64)
    z = np.diff(y) if model.d == 1 else y
    phi1 = model.ar_coeffs[0] if model.p >= 1 else 0.0
    phi2 = model.ar_coeffs[1] if model.p >= 2 else 0.0
    th1 = model.ma_coeffs[0] if model.q >= 1 else 0.0
    th2 = model.ma_coeffs[1] if model.q >= 2 else 0.0
    zhat = float(one_step(z, model.p, model.q, model.intercept, phi1, phi2, th1, th2))
    return float(y[-1] + zhat) if model.d == 1 else zhat


def rolling_forecast(series, cfg: ExperimentConfig) -> np.ndarray:
    """One-step-ahead forecasts for the simulated periods, each fit on
    the trailing window; values clamped to [0, window max]."""
    y = np.asarray(series, dtype=np.float64)
    if y.size < cfg.sim_end:
        raise InsufficientDataError(
            f"series has {y.size} periods, experiment needs {cfg.sim_end}"
        )
    return rolling_kernel(
        y,
        cfg.window,
        cfg.sim_start - 1,
        cfg.n_sim_periods,
        cfg.p_max,
        cfg.q_max,
        0 in cfg.d_set,
        1 in cfg.d_set,
    )


def croston_forecast(series, smoothing: float = 0.1) -> np.ndarray:
    """Croston recursion: exponential smoothing of nonzero sizes and of
    inter-demand intervals; element k forecasts period k from the prior
    history (0 until the first demand)."""
    if not 0 < smoothing <= 1:
        raise ParameterError(f"smoothing must be in (0, 1], got {smoothing}")
    y = np.asarray(series, dtype=np.float64)
    if np.any(y < 0):
        raise ParameterError("demand series must be nonnegative")
    out = np.zeros(y.size)
    size = 0.0
    interval = 0.0
    seen = False
    since = 0
    for k in range(y.size):
        out[k] = size / interval if seen else 0.0
        since += 1
        if y[k] > 0:
            if not seen:
                size = y[k]
                interval = float(since)
                seen = True
            else:
                size += smoothing * (y[k] - size)
                interval += smoothing * (since - interval)
            since = 0
    return out


def reorder_sim_discrete(
    actuals, forecasts, policy: PolicyParams, costs: CostParams,
    trigger: str = "on_hand",
) -> CostBreakdown:
    """Discrete-period reorder simulation over aligned actual/forecast
    arrays; returns the accrued cost breakdown (t = period count)."""
    act = np.asarray(actuals, dtype=np.float64)
    fc = np.asarray(forecasts, dtype=np.float64)
    if act.size != fc.size:
        raise ParameterError(
            f"actuals ({act.size}) and forecasts ({fc.size}) must align"
        )
    if trigger not in ("forecast_projected", "on_hand"):
        raise ParameterError(f"unknown trigger rule {trigger!r}")
    per_period = np.empty(act.size)
    ordering, holding, shortage, _, _ = discrete_sim(
        act,
        fc,
        policy.x0,
        policy.reorder_point,
        policy.Q,
        costs.c_h,
        costs.c_so,
        costs.order_cost(policy.Q),
        trigger == "on_hand",
        per_period,
    )
    return CostBreakdown(
        ordering=ordering,
        holding=holding,
        shortage=shortage,
        total=ordering + holding + shortage,
        t=float(act.size),
    )


def generate_demand_series(cfg: ExperimentConfig) -> np.ndarray:
    """Per-period demand for every series, seeds base_seed + index."""
    horizon = cfg.sim_end * cfg.period_length
    out = np.empty((cfg.n_series, cfg.sim_end))
    for i in range(cfg.n_series):
        path = sample_path(cfg.process, horizon, cfg.base_seed + i)
        out[i] = period_increments(path, cfg.period_length)
    return out


def experiment_forecasts(series_mat: np.ndarray, cfg: ExperimentConfig) -> np.ndarray:
    """Forecast matrix aligned with the simulated periods of every series."""
    n_fc = cfg.n_sim_periods
    out = np.empty((series_mat.shape[0], n_fc))
    for i in range(series_mat.shape[0]):
        if cfg.forecaster == "croston":
            fc = croston_forecast(series_mat[i], cfg.croston_smoothing)
            out[i] = fc[cfg.sim_start - 1 : cfg.sim_end]
        else:
            out[i] = rolling_forecast(series_mat[i], cfg)
    return out


def _experiment_arrays(cfg: ExperimentConfig):
    series_mat = generate_demand_series(cfg)
    forecasts_mat = experiment_forecasts(series_mat, cfg)
    actuals_mat = series_mat[:, cfg.sim_start - 1 : cfg.sim_end]
    return actuals_mat, forecasts_mat


def run_table_experiment(cfg: ExperimentConfig, param_grid=None):
    """Average total cost per (R, Q, C_h, C_o, C_so) grid row.

    Demand series and forecasts are generated once (seeds shared across
    rows, which also serves as variance reduction) and replayed through
    the discrete simulation for every row."""
    if param_grid is None:
        param_grid = TABLE1_GRID
    if not len(param_grid):
        raise ParameterError("parameter grid must be non-empty")
    actuals_mat, forecasts_mat = _experiment_arrays(cfg)
    n_series = actuals_mat.shape[0]
    on_hand = cfg.trigger == "on_hand"
    per_period = np.empty(actuals_mat.shape[1])
    rows = []
    for R, Q, c_h, c_o, c_so in param_grid:
        if not 0 < R < cfg.policy.x0:
            raise ParameterError(
                f"reorder level R={R} must lie strictly between 0 and x0={cfg.policy.x0}"
            )
        costs = CostParams(
            c_o=c_o, c_h=c_h, c_so=c_so, ordering_mode=cfg.costs.ordering_mode
        )
        order_charge = costs.order_cost(Q)
        totals = np.empty(n_series)
        orders = np.empty(n_series)
        stockouts = np.empty(n_series)
        for i in range(n_series):
            ordering, holding, shortage, n_orders, stockout = discrete_sim(
                actuals_mat[i],
                forecasts_mat[i],
                cfg.policy.x0,
                R,
                Q,
                c_h,
                c_so,
                order_charge,
                on_hand,
                per_period,
            )
            totals[i] = ordering + holding + shortage
            orders[i] = n_orders
            stockouts[i] = 1.0 if stockout else 0.0
        rows.append(
            TableRow(
                R=R,
                Q=Q,
                c_h=c_h,
                c_o=c_o,
                c_so=c_so,
                mean_total=float(np.mean(totals)),
                stderr_total=float(
                    np.std(totals, ddof=1) / np.sqrt(n_series) if n_series > 1 else 0.0
                ),
                mean_orders=float(np.mean(orders)),
                stockout_rate=float(np.mean(stockouts)),
            )
        )
    return rows


def cumulative_cost_profile(cfg: ExperimentConfig):
    """Mean cumulative realized cost after each simulated period.

    Returns (period numbers, cumulative mean cost) for the experiment's
    own policy and costs."""
    actuals_mat, forecasts_mat = _experiment_arrays(cfg)
    n_series, n_periods = actuals_mat.shape
    acc = np.zeros(n_periods)
    per_period = np.empty(n_periods)
    order_charge = cfg.costs.order_cost(cfg.policy.Q)
    on_hand = cfg.trigger == "on_hand"
    for i in range(n_series):
        discrete_sim(
            actuals_mat[i],
            forecasts_mat[i],
            cfg.policy.x0,
            cfg.policy.reorder_point,
            cfg.policy.Q,
            cfg.costs.c_h,
            cfg.costs.c_so,
            order_charge,
            on_hand,
            per_period,
        )
        acc += per_period
    acc /= n_series
    periods = np.arange(cfg.sim_start, cfg.sim_end + 1)
    return periods, np.cumsum(acc)


def write_table_csv(rows, file) -> None:
    with open(file, "w") as fh:
        fh.write(TABLE_CSV_HEADER + "\n")
        for r in rows:
            fh.write(
                f"{r.R!r},{r.Q!r},{r.c_h!r},{r.c_o!r},{r.c_so!r},"
                f"{r.mean_total!r},{r.stderr_total!r},{r.mean_orders!r},{r.stockout_rate!r}\n"
            )
