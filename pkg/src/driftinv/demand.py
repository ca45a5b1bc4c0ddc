"""Cumulative-demand process: linear drift plus Poisson-timed jumps.

A path is drift mu*t plus alpha per jump, with jump times sampled
exactly from exponential inter-arrivals (no time discretization).
Paths are immutable and fully determined by (params, horizon, seed);
the PRNG is numpy's PCG64, so identical seeds replay identical paths.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .params import ProcessParams


@dataclass(frozen=True)
class SamplePath:
    """One realization of the demand process on [0, horizon)."""

    params: ProcessParams
    jump_times: np.ndarray
    horizon: float
    seed: int

    def __post_init__(self):
        if not self.horizon > 0:
            raise ParameterError(f"horizon must be positive, got {self.horizon}")
        jt = np.asarray(self.jump_times, dtype=np.float64)
        object.__setattr__(self, "jump_times", jt)
        if jt.size:
            if np.any(np.diff(jt) <= 0):
                raise ParameterError("jump times must be strictly increasing")
            if jt[0] < 0 or jt[-1] >= self.horizon:
                raise ParameterError("jump times must lie in [0, horizon)")


def _draw_jump_times(rng, lam, horizon):
    """Exponential inter-arrival times accumulated until the horizon."""
    mean_count = lam * horizon
    block = max(16, int(mean_count + 10.0 * np.sqrt(mean_count) + 10.0))
    gaps = rng.exponential(1.0 / lam, size=block)
    total = gaps.sum()
    while total <= horizon:
        more = rng.exponential(1.0 / lam, size=block)
        gaps = np.concatenate([gaps, more])
        total += more.sum()
    times = np.cumsum(gaps)
    return times[times < horizon]


def sample_path(params: ProcessParams, horizon: float, seed: int) -> SamplePath:
    """Sample one path; bit-reproducible for identical (params, horizon, seed)."""
    if not horizon > 0:
        raise ParameterError(f"horizon must be positive, got {horizon}")
    rng = np.random.Generator(np.random.PCG64(seed))
    times = _draw_jump_times(rng, params.lam, horizon)
    return SamplePath(params=params, jump_times=times, horizon=horizon, seed=seed)


def batch_jump_times(params: ProcessParams, horizon: float, base_seed: int, n_paths: int):
    """Jump times for paths seeded base_seed + index, packed flat.

    Returns (flat, offsets) with path i occupying flat[offsets[i]:offsets[i+1]].
    """
    if not horizon > 0:
        raise ParameterError(f"horizon must be positive, got {horizon}")
    if n_paths < 1:
        raise ParameterError(f"n_paths must be >= 1, got {n_paths}")
    chunks = []
    offsets = np.zeros(n_paths + 1, dtype=np.int64)
    for i in range(n_paths):
        rng = np.random.Generator(np.random.PCG64(base_seed + i))
        t = _draw_jump_times(rng, params.lam, horizon)
        chunks.append(t)
        offsets[i + 1] = offsets[i] + t.size
    flat = np.concatenate(chunks) if chunks else np.empty(0)
    return flat, offsets


def demand_at(path: SamplePath, t: float) -> float:
    """Demand accumulated by time t; jumps at exactly t are included."""
    if t < 0 or t > path.horizon:
        raise DomainError(f"t must lie in [0, {path.horizon}], got {t}")
    n_jumps = int(np.searchsorted(path.jump_times, t, side="right"))
    return path.params.mu * t + path.params.alpha * n_jumps


def period_increments(path: SamplePath, period: float) -> np.ndarray:
    """Demand accumulated in each whole period [k*period, (k+1)*period]."""
    if not period > 0:
        raise ParameterError(f"period must be positive, got {period}")
    if period > path.horizon:
        raise ParameterError(
            f"period {period} exceeds the path horizon {path.horizon}"
        )
    n = int(np.floor(path.horizon / period + 1e-12))
    bounds = period * np.arange(n + 1)
    counts = np.searchsorted(path.jump_times, bounds, side="right")
    return path.params.mu * period + path.params.alpha * np.diff(counts)


def save_path_csv(path: SamplePath, csv_file, sidecar_file=None) -> None:
    """Write jump times as CSV (`t,jump`); parameters and seed go to a
    JSON sidecar when given."""
    with open(csv_file, "w") as fh:
        fh.write("t,jump\n")
        for t in path.jump_times:
            fh.write(f"{t!r},{path.params.alpha!r}\n")
    if sidecar_file is not None:
        meta = {
            "mu": path.params.mu,
            "alpha": path.params.alpha,
            "lam": path.params.lam,
            "horizon": path.horizon,
            "seed": path.seed,
        }
        with open(sidecar_file, "w") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
            fh.write("\n")
