#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-Python/NumPy fallback.

Runs the same workloads in two subprocesses, one with
DRIFTINV_DISABLE_JIT=1 and one without, times them, and asserts the
outputs are identical (both paths execute the same statement order).

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
import driftinv as di
from driftinv._accel import JIT_ENABLED
from driftinv.forecast import TABLE1_GRID
from driftinv.gammainc import reg_lower_gamma
from driftinv.mc import path_stats

quick = sys.argv[1] == "quick"
scale = 10 if quick else 1

p = di.ProcessParams(mu=5.0, alpha=10.0, lam=1.0)
pol = di.PolicyParams(x0=100.0, a=50.0, Q=50.0)
costs = di.CostParams(c_o=5.0, c_h=1.0, c_so=10.0, ordering_mode=di.OrderingMode.PER_ORDER)
cfg = di.RenewalSeriesConfig()

results = {"jit": bool(JIT_ENABLED)}

# warm-up (compilation in the jit process)
reg_lower_gamma(10.0, 10.0)
di.expected_renewals(p, pol, 1.0, cfg)
path_stats(p, pol, 1.0, 10, 0)

# 1. incomplete gamma over a renewal-style grid
n_eval = 200_000 // scale
t0 = time.perf_counter()
acc = 0.0
for i in range(n_eval):
    acc += reg_lower_gamma(10.0 + (i % 40), 0.05 * (i % 2000))
results["gamma_seconds"] = time.perf_counter() - t0
results["gamma_checksum"] = acc
results["gamma_evals"] = n_eval

# 2. event-driven Monte Carlo paths
n_paths = 100_000 // scale
t0 = time.perf_counter()
stats = path_stats(p, pol, 10.0, n_paths, base_seed=2024)
results["mc_seconds"] = time.perf_counter() - t0
results["mc_paths"] = n_paths
results["mc_checksum"] = float(stats["orders"].sum() + stats["pos_integral"].sum())

# 3. rolling-forecast experiment (CLS fits dominate)
n_series = 200 // scale
exp = di.ExperimentConfig(process=p, policy=pol, costs=costs,
                          n_series=n_series, base_seed=7_000_000)
t0 = time.perf_counter()
rows = di.run_table_experiment(exp, TABLE1_GRID[:4])
results["experiment_seconds"] = time.perf_counter() - t0
results["experiment_series"] = n_series
results["experiment_checksum"] = float(sum(r.mean_total for r in rows))

print(json.dumps(results))
"""


def run_worker(disable_jit: bool, quick: bool) -> dict:
    env = dict(os.environ)
    if disable_jit:
        env["DRIFTINV_DISABLE_JIT"] = "1"
    else:
        env.pop("DRIFTINV_DISABLE_JIT", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, "quick" if quick else "full"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="scale workloads down 10x")
    args = parser.parse_args()

    print("running numba path ...")
    jit = run_worker(disable_jit=False, quick=args.quick)
    print("running numpy fallback (DRIFTINV_DISABLE_JIT=1) ...")
    plain = run_worker(disable_jit=True, quick=args.quick)

    if not jit["jit"]:
        print("note: numba unavailable; both runs used the fallback")

    names = [
        ("gamma_seconds", f"incomplete gamma ({jit['gamma_evals']} evals)"),
        ("mc_seconds", f"event-driven MC ({jit['mc_paths']} paths)"),
        ("experiment_seconds", f"rolling experiment ({jit['experiment_series']} series x 4 rows)"),
    ]
    print(f"\n{'workload':<44} {'numba':>10} {'numpy':>10} {'speedup':>9}")
    for key, label in names:
        speed = plain[key] / jit[key] if jit[key] > 0 else float("inf")
        print(f"{label:<44} {jit[key]:>9.3f}s {plain[key]:>9.3f}s {speed:>8.1f}x")

    mismatches = [
        key
        for key in ("gamma_checksum", "mc_checksum", "experiment_checksum")
        if jit[key] != plain[key]
    ]
    if mismatches:
        print(f"\nOUTPUT MISMATCH between paths: {mismatches}")
        return 1
    print("\noutputs identical across both paths")
    return 0


if __name__ == "__main__":
    sys.exit(main())
