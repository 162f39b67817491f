#!/usr/bin/env python3
"""Benchmark the Numerov kernels: numba JIT vs the pure-Python fallback.

The kernel implementation is selected at import time from HEUNQDOT_JIT, so
this script re-executes itself once with HEUNQDOT_JIT=0 to time the fallback
in a clean interpreter. Representative workload: one full eigensolve
(scan + bisection, coulomb on) plus a fixed number of raw lattice marches.

Usage: python benchmarks/bench_shooting.py [--steps 20000] [--marches 50]
"""

import argparse
import os
import subprocess
import sys
import time


def run_workload(steps: int, marches: int) -> dict:
    import numpy as np

    from heunqdot import _kernels
    from heunqdot.model import RadialProblem
    from heunqdot.oracle import ShootingConfig, solve_eigen

    problem = RadialProblem(omega=0.25, l=0)
    u = np.empty(steps + 1)

    # warm-up triggers JIT compilation; excluded from timings
    _kernels.fill_outward(0.7, 0.25, 0.0, 1.0, 1e-6, 5.0 / steps, 100, 200, u)
    _kernels.fill_inward(0.7, 0.25, 0.0, 1.0, 1e-6, 5.0 / steps, steps, steps - 200, u)

    t0 = time.perf_counter()
    for _ in range(marches):
        _kernels.fill_outward(0.7, 0.25, 0.0, 1.0, 1e-6, 40.0 / steps,
                              100, steps - 10, u)
    t_march = (time.perf_counter() - t0) / marches

    t0 = time.perf_counter()
    result = solve_eigen(problem, ShootingConfig(node_target=2, steps=steps),
                         coulomb_on=True)
    t_solve = time.perf_counter() - t0

    return {
        "jit": _kernels.JIT_ENABLED,
        "march_ms": 1e3 * t_march,
        "steps_per_s": steps / t_march,
        "eigensolve_s": t_solve,
        "etas": [e.eta for e in result.eigenvalues],
    }


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--steps", type=int, default=20000)
    parser.add_argument("--marches", type=int, default=50)
    parser.add_argument("--single", action="store_true",
                        help="run only the current HEUNQDOT_JIT setting")
    args = parser.parse_args()

    res = run_workload(args.steps, args.marches)
    label = "numba JIT" if res["jit"] else "pure Python"
    print(f"[{label:11s}] outward march: {res['march_ms']:8.3f} ms "
          f"({res['steps_per_s']:.2e} steps/s); "
          f"3-state eigensolve: {res['eigensolve_s']:6.2f} s")

    if args.single or not res["jit"]:
        return 0

    env = dict(os.environ, HEUNQDOT_JIT="0")
    code = subprocess.call(
        [sys.executable, __file__, "--steps", str(args.steps),
         "--marches", str(max(3, args.marches // 10)), "--single"],
        env=env)
    if code == 0:
        print("(fallback timed in a fresh interpreter; same lattice, "
              "fewer marches)")
    return code


if __name__ == "__main__":
    sys.exit(main())
