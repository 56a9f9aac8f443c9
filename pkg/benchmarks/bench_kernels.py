#!/usr/bin/env python3
"""Timing comparison of the compiled and pure-Python kernel backends.

Runs each hot kernel on representative workloads in a subprocess per
backend (backend choice is fixed at import time, so the comparison needs
two interpreters) and prints a small table with the speedup.

Usage:  python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import json
import os
import subprocess
import sys
import timeit

WORKLOADS = {
    "g_entropy_raw (1e5 calls, mixed range)": """
from satskr.kernels import g_entropy_raw
xs = [10.0 ** (k % 14 - 6) for k in range(100000)]
work = lambda: [g_entropy_raw(x) for x in xs]
""",
    "capture_fraction_centered (1e4 calls)": """
from satskr.kernels import capture_fraction_centered
work = lambda: [capture_fraction_centered(0.05, 0.11 + 1e-7 * k)
                for k in range(10000)]
""",
    "capture_fraction_offset (200 calls, adaptive)": """
from satskr.kernels import capture_fraction_offset
work = lambda: [capture_fraction_offset(0.05, 0.30, 0.29 + 1e-6 * k)
                for k in range(200)]
""",
}


def _measure(repeat: int) -> dict:
    from satskr.kernels import BACKEND

    results = {"backend": BACKEND, "times": {}}
    for name, setup in WORKLOADS.items():
        namespace: dict = {}
        exec(setup, namespace)
        timer = timeit.Timer(namespace["work"])
        number, _ = timer.autorange()
        best = min(timer.repeat(repeat=repeat, number=number)) / number
        results["times"][name] = best
    return results


def _run_child(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["SKR_PURE_PYTHON"] = "1" if pure else "0"
    out = subprocess.run(
        [sys.executable, __file__, "--child", "--repeat", str(repeat)],
        capture_output=True, text=True, env=env, check=True)
    return json.loads(out.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions per workload (default 3)")
    parser.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.child:
        json.dump(_measure(args.repeat), sys.stdout)
        return 0

    compiled = _run_child(pure=False, repeat=args.repeat)
    pure = _run_child(pure=True, repeat=args.repeat)
    if compiled["backend"] == pure["backend"]:
        print(f"only the {pure['backend']!r} backend is available; "
              "build the extension to compare")

    width = max(len(name) for name in WORKLOADS)
    print(f"{'workload':<{width}}  {compiled['backend']:>10}  "
          f"{pure['backend']:>10}  {'speedup':>8}")
    for name in WORKLOADS:
        fast = compiled["times"][name]
        slow = pure["times"][name]
        print(f"{name:<{width}}  {fast * 1e3:>8.2f}ms  {slow * 1e3:>8.2f}ms  "
              f"{slow / fast:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
