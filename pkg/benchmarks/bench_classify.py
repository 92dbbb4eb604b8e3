#!/usr/bin/env python3
"""Benchmark the tile-search kernel: numba JIT path vs pure fallback.

Runs the full classification scan in two subprocesses (the path is chosen at
import time via HOMOMETRY_DISABLE_JIT) and reports wall times.  The JIT
timing is reported both cold (including compilation) and warm.

Usage: python benchmarks/bench_classify.py [--det-range 7:18]
"""

import argparse
import os
import subprocess
import sys
import textwrap

WORKLOAD = textwrap.dedent(
    """
    import time
    from homometry import classify2d as cl
    from homometry._kernels import search_base_raw

    lo, hi = {lo}, {hi}
    bases = []
    for det in range(lo, hi + 1):
        bases.extend(cl.search_bases_with_det(det))
    search_base_raw(*bases[0])  # trigger compilation outside the timing
    t0 = time.perf_counter()
    for b in bases:
        search_base_raw(*b)
    kernel = time.perf_counter() - t0

    config = cl.SearchConfig(det_lo=lo, det_hi=hi)
    t0 = time.perf_counter()
    result = cl.classify(config)
    total = time.perf_counter() - t0
    print(f"RESULT kernel={{kernel:.3f}} end_to_end={{total:.3f}} "
          f"bases={{len(bases)}} survivors={{result['survivor_count']}} "
          f"classes={{len(result['classes'])}}")
    """
)


def run(mode: str, lo: int, hi: int) -> str:
    env = dict(os.environ)
    if mode == "pure":
        env["HOMOMETRY_DISABLE_JIT"] = "1"
    else:
        env.pop("HOMOMETRY_DISABLE_JIT", None)
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD.format(lo=lo, hi=hi)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    line = next(l for l in proc.stdout.splitlines() if l.startswith("RESULT"))
    return line[len("RESULT ") :]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--det-range", default="7:18")
    args = parser.parse_args()
    lo, _, hi = args.det_range.partition(":")
    lo, hi = int(lo), int(hi)
    print(f"classification scan, determinants {lo}..{hi}")
    for mode in ("jit", "pure"):
        result = run(mode, lo, hi)
        print(f"  {mode:>4}: {result}")


if __name__ == "__main__":
    main()
