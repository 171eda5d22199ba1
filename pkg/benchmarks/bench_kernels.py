"""Benchmark the hot classical kernels: numba JIT path vs numpy fallback.

The backend is chosen at import time from the ESQPT_DISABLE_NUMBA environment
variable, so each variant is timed in its own subprocess and the parent prints
a comparison table.

Usage:  python benchmarks/bench_kernels.py [--n 2000000] [--repeat 5]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _worker(n, repeat):
    from esqpt import _kernels

    rng = np.random.default_rng(42)
    pts = rng.standard_normal((4, n))
    pts *= (np.sqrt(2.0) * rng.random(n) ** 0.25) / np.linalg.norm(pts, axis=0)
    x, y, px, py = pts
    b0, ze, xi = 1.7, 1.0, 0.8

    def best_of(fn):
        fn()  # warm-up (includes JIT compilation on the numba path)
        times = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t0)
        return min(times)

    results = {
        "backend": "numba" if _kernels.USE_NUMBA else "numpy",
        "n": n,
        "h_eval": best_of(lambda: _kernels.h_eval(x, y, px, py, b0, ze, xi)),
        "h_grad": best_of(lambda: _kernels.h_grad(x, y, px, py, b0, ze, xi)),
        "h_hess": best_of(lambda: _kernels.h_hess(x, y, px, py, b0, ze, xi)),
        "potential": best_of(lambda: _kernels.potential(x, y, b0, ze, xi)),
    }
    json.dump(results, sys.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2_000_000, help="points per evaluation")
    ap.add_argument("--repeat", type=int, default=5, help="repetitions (best-of)")
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.worker:
        _worker(args.n, args.repeat)
        return

    rows = []
    for disable in ("1", "0"):
        env = dict(os.environ, ESQPT_DISABLE_NUMBA=disable)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker",
             "--n", str(args.n), "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True,
        )
        rows.append(json.loads(out.stdout))

    kernels = ["h_eval", "h_grad", "h_hess", "potential"]
    print(f"points per call: {args.n}, best of {args.repeat}\n")
    print(f"{'kernel':<12}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    by_backend = {r["backend"]: r for r in rows}
    for k in kernels:
        t_np = by_backend["numpy"][k] * 1e3
        t_nb = by_backend.get("numba", by_backend["numpy"])[k] * 1e3
        print(f"{k:<12}{t_np:>12.2f}{t_nb:>12.2f}{t_np / t_nb:>9.2f}x")
    if "numba" not in by_backend:
        print("\nnumba unavailable: both columns ran the numpy fallback")


if __name__ == "__main__":
    main()
