#!/usr/bin/env python3
"""Benchmark the compiled fixed-point Horner kernel against the pure-Python
fallback, and time full solves on each.

Usage: python benchmarks/bench_kernels.py [--degrees 500 1000 2000]
"""

import argparse
import time

from gmpy2 import mpz

from attractorlab._horner_py import FixedHorner as PyHorner
from attractorlab.polygen import partition_coeffs

try:
    from attractorlab._horner_gmp import FixedHorner as CyHorner
except ImportError:
    CyHorner = None


def bench_eval(n: int, F: int = 192, reps: int = 40):
    coeffs = partition_coeffs(n).coeffs[1:]
    zr = mpz(round(-0.8123 * (1 << F)))
    zi = mpz(round(0.5876 * (1 << F)))
    rows = []
    for name, cls in (("compiled", CyHorner), ("fallback", PyHorner)):
        if cls is None:
            continue
        h = cls(coeffs, F)
        h.eval_pair(zr, zi)  # warm up
        t0 = time.perf_counter()
        for _ in range(reps):
            h.eval_pair(zr, zi)
        dt = (time.perf_counter() - t0) / reps
        rows.append((name, dt))
    return rows


def bench_solve(n: int):
    import importlib
    import os

    import attractorlab.solver as solver_mod

    out = []
    for name, env in (("compiled", None), ("fallback", "1")):
        if name == "compiled" and CyHorner is None:
            continue
        if env:
            os.environ["ATTRACTORLAB_NO_EXT"] = env
        else:
            os.environ.pop("ATTRACTORLAB_NO_EXT", None)
        importlib.reload(solver_mod)
        p = partition_coeffs(n)
        t0 = time.perf_counter()
        zs = solver_mod.aberth_solve(p)
        out.append((name, time.perf_counter() - t0, zs.sweeps, zs.all_converged))
    os.environ.pop("ATTRACTORLAB_NO_EXT", None)
    importlib.reload(solver_mod)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--degrees", type=int, nargs="+", default=[500, 1000])
    ap.add_argument("--solve", action="store_true", help="also time full solves")
    args = ap.parse_args()

    print(f"{'degree':>8} {'kernel':>10} {'ms/point':>10}")
    for n in args.degrees:
        rows = bench_eval(n)
        base = None
        for name, dt in rows:
            mark = ""
            if base is None:
                base = dt
            else:
                mark = f"  ({dt / base:.1f}x slower)" if base else ""
            print(f"{n:>8} {name:>10} {dt * 1e3:>10.3f}{mark}")

    if args.solve:
        print(f"\n{'degree':>8} {'kernel':>10} {'seconds':>9} {'sweeps':>7} {'converged':>10}")
        for n in args.degrees:
            for name, dt, sweeps, conv in bench_solve(n):
                print(f"{n:>8} {name:>10} {dt:>9.1f} {sweeps:>7} {str(conv):>10}")


if __name__ == "__main__":
    main()
