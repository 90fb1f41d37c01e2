#!/usr/bin/env python3
"""Benchmark the compiled mod-p kernels against the pure-Python fallback.

The workload mirrors the census hot path: degree-partition factorization
(irreducibility screening + 50-prime fingerprints) and Rabin tests over
small primes. Both backends are run on identical inputs and checked for
agreement.

Usage: python benchmarks/bench_kernels.py [--trials N]
"""
import argparse
import pathlib
import random
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).parent.parent / "src"))

from hyperfield._kernels import pure  # noqa: E402

try:
    from hyperfield._kernels import _speed
except ImportError:
    _speed = None


def workload(trials: int, seed: int = 0):
    rng = random.Random(seed)
    primes = [2, 3, 5, 7, 11, 13, 101, 257, 997, 65537]
    cases = []
    for _ in range(trials):
        deg = rng.randint(3, 10)
        coeffs = [rng.randint(-10**6, 10**6) for _ in range(deg)] + [rng.choice([1, 2, 3])]
        cases.append((coeffs, rng.choice(primes)))
    return cases


def run(backend, cases):
    ddf_out, irr_out, roots_out = [], [], []
    t0 = time.perf_counter()
    for coeffs, p in cases:
        try:
            ddf_out.append(tuple(backend.ddf_degrees(coeffs, p)))
        except ValueError as e:
            ddf_out.append(str(e))
    t1 = time.perf_counter()
    for coeffs, p in cases:
        if coeffs[-1] % p:
            irr_out.append(backend.irreducible_mod_p(coeffs, p))
    t2 = time.perf_counter()
    for coeffs, p in cases:
        if coeffs[-1] % p and p < 2000:
            roots_out.append(tuple(backend.roots_mod_p(coeffs, p)))
    t3 = time.perf_counter()
    return (ddf_out, irr_out, roots_out), (t1 - t0, t2 - t1, t3 - t2)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=20_000)
    args = ap.parse_args()

    cases = workload(args.trials)
    pure_out, pure_times = run(pure, cases)
    print(f"{'kernel':<22}{'pure (s)':>12}{'cython (s)':>14}{'speedup':>10}")
    if _speed is None:
        for name, tp in zip(("ddf_degrees", "irreducible_mod_p", "roots_mod_p"), pure_times):
            print(f"{name:<22}{tp:>12.3f}{'n/a':>14}{'n/a':>10}")
        print("\ncompiled backend not built; run `python setup.py build_ext --inplace`")
        return
    speed_out, speed_times = run(_speed, cases)
    assert pure_out == speed_out, "backend outputs diverge"
    for name, tp, tc in zip(("ddf_degrees", "irreducible_mod_p", "roots_mod_p"), pure_times, speed_times):
        print(f"{name:<22}{tp:>12.3f}{tc:>14.3f}{tp / tc:>9.1f}x")
    print(f"\n{args.trials} cases per kernel; outputs identical across backends")


if __name__ == "__main__":
    main()
