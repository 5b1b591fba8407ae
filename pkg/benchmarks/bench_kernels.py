"""Compare the compiled and pure-Python hot kernels.

Usage: ``python benchmarks/bench_kernels.py [--repeat R]``.  Prints the best
time of ``R`` runs per kernel and backend, and the speedup.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from fraclap import _accel

CASES = {
    "image_sum (alpha=1.5, N=33, 2000 images)": lambda k: k.image_sum(1.5, 7, 33, 1, 2001),
    "log_gamma_ratio x1000": lambda k: [k.log_gamma_ratio(m - 0.75, m + 1.75) for m in range(5, 1005)],
    "abs_power_sum (|n| <= 10^5)": lambda k: k.abs_power_sum(0.3, 2.5, -100_000, 100_000),
}


def _matvec_case(n):
    rng = np.random.default_rng(0)
    row, u = rng.normal(size=n), rng.normal(size=n)
    return lambda k: k.circulant_matvec(row, u)


CASES["circulant_matvec (N=1024)"] = _matvec_case(1024)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = _accel.available_backends()
    print(f"backends: {', '.join(backends)} (active: {_accel.BACKEND})")
    print(f"{'kernel':45s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in CASES.items():
        times = []
        for b in backends:
            k = _accel.get_backend(b)
            fn(k)  # warm up
            number = 3
            times.append(min(timeit.repeat(lambda: fn(k), number=number, repeat=args.repeat)) / number)
        line = f"{name:45s}" + "".join(f"{t * 1e3:10.3f}ms" for t in times)
        if len(times) > 1:
            line += f"{times[1] / times[0]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
