"""Time the compiled kernels against their fallback implementations.

Cycle detection ships a single kernel that numba compiles when
``STORALYZE_NUMBA`` permits; the fallback runs the same function
uncompiled.  The wavelet transform falls back to ``numpy.convolve``
instead.  This script times both paths on identical inputs, checks that
they produce the same numbers, and prints a small table.

Run from the repository root::

    python3 benchmarks/bench_kernels.py [--walks 5] [--hours 8760]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from storalyze._accel import USE_NUMBA
from storalyze.cycles import _detect_kernel, detect_kernel
from storalyze.spectral import _wavelet_kernel, cwt_direct_kernel, default_scales


def _time(func, repeats: int = 3) -> float:
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - start)
    return best


def bench_detection(walks: int, hours: int):
    rng = np.random.default_rng(11)
    series = []
    for _ in range(walks):
        x = np.cumsum(rng.normal(0.0, 0.05, hours))
        series.append((x - x.min()) / (x.max() - x.min()))

    detect_kernel(series[0], 0.05, 0.1, 0.1)  # compile before timing

    def compiled():
        for x in series:
            detect_kernel(x, 0.05, 0.1, 0.1)

    def fallback():
        for x in series:
            _detect_kernel(x, 0.05, 0.1, 0.1)

    for x in series[:3]:
        a = detect_kernel(x, 0.05, 0.1, 0.1)
        b = _detect_kernel(x, 0.05, 0.1, 0.1)
        count = a[0]
        assert count == b[0]
        assert np.array_equal(a[2][:count], b[2][:count])
        assert np.array_equal(a[3][:count], b[3][:count])

    return _time(compiled), _time(fallback)


def bench_cwt(hours: int, n_scales: int):
    rng = np.random.default_rng(12)
    x = np.sin(2 * np.pi * np.arange(hours) / 24.0) + 0.2 * rng.standard_normal(hours)
    x -= x.mean()
    scales = default_scales(hours)[:n_scales]
    kernels = [_wavelet_kernel(a, hours) for a in scales]

    kern0, half0 = kernels[0]
    cwt_direct_kernel(x, kern0, half0)  # compile before timing

    def compiled():
        for kern, half in kernels:
            cwt_direct_kernel(x, kern, half)

    def fallback():
        for kern, half in kernels:
            full = np.convolve(x, kern, mode="full")
            full[half : half + hours]

    for kern, half in kernels[:3]:
        a = cwt_direct_kernel(x, kern, half)
        b = np.convolve(x, kern, mode="full")[half : half + hours]
        np.testing.assert_allclose(a, b, rtol=1e-9, atol=1e-12)

    return _time(compiled), _time(fallback)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--walks", type=int, default=5,
                        help="random walks for the detection benchmark")
    parser.add_argument("--hours", type=int, default=8760,
                        help="samples per series")
    parser.add_argument("--scales", type=int, default=32,
                        help="wavelet scales to transform")
    args = parser.parse_args()

    if not USE_NUMBA:
        print("note: STORALYZE_NUMBA disabled the compiled path; "
              "both columns below run the fallback")

    rows = [
        ("cycle detection", f"{args.walks} x {args.hours} h",
         *bench_detection(args.walks, args.hours)),
        ("cwt direct", f"{args.scales} scales x {args.hours} h",
         *bench_cwt(args.hours, args.scales)),
    ]

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'workload':<20} {'compiled':>10} "
          f"{'fallback':>10} {'speedup':>8}")
    for name, load, fast, slow in rows:
        print(f"{name:<{width}}  {load:<20} {fast:>9.4f}s {slow:>9.4f}s "
              f"{slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
