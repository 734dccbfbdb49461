"""Timing comparison of the compiled and pure kernel backends.

Two views: raw kernel calls (both implementations imported side by side
in this process) and an end-to-end q-series workload run in a fresh
subprocess per backend, since the series layer binds its backend at
import time.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--size N]
"""

import argparse
import os
import statistics
import subprocess
import sys
import time
from fractions import Fraction

from genusforge._kernels import pure

try:
    from genusforge._kernels import _speedups
except ImportError:
    _speedups = None

ZERO = Fraction(0)

WORKLOAD = (
    "import time; start = time.perf_counter();"
    "from genusforge.rings import RATIONAL;"
    "from genusforge.theta import euler_product;"
    "s = euler_product({order}, ring=RATIONAL); p = s * s; q = p.inv();"
    "print(time.perf_counter() - start)"
)


def fraction_data(size):
    a = [Fraction((-1) ** i * (i + 1), i + 2) for i in range(size)]
    b = [Fraction((i % 7) - 3, 2 * i + 1) for i in range(size)]
    return a, b


def best_of(repeat, fn, *args):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def bench_raw(repeat, size):
    a, b = fraction_data(size)
    inv_input = [Fraction(1)] + a[1:]
    rows = []
    backends = [("pure", pure)] + ([("compiled", _speedups)] if _speedups else [])
    for label, mod in backends:
        rows.append((
            label,
            best_of(repeat, mod.convolve_trunc, a, b, size, ZERO),
            best_of(repeat, mod.series_inv, inv_input, size, Fraction(1), ZERO),
        ))
    return rows


def bench_end_to_end(repeat, order):
    rows = []
    for label, env_value in (("pure", "1"), ("compiled", "")):
        if label == "compiled" and _speedups is None:
            continue
        env = dict(os.environ)
        if env_value:
            env["GENUSFORGE_PURE"] = env_value
        else:
            env.pop("GENUSFORGE_PURE", None)
        times = []
        for _ in range(repeat):
            out = subprocess.run(
                [sys.executable, "-c", WORKLOAD.format(order=order)],
                capture_output=True, text=True, env=env, check=True,
            )
            times.append(float(out.stdout.strip()))
        rows.append((label, min(times), statistics.mean(times)))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--size", type=int, default=400,
                        help="coefficient count for the raw kernel calls")
    parser.add_argument("--order", type=int, default=200,
                        help="slot count for the end-to-end series workload")
    args = parser.parse_args(argv)

    if _speedups is None:
        print("compiled backend not importable; timing the pure backend only")

    print(f"raw kernels on {args.size} exact rational coefficients "
          f"(best of {args.repeat})")
    raw = bench_raw(args.repeat, args.size)
    for label, conv, inv in raw:
        print(f"  {label:9s} convolve_trunc {conv * 1e3:8.2f} ms   "
              f"series_inv {inv * 1e3:8.2f} ms")
    if len(raw) == 2:
        print(f"  speedup   convolve_trunc {raw[0][1] / raw[1][1]:8.2f} x    "
              f"series_inv {raw[0][2] / raw[1][2]:8.2f} x")

    print(f"end-to-end euler_product({args.order})^2 and inverse, fresh "
          f"process per run (best of {args.repeat})")
    ete = bench_end_to_end(args.repeat, args.order)
    for label, best, mean in ete:
        print(f"  {label:9s} best {best:7.3f} s   mean {mean:7.3f} s")
    if len(ete) == 2:
        print(f"  speedup   {ete[0][1] / ete[1][1]:.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
