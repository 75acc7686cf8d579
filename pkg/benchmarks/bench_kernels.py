"""Benchmark the compiled accumulation kernel against the NumPy fallback.

Times a single-threshold evaluation pass at several record counts and
prints one row per size with the speedup of the compiled path.

    python benchmarks/bench_kernels.py [--sizes 1e4,1e5,1e6] [--repeats 7]
"""

import argparse
import time

import numpy as np

from cwsa_eval import _kernels_py

try:
    from cwsa_eval import _kernels_c
except ImportError:
    _kernels_c = None


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="1e4,1e5,1e6")
    parser.add_argument("--repeats", type=int, default=7)
    parser.add_argument("--tau", type=float, default=0.7)
    args = parser.parse_args()
    sizes = [int(float(s)) for s in args.sizes.split(",")]

    rng = np.random.default_rng(0)
    print(f"{'n':>10}  {'python':>12}  {'compiled':>12}  {'speedup':>8}")
    for n in sizes:
        confidence = rng.uniform(0.0, 1.0, n)
        correct = (rng.random(n) < 0.5).astype(np.uint8)

        t_py = timeit(lambda: _kernels_py.point_accumulate(confidence, correct, args.tau), args.repeats)
        if _kernels_c is None:
            print(f"{n:>10}  {t_py * 1e3:>10.3f}ms  {'n/a':>12}  {'n/a':>8}")
            continue
        t_c = timeit(lambda: _kernels_c.point_accumulate(confidence, correct, args.tau), args.repeats)

        py_res = _kernels_py.point_accumulate(confidence, correct, args.tau)
        c_res = _kernels_c.point_accumulate(confidence, correct, args.tau)
        assert py_res[0] == c_res[0] and py_res[1] == c_res[1]
        assert abs(py_res[2] - c_res[2]) <= 1e-9 * max(1.0, abs(py_res[2]))
        assert abs(py_res[3] - c_res[3]) <= 1e-9 * max(1.0, abs(py_res[3]))

        print(f"{n:>10}  {t_py * 1e3:>10.3f}ms  {t_c * 1e3:>10.3f}ms  {t_py / t_c:>7.1f}x")

    if _kernels_c is None:
        print("\ncompiled kernel not built; install with `pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
