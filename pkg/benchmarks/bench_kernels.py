"""Compare the compiled DTW kernel against the pure-Python fallback.

Runs the band-constrained accumulation on random local-cost matrices of
increasing size and reports wall-clock time per call plus the speedup.
Both kernels share the same contract, so results are checked for exact
agreement while timing.

Usage::

    python benchmarks/bench_kernels.py [--sizes 50 100 200 400] [--repeats 5]
"""

import argparse
import time

import numpy as np

from seqaug import _dtw_py

try:
    from seqaug import _dtw_cy
except ImportError:
    _dtw_cy = None


def time_kernel(accumulate, local, w, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = accumulate(local, w)
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="*",
                        default=[50, 100, 200, 400, 800])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--window-fraction", type=float, default=0.1)
    args = parser.parse_args(argv)

    if _dtw_cy is None:
        print("compiled kernel not built; only the Python fallback is timed")

    rng = np.random.default_rng(0)
    header = f"{'size':>6} {'band':>5} {'python':>12} {'cython':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for size in args.sizes:
        local = np.abs(rng.normal(size=(size, size)))
        w = max(1, int(np.ceil(args.window_fraction * size)))
        t_py, res_py = time_kernel(_dtw_py.accumulate, local, w, args.repeats)
        if _dtw_cy is None:
            print(f"{size:>6} {w:>5} {t_py * 1e3:>10.3f}ms {'-':>12} {'-':>8}")
            continue
        t_cy, res_cy = time_kernel(_dtw_cy.accumulate, local, w, args.repeats)
        assert res_cy[0] == res_py[0], "kernels disagree on distance"
        assert np.array_equal(res_cy[1], res_py[1]), "kernels disagree on path"
        print(f"{size:>6} {w:>5} {t_py * 1e3:>10.3f}ms {t_cy * 1e3:>10.3f}ms "
              f"{t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
