"""Time the compiled scan kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--scale 1.0]

Each row checks that both backends return identical results before timing.
"""

import argparse
import timeit

from padicfe import kernels


def workloads(scale: float):
    n = int(10**6 * scale)
    return [
        ("ord_scan p=2 (sumx N=1e6)", kernels.ord_scan, (2, 0, -1, 1, n, 3)),
        ("ord_scan p=3 alpha=-1/2", kernels.ord_scan, (3, -1, 2, 0, n)),
        ("ord_scan p=5 alpha=7, i>7", kernels.ord_scan, (5, 7, 1, 8, n)),
        ("poly_ord_scan x(x-1) p=5", kernels.poly_ord_scan, (5, [0, -1, 1], 2, int(5**8 * scale))),
        ("poly_ord_scan 8x^2+16x+16 p=5", kernels.poly_ord_scan, (5, [16, 16, 8], 0, n)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--scale", type=float, default=1.0, help="multiply scan lengths")
    args = ap.parse_args()

    if kernels.BACKEND != "cython":
        print("compiled extension unavailable; only the Python backend can run")
    print(f"{'workload':34s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn, fargs in workloads(args.scale):
        py = fn(*fargs, backend="python")
        t_py = min(timeit.repeat(lambda: fn(*fargs, backend="python"), number=1, repeat=args.repeat))
        if kernels.BACKEND == "cython":
            cy = fn(*fargs, backend="cython")
            if cy != py:
                raise SystemExit(f"{name}: backends disagree ({cy} vs {py})")
            t_cy = min(timeit.repeat(lambda: fn(*fargs, backend="cython"), number=1, repeat=args.repeat))
            print(f"{name:34s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")
        else:
            print(f"{name:34s} {t_py:10.4f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
