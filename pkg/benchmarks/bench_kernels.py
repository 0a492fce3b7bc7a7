"""Compare the compiled and pure-Python rank kernels on jet matrices.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from curvesing import _kernels_py, _linalg
from curvesing.fields import gf
from curvesing.jets import n_monomials_below, relation_rows
from curvesing.poly import parse_poly

try:
    from curvesing import _kernels as compiled
except ImportError:
    compiled = None

CASES = [
    ("cusp p=5, N=32", 5, 1, "S^2+T^3", 32),
    ("three lines p=7, N=48", 7, 1, "S*T*(S+T)", 48),
    ("Fermat germ F_125, N=24", 5, 3, "S^5+T^4+S^3*T^2", 24),
    ("S^7+T^9 p=3, N=40", 3, 1, "S^7+T^9+S^4*T^4", 40),
]


def _gens(f):
    return [f, f.derivative("S"), f.derivative("T")]


def bench(kernels, F, rows, ncols, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        r = _linalg.rank(F, rows, ncols, kernels)
        best = min(best, time.perf_counter() - t)
    return r, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'case':28} {'rows x cols':>12} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, p, k, text, N in CASES:
        F = gf(p, k)
        f = parse_poly(text, F, ("S", "T"))
        rows, ncols = relation_rows(_gens(f), N), n_monomials_below(2, N)
        r_py, t_py = bench(_kernels_py, F, rows, ncols, args.repeat)
        if compiled is None:
            print(f"{name:28} {len(rows):>5} x {ncols:<5} {t_py:10.4f} {'n/a':>11}")
            continue
        r_c, t_c = bench(compiled, F, rows, ncols, args.repeat)
        assert r_c == r_py
        print(f"{name:28} {len(rows):>5} x {ncols:<5} {t_py:10.4f} {t_c:11.4f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
