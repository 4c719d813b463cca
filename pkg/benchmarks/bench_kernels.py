"""Time the numba and numpy variants of each table kernel on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N]

The first numba call per kernel is a warm-up (compilation or cache load) and
is excluded from the timings.
"""
import argparse
import time

import numpy as np

from quandlekit import _accel, kernels
from quandlekit.links import closure_presentation, compile_presentation, parse_braid
from quandlekit.ordering import _permutations
from quandlekit.quandles import dihedral, trivial


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    tables3 = kernels.all_tables(3)
    yield "valid_mask  all 3x3 tables", kernels._valid_mask_loops, kernels._valid_mask_numpy, (tables3,)

    T7 = trivial(7).table
    perms7 = _permutations(7)
    yield "order_search trivial(7) right", kernels._order_search_loops, kernels._order_search_numpy, (T7, perms7, kernels.RIGHT)
    R8 = dihedral(8).table
    perms8 = _permutations(8)
    yield "order_search R8 bi", kernels._order_search_loops, kernels._order_search_numpy, (R8, perms8, kernels.BI)

    P = closure_presentation(parse_braid("s1 -s2 s1 -s2 s3 -s3", 4))
    Q = dihedral(13)
    args = (Q.table, Q.dual, 4, *compile_presentation(P), 0, 13**4)
    yield "colorings fig8+RII -> R13", kernels._count_colorings_loops, kernels._count_colorings_numpy, args


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        print("numba unavailable: the loop column times plain python loops")
    print(f"{'kernel':34s} {'numba (s)':>11s} {'numpy (s)':>11s} {'ratio':>7s}")
    for name, loops, vec, a in cases():
        loops(*a)  # warm-up
        t_loop, r_loop = best_of(lambda: loops(*a), args.repeat)
        t_vec, r_vec = best_of(lambda: vec(*a), args.repeat)
        same = np.array_equal(np.asarray(r_loop), np.asarray(r_vec))
        flag = "" if same else "  MISMATCH"
        print(f"{name:34s} {t_loop:11.4f} {t_vec:11.4f} {t_vec / max(t_loop, 1e-9):7.1f}{flag}")


if __name__ == "__main__":
    main()
