"""Time the numba and numpy kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are called directly, so the TWOTONE_DISABLE_NUMBA flag does
not matter here.  Results are checked for equality before timing.
"""
import argparse
import time

import numpy as np

from twotone import _kernels as K
from twotone.coloring import _affine_table, _masks, coloring_space
from twotone.diagram import braid_closure, generate_pretzel, generate_torus_two_strand, parse_link_text


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def crossing_arrays(d):
    xs = d.crossing_arcs
    return [np.array(v, dtype=np.int64) for v in
            ([x.over for x in xs], [x.under_in for x in xs], [x.under_out for x in xs], [x.sign for x in xs])]


def cases():
    unlink = parse_link_text(" ".join(f"O[{i}]" for i in range(1, 7)))
    for n in (5, 8):
        mod = coloring_space(unlink, ("R",) * 6, n).module
        g, o = mod.generator_array(), mod.order_array()
        yield (f"span 6-component unlink n={n} ({mod.count} rows)",
               lambda g=g, o=o, n=n: K.span_mod_n_np(g, o, n),
               lambda g=g, o=o, n=n: K._span_mod_n_nb(g, o, n))
    # a coordinate that vanishes on every solution forces a full scan
    g = np.hstack([np.eye(6, dtype=np.int64), np.zeros((6, 1), dtype=np.int64)])
    o = np.full(6, 8, dtype=np.int64)
    mask = np.zeros(7, dtype=bool)
    mask[[0, 6]] = True
    yield (f"exhaustive two-tone scan, no hit ({8 ** 6} rows)",
           lambda: K.first_all_nonzero_np(g, o, 8, mask),
           lambda: K._odometer_search_nb(g, o, 8, mask, np.zeros_like(mask), 0))
    p666 = generate_pretzel([6, 6, 6])
    mod = coloring_space(p666, ("R", "R", "R"), 12).module
    g2, o2 = mod.generator_array(), mod.order_array()
    tmask, rmask = _masks(p666, ("R", "R", "R"))
    yield (f"surjection search P(6,6,6) Fox n=12 ({mod.count} rows)",
           lambda: K.first_generating_np(g2, o2, 12, tmask, rmask),
           lambda: K._odometer_search_nb(g2, o2, 12, tmask, rmask, 1))
    for name, d, n in (("T(2,8)", generate_torus_two_strand(8), 6),
                       ("borromean", braid_closure([1, -2] * 3, 3), 8)):
        args = (_affine_table(n), *crossing_arrays(d), d.arc_count)
        yield (f"oracle {name} n={n} ((2n)^{d.arc_count} assignments)",
               lambda a=args: K.brute_force_np(*a), lambda a=args: K.brute_force_nb(*a))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if K.njit is None:
        raise SystemExit("numba is not installed")
    print(f"{'case':58s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for label, np_fn, nb_fn in cases():
        a, b = np_fn(), nb_fn()  # also compiles the numba kernel
        assert np.array_equal(np.asarray(a), np.asarray(b)), label
        t_np = best_of(np_fn, args.repeat)
        t_nb = best_of(nb_fn, args.repeat)
        print(f"{label:58s} {1e3 * t_np:10.2f} {1e3 * t_nb:10.2f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
