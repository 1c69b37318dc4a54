"""Compiled vs pure-Python rank kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--size 400]

Times the raw sparse rank kernels on random matrices, then a full bar-complex
Ext computation with each backend, and checks both backends agree.
"""
import argparse
import time

import numpy as np

from rsss import kernels
from rsss.coefficients import CoeffRing
from rsss.ext import clear_cache, closed_form_setup, ext_via_bar


def random_csr(rng, nrows, ncols, density, bound):
    indptr, indices, data = [0], [], []
    for _ in range(nrows):
        k = max(1, rng.binomial(ncols, density))
        cols = np.sort(rng.choice(ncols, size=k, replace=False))
        vals = rng.integers(-bound, bound + 1, size=k)
        vals[vals == 0] = 1
        indices.extend(cols.tolist())
        data.extend(vals.tolist())
        indptr.append(len(indices))
    return (np.array(indptr, dtype=np.int64), np.array(indices, dtype=np.int64),
            np.array(data, dtype=np.int64))


def best_of(fn, repeat):
    best, out = None, None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def _overflows(m, size):
    try:
        kernels._compiled.rank_rational(*m, size)
    except OverflowError:
        return True
    return False


def bench_raw(size, repeat):
    rng = np.random.default_rng(7)
    dense = [random_csr(rng, size, size, 0.02, 3) for _ in range(5)]
    signs = [random_csr(rng, size, size, 0.005, 1) for _ in range(5)]
    small = size // 2
    growth = [random_csr(rng, small, small, 0.05, 3) for _ in range(3)]
    cases = [
        ("rank mod 3, %d^2 x5" % size, lambda b: [kernels.rank_mod_p(*m, size, 3, backend=b) for m in dense], []),
        ("rank over Q, sparse +-1, %d^2 x5" % size,
         lambda b: [kernels.rank_rational(*m, size, backend=b) for m in signs], [(m, size) for m in signs]),
        ("rank over Q, entries in [-3,3], %d^2 x3" % small,
         lambda b: [kernels.rank_rational(*m, small, backend=b) for m in growth], [(m, small) for m in growth]),
    ]
    rows = []
    for label, call, checks in cases:
        tp, rp = best_of(lambda: call("python"), repeat)
        tc, rc = best_of(lambda: call("compiled"), repeat)
        assert rp == rc, (label, rp, rc)
        fell = sum(_overflows(m, n) for m, n in checks)
        if fell:
            label += " [%d overflowed to python]" % fell
        rows.append((label, tp, tc))
    return rows


def bench_ext(repeat):
    rows = []
    for coeff in (CoeffRing.rationals(), CoeffRing.mod(3)):
        module = closed_form_setup(2, 2, 0, coeff=coeff)

        def go(b):
            clear_cache()
            return ext_via_bar(module, 4, backend=b, use_cache=False).ranks()

        tp, rp = best_of(lambda: go("python"), repeat)
        tc, rc = best_of(lambda: go("compiled"), repeat)
        assert rp == rc
        rows.append(("bar Ext (2,2,0) over %s, degree 4" % coeff.spelling(), tp, tc))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--size", type=int, default=400)
    args = ap.parse_args()
    if kernels.BACKEND != "compiled":
        raise SystemExit("compiled kernels are not built; run pip install -e . first")
    rows = bench_raw(args.size, args.repeat) + bench_ext(args.repeat)
    width = max(len(r[0]) for r in rows)
    print("%s  %10s  %10s  %8s" % ("case".ljust(width), "python s", "compiled s", "speedup"))
    for label, tp, tc in rows:
        print("%s  %10.4f  %10.4f  %7.1fx" % (label.ljust(width), tp, tc, tp / tc if tc else float("inf")))


if __name__ == "__main__":
    main()
