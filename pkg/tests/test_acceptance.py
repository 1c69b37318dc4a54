"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""
import itertools
import math
import random
import time
from fractions import Fraction

import pytest
import sympy

from rsss.algebra import Tridegree
from rsss.coefficients import CoeffRing
from rsss.ext import closed_form_ranks, closed_form_setup, ext_via_bar, z2_group
from rsss.scenarios import (left_right, pgl, projective_space, stiefel, stiefel_crosscheck, torus_on_gln,
                            torus_punctured, weighted_gln)
from rsss.spectral import enumerate_possible_differentials
from rsss.symmetric import (TwoNotInvertibleError, antisymmetric_decompose, remainder_sign_report, split_primes,
                            swap_primes, vex)

from conftest import F2, F3, F5, Q, Z, leibniz_trials

z = sympy.Symbol("z")


def report(capsys, number, name, ok, elapsed, limit, detail=""):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = "criterion %2d %s  %-34s %6.2fs (limit %ss)%s" % (
        number, status, name, elapsed, limit, "  " + detail if detail else "")
    with capsys.disabled():
        print("\n" + line)
    assert ok, detail
    assert elapsed < limit, "took %.2fs, limit %ss" % (elapsed, limit)


def truncated_ranks(n, j, bounds):
    """Ranks of Lambda(r_k : k != j)[t]/(t^j) by direct counting; j=None means no truncation."""
    rhos = [k for k in range(1, n + 1) if k != j]
    out = {}
    top = bounds.max_filt if j is None else j - 1
    for size in range(len(rhos) + 1):
        for subset in itertools.combinations(rhos, size):
            p0 = sum(2 * k - 1 for k in subset)
            w0 = sum(subset)
            for a in range(top + 1):
                t = Tridegree(a, a + p0, a + w0)
                if t.s <= bounds.max_filt and t.p <= bounds.max_deg:
                    out[t] = out.get(t, 0) + 1
    return out


def test_criterion_01_projective_space(capsys):
    start = time.perf_counter()
    bad = []
    for ring in (Q, F3):
        for n in range(1, 7):
            res = projective_space(n, ring)
            want = {Tridegree(i, i, i): 1 for i in range(n)}
            if res.ranks() != want or any(res.page.torsion(t) for t in res.page.visible()):
                bad.append((ring.spelling(), n))
    report(capsys, 1, "projective space", not bad, time.perf_counter() - start, 1, str(bad) if bad else "")


PGL_CASES = [(2, Q), (3, Q), (3, F3), (4, F2), (5, F5)]


def _least_binomial(n, ring):
    p = ring.modulus if ring.kind == "zmod" else 0
    return min(i for i in range(1, n + 1) if (math.comb(n, i) % p if p else math.comb(n, i)) != 0)


def test_criterion_02_pgl(capsys):
    start = time.perf_counter()
    bad = []
    for n, ring in PGL_CASES:
        i = _least_binomial(n, ring)
        engine = weighted_gln(n, [1] * n, ring)
        want = truncated_ranks(n, i, engine.bounds)
        if engine.ranks() != want or engine.bounds.max_filt != 2 * n + 2:
            bad.append((n, ring.spelling(), "engine"))
        res = pgl(n, ring)
        if not res.closed_form_agrees or res.metadata["least_nonzero_binomial"] != i:
            bad.append((n, ring.spelling(), "closed form"))
    report(capsys, 2, "PGL_n closed form", not bad, time.perf_counter() - start, 10, str(bad) if bad else "")


def test_criterion_03_bar_ext_oracle(capsys):
    start = time.perf_counter()
    bad = []
    count = 0
    for ring in (Q, F3):
        for cfg in itertools.product(range(3), repeat=3):
            module = closed_form_setup(*cfg, coeff=ring)
            got = ext_via_bar(module, 4).ranks()
            if got != closed_form_ranks(module.closed_form, 4):
                bad.append((ring.spelling(), cfg))
            count += 1
    report(capsys, 3, "bar Ext vs closed form", not bad, time.perf_counter() - start, 60,
           "%d configurations" % count + (" mismatches %s" % bad if bad else ""))


def test_criterion_04_z2_group_ring(capsys):
    start = time.perf_counter()
    res = ext_via_bar(z2_group(Z), 6)
    ok = res.degree(0) == (1, [])
    for i in range(1, 4):
        ok = ok and res.degree(2 * i) == (0, [2]) and res.degree(2 * i - 1) == (0, [])
    report(capsys, 4, "Z/2 group ring over Z", ok, time.perf_counter() - start, 5)


def _sympy_poly(roots):
    return sympy.Poly(sympy.prod([z - r for r in roots]) if roots else sympy.Integer(1), z)


def test_criterion_05_remainder_identity(capsys):
    start = time.perf_counter()
    rng = random.Random(5)
    bad, flagged = [], 0
    for _ in range(200):
        n = rng.randint(1, 6)
        m = rng.randint(0, n - 1)
        u = [rng.randint(-9, 9) for _ in range(n)]
        v = [rng.randint(-9, 9) for _ in range(m)]
        f_u, f_v = _sympy_poly(u), _sympy_poly(v)
        q, r = sympy.div(f_u, f_v)
        ext = (f_v * q).all_coeffs()[::-1]
        rc = r.all_coeffs()[::-1]
        res = vex(u, v)
        rows = remainder_sign_report(u, v)
        for i in range(1, n + 1):
            sig_u = sum(math.prod(c) for c in itertools.combinations(u, i))
            sig_vex = (-1) ** i * ext[n - i]
            r_coeff = rc[n - i] if n - i < len(rc) else 0
            if (-1) ** i * (sig_u - sig_vex) != r_coeff or res.sigma_vex[i - 1] != sig_vex:
                bad.append((u, v, i))
            alt_disagrees = (-1) ** (n - i) * r_coeff != sig_u - sig_vex
            if rows[i - 1]["n_minus_i_disagrees"] != alt_disagrees:
                bad.append((u, v, i, "flag"))
            flagged += alt_disagrees
    report(capsys, 5, "remainder sign identity", not bad, time.perf_counter() - start, 1,
           "(-1)^(n-i) reading flagged at %d indices" % flagged)


def _left_right_pairs(rng):
    pairs = [((3, -1, 4), (4, 3, -1))]
    while len(pairs) < 20:
        n = rng.randint(1, 4)
        u = tuple(rng.randint(-4, 4) for _ in range(n))
        v = tuple(rng.randint(-4, 4) for _ in range(n))
        pairs.append((u, v))
    return pairs


def _first_sigma_difference(u, v):
    for i in range(1, len(u) + 1):
        su = sum(math.prod(c) for c in itertools.combinations(u, i))
        sv = sum(math.prod(c) for c in itertools.combinations(v, i))
        if su != sv:
            return i
    return None


def test_criterion_06_left_right(capsys):
    start = time.perf_counter()
    bad, free = [], 0
    for u, v in _left_right_pairs(random.Random(6)):
        j = _first_sigma_difference(u, v)
        free += j is None
        res = left_right(len(u), u, v, Q)
        if res.ranks() != truncated_ranks(len(u), j, res.bounds) or res.metadata["first_sigma_difference"] != j:
            bad.append((u, v, j))
    report(capsys, 6, "left-right closed form", not bad and free >= 1, time.perf_counter() - start, 30,
           "%d pairs without truncation" % free + (" mismatches %s" % bad if bad else ""))


def _brute_split_primes(coeffs, limit):
    out = []
    for p in sympy.primerange(3, limit + 1):
        poly = [c % p for c in coeffs]
        roots = []
        while len(poly) > 1:
            r = next((x for x in range(p) if sum(c * pow(x, k, p) for k, c in enumerate(poly)) % p == 0), None)
            if r is None:
                break
            roots.append(r)
            # synthetic division by (z - r)
            quo = [0] * (len(poly) - 1)
            acc = 0
            for k in range(len(poly) - 1, 0, -1):
                acc = (acc * r + poly[k]) % p
                quo[k - 1] = acc
            poly = quo
        if len(poly) == 1:
            out.append(p)
    return out


def test_criterion_07_stiefel_crosscheck(capsys):
    start = time.perf_counter()
    u, v = (1, 2, 3), (0,)
    q = list(vex(u, v).q)
    primes = _brute_split_primes(q, 100)
    ok = bool(primes) and primes == [p for p, _ in split_primes(q, 100)]
    disagree = [p for p in primes if not stiefel_crosscheck(3, 1, u, v, p).agree]
    report(capsys, 7, "Stiefel mod-p cross-check", ok and not disagree, time.perf_counter() - start, 10,
           "%d split primes" % len(primes) + (" disagree at %s" % disagree if disagree else ""))


def test_criterion_08_leibniz(capsys):
    start = time.perf_counter()
    rng = random.Random(8)
    runs = [projective_space(4, Q, keep_pages=True), torus_punctured(3, Q, keep_pages=True),
            torus_on_gln(3, Q, keep_pages=True), torus_on_gln(3, F5, keep_pages=True),
            stiefel(4, 2, (1, 2, 3, 4), (0, 1), keep_pages=True), left_right(3, (1, 2, 3), (0, 0, 1), F5, keep_pages=True)]
    steps = []
    for res in runs:
        for page in res.pages[:-1]:
            rules = [x for x in res.page.rules_so_far if x.page == page.r]
            if any(not x.target.is_zero() for x in rules):
                steps.append((page, rules))
    checked, failures = 0, []
    while checked < 500:
        progress = 0
        for page, rules in steps:
            c, f = leibniz_trials(page, rules, rng, 10)
            checked += c
            progress += c
            failures += f
            if checked >= 500:
                break
        if not progress:
            break
    report(capsys, 8, "Leibniz rule on scenario pages", checked >= 500 and not failures,
           time.perf_counter() - start, 5, "%d pairs over %d pages, %d failures" % (checked, len(steps), len(failures)))


def _random_antisymmetric(rng, k, deg):
    g = {}
    for _ in range(rng.randint(1, 5)):
        e = [0] * (2 * k)
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(2 * k)] += 1
        g[tuple(e)] = g.get(tuple(e), 0) + rng.randint(-5, 5)
    f = dict(g)
    for e, c in swap_primes(g, k).items():
        f[e] = f.get(e, 0) - c
    return {e: Fraction(c) for e, c in f.items() if c}


def _to_sympy(f, xs):
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([x ** a for x, a in zip(xs, e)])
                            for e, c in f.items()))


def test_criterion_09_antisymmetric(capsys):
    start = time.perf_counter()
    rng = random.Random(9)
    bad = []
    for _ in range(100):
        k = rng.randint(1, 3)
        f = _random_antisymmetric(rng, k, 4)
        parts = antisymmetric_decompose(f, k, Q)
        xs = sympy.symbols("c1:%d" % (k + 1)) + sympy.symbols("d1:%d" % (k + 1))
        swap = dict(zip(xs, xs[k:] + xs[:k]))
        total = sum((xs[j] - xs[k + j]) * _to_sympy(p, xs) for j, p in enumerate(parts))
        if sympy.expand(total - _to_sympy(f, xs)) != 0:
            bad.append(("reconstruction", f))
        for p in parts:
            g = _to_sympy(p, xs)
            if sympy.expand(g.xreplace(swap) - g) != 0:
                bad.append(("not fixed", p))
    try:
        antisymmetric_decompose({(1, 1): 1}, 1, F2)
        bad.append("c1*c1' over Z/2 accepted")
    except TwoNotInvertibleError:
        pass
    report(capsys, 9, "antisymmetric decomposition", not bad, time.perf_counter() - start, 2,
           str(bad[:3]) if bad else "")


def test_criterion_10_field_completeness(capsys):
    start = time.perf_counter()
    runs = [projective_space(n, ring) for ring in (Q, F3) for n in range(1, 7)]
    runs += [pgl(n, ring) for n, ring in PGL_CASES]
    runs += [left_right(len(u), u, v, Q) for u, v in _left_right_pairs(random.Random(6))]
    runs += [left_right(3, (1, 2, 3), (0, 0, 1), F5), left_right(2, (2, 3), (1, 4), F3)]
    bad = []
    for res in runs:
        unruled = [c for c in enumerate_possible_differentials(res.page) if not c.ruled]
        if unruled or res.log.unruled:
            bad.append((res.spec.to_json(), unruled[:2]))
    report(capsys, 10, "no unruled candidates over fields", not bad, time.perf_counter() - start, 10,
           "%d runs" % len(runs) + (" offending %s" % bad[:2] if bad else ""))
