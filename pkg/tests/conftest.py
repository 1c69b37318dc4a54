import pytest

from rsss.coefficients import CoeffRing

Q = CoeffRing.rationals()
Z = CoeffRing.integers()
F2 = CoeffRing.mod(2, sqrt_minus_one=True)
F3 = CoeffRing.mod(3)
F5 = CoeffRing.mod(5)
Z_HALF = CoeffRing.localized([2])


@pytest.fixture(autouse=True)
def _fresh_ext_cache():
    from rsss.ext import clear_cache
    clear_cache()
    yield


def random_cycle(page, t, rng, ring):
    """Random nonzero representative of a class in E_r(t), or None."""
    e = page.entry(t)
    if e is None or not e.Z:
        return None
    from rsss.algebra import AlgebraElement
    from rsss.linalg import add_scaled
    v = [ring.zero()] * len(e.monos)
    for z in e.Z:
        v = add_scaled(ring, v, z, ring.reduce(rng.randint(-3, 3)))
    x = AlgebraElement(page.pres, {m: c for m, c in zip(e.monos, v) if c != 0}, reduce=False)
    return None if x.is_zero() else x


def leibniz_trials(page, rules, rng, count):
    """Check d(xy) = d(x)y + (-1)^(s+p) x d(y) on random cycle pairs of page.

    Returns (checked, failures); products are reduced in E_2 before d is applied
    and the two sides are compared modulo the page's boundaries.
    """
    from rsss.algebra import differential_shift
    from rsss.spectral import differential_on
    D, _ = differential_on(page, rules)
    pres, ring = page.pres, page.ring
    shift = differential_shift(page.r)
    degs = [t for t, e in page.entries.items() if e.Z]
    checked, failures = 0, []
    attempts = 0
    while checked < count and attempts < 50 * count:
        attempts += 1
        a, b = rng.choice(degs), rng.choice(degs)
        t = a + b
        if t not in page.entries or t + shift not in page.entries:
            continue
        x, y = random_cycle(page, a, rng, ring), random_cycle(page, b, rng, ring)
        if x is None or y is None:
            continue
        lhs = D.apply(pres.multiply(x, y))
        sign = -1 if a.parity else 1
        rhs = pres.multiply(D.apply(x), y, reduce=False) + pres.multiply(x, D.apply(y), reduce=False).scale(sign)
        checked += 1
        if not page.same_class(lhs, rhs, t + shift):
            failures.append((str(x), str(y)))
    return checked, failures
