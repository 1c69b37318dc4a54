from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rsss.coefficients import CoeffRing, RingError, binomial_in_ring, is_unit, reduce

RINGS = [CoeffRing.integers(), CoeffRing.rationals(), CoeffRing.mod(3), CoeffRing.mod(12),
         CoeffRing.localized([2]), CoeffRing.localized([2, 5])]


def test_reduce_examples():
    assert reduce(7, CoeffRing.mod(3)) == 1
    for ring in RINGS:
        assert reduce(0, ring) == 0
    assert reduce(6, CoeffRing.localized([2])) == 6


def test_unit_examples():
    assert is_unit(1, CoeffRing.mod(3))
    assert not is_unit(reduce(3, CoeffRing.mod(3)), CoeffRing.mod(3))
    z2 = CoeffRing.localized([2])
    assert is_unit(2, z2)
    assert not is_unit(3, z2)
    assert is_unit(Fraction(1, 4), z2)


def test_binomials():
    assert binomial_in_ring(3, 1, CoeffRing.mod(3)) == 0
    assert binomial_in_ring(3, 3, CoeffRing.mod(3)) == 1
    assert binomial_in_ring(4, 2, CoeffRing.rationals()) == 6
    with pytest.raises(RingError):
        binomial_in_ring(3, 4, CoeffRing.rationals())


def test_spelling_round_trip():
    for text in ["z", "q", "zmod:7", "zloc:2", "zloc:2,3"]:
        assert CoeffRing.parse(text).spelling() == text


@pytest.mark.parametrize("text", ["zmod:1", "zloc:4", "zloc:2,2", "r", "zmod:x"])
def test_bad_spellings(text):
    with pytest.raises(RingError):
        CoeffRing.parse(text)


def test_localized_rejects_other_denominators():
    with pytest.raises(RingError):
        CoeffRing.localized([2]).reduce(Fraction(1, 3))


def _elements(ring):
    ints = st.integers(-50, 50)
    if ring.kind in ("q",):
        return st.builds(Fraction, ints, st.integers(1, 9))
    if ring.kind == "zloc":
        return st.builds(lambda a, k: Fraction(a, ring.primes[0] ** k), ints, st.integers(0, 3))
    return ints


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.spelling())
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_ring_axioms(ring, data):
    a, b, c = (ring.reduce(data.draw(_elements(ring))) for _ in range(3))
    assert ring.reduce(a) == a
    assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
    assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
    assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
    assert ring.add(a, ring.neg(a)) == 0
    if ring.is_unit(a) and ring.is_unit(b):
        assert ring.is_unit(ring.mul(a, b))
    if ring.is_unit(a):
        assert ring.mul(a, ring.inv(a)) == 1


@pytest.mark.parametrize("ring", [CoeffRing.integers(), CoeffRing.localized([2]), CoeffRing.mod(7)],
                         ids=lambda r: r.spelling())
@settings(max_examples=200, deadline=None)
@given(a=st.integers(-200, 200), b=st.integers(-30, 30))
def test_division_with_remainder(ring, a, b):
    a, b = ring.reduce(a), ring.reduce(b)
    if b == 0:
        return
    q, r = ring.divmod(a, b)
    assert ring.add(ring.mul(q, b), r) == a
    assert r == 0 or ring.norm(r) < ring.norm(b)


def test_standing_assumption():
    assert CoeffRing.localized([2]).minus_one_class_vanishes()
    assert not CoeffRing.integers().minus_one_class_vanishes()
    assert not CoeffRing.mod(2).minus_one_class_vanishes()
    assert CoeffRing.mod(2, sqrt_minus_one=True).minus_one_class_vanishes()
