import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rsss.algebra import (EXTERIOR, POLYNOMIAL, AlgebraPresentation, PresentationError, StandingAssumptionError,
                          Tridegree, chow_height, dual_basis, gln_cohomology, multiply, stiefel_cohomology,
                          weighted_coaction)
from rsss.coefficients import CoeffRing

from conftest import F2, F3, Q, Z, Z_HALF


def lam(ring=Q):
    return AlgebraPresentation([("r1", (0, 1, 1), EXTERIOR), ("r2", (0, 3, 2), EXTERIOR),
                                ("t", (1, 1, 1), POLYNOMIAL)], coeff=ring)


def test_sign_examples():
    A = lam()
    r1, r2, t = A.gen("r1"), A.gen("r2"), A.gen("t")
    assert multiply(r1, r1).is_zero()
    assert multiply(r1, r2) == multiply(r2, r1).scale(-1)
    assert multiply(t, r1) == multiply(r1, t)


def test_parity_table():
    # exhaustive over the four parity combinations of s+p
    gens = [("a", (0, 1, 1), EXTERIOR), ("b", (1, 0, 1), EXTERIOR),
            ("x", (1, 1, 1), POLYNOMIAL), ("y", (0, 2, 1), POLYNOMIAL)]
    A = AlgebraPresentation(gens, coeff=Q)
    for g in A.generators:
        for h in A.generators:
            if g.name == h.name:
                continue
            sign = (-1) ** (g.degree.parity * h.degree.parity)
            assert multiply(A.gen(g.name), A.gen(h.name)) == multiply(A.gen(h.name), A.gen(g.name)).scale(sign)


def test_chow_height():
    assert chow_height(Tridegree(1, 1, 1)) == 0
    for n in range(1, 6):
        assert chow_height(Tridegree(0, 2 * n - 1, n)) == 1
    assert chow_height(Tridegree(0, 0, 0)) == 0


def test_gln_cohomology():
    A = gln_cohomology(1, Z_HALF)
    assert [(g.name, tuple(g.degree)) for g in A.generators] == [("r1", (0, 1, 1))]
    B = gln_cohomology(2, Z_HALF)
    assert sum(len(v) for v in B.monomials_in_box(0, 10).values()) == 4
    C = gln_cohomology(3, Q)
    assert [tuple(g.degree) for g in C.generators] == [(0, 1, 1), (0, 3, 2), (0, 5, 3)]
    with pytest.raises(StandingAssumptionError):
        gln_cohomology(2, Z)
    with pytest.raises(StandingAssumptionError):
        gln_cohomology(2, CoeffRing.mod(2))
    gln_cohomology(2, F2)


def test_stiefel_cohomology():
    assert stiefel_cohomology(3, 3, Q).gen_names() == gln_cohomology(3, Q).gen_names()
    assert stiefel_cohomology(3, 1, Z_HALF).gen_names() == ["r3"]
    assert stiefel_cohomology(4, 2, Q).gen_names() == ["r3", "r4"]
    with pytest.raises(ValueError):
        stiefel_cohomology(2, 3, Q)


def test_weighted_coaction():
    c = weighted_coaction(1, 1, [1], [0])
    assert sorted(c.image("r1")) == sorted([(1, "1", "r1"), (1, "tau", "1")])
    assert c.counit_ok()
    assert weighted_coaction(3, 0, [1, 1, 1], []).primitive_scalar("r1") == 3
    assert weighted_coaction(2, 2, [1, 2], [3, 0]).is_trivial()
    with pytest.raises(ValueError):
        weighted_coaction(2, 1, [1], [0])


def test_dual_basis():
    A = AlgebraPresentation([("r1", (0, 1, 1), EXTERIOR)], coeff=Q)
    d = dual_basis(A, (0, 4))
    assert d.pairing_matrix() == [[1, 0], [0, 1]]
    assert d.dual().labels == d.source_labels
    assert len(dual_basis(gln_cohomology(2, Q), (0, 10))) == 4


def test_relations_must_be_homogeneous():
    with pytest.raises(PresentationError):
        AlgebraPresentation([("t", (1, 1, 1), POLYNOMIAL)], ["t + t^2"], coeff=Q)


def test_polynomial_generators_must_be_even():
    with pytest.raises(PresentationError):
        AlgebraPresentation([("x", (0, 1, 1), POLYNOMIAL)], coeff=Q)


def test_relations_reduce_products():
    A = AlgebraPresentation([("t", (1, 1, 1), POLYNOMIAL)], ["3*t^2"], coeff=Q)
    assert multiply(A.gen("t"), A.gen("t")).is_zero()
    B = AlgebraPresentation([("t", (1, 1, 1), POLYNOMIAL)], ["3*t^2"], coeff=Z)
    assert not multiply(B.gen("t"), B.gen("t")).is_zero()


# random homogeneous elements of scenario-style presentations

def _presentations():
    return [
        AlgebraPresentation([("r1", (0, 1, 1), EXTERIOR), ("r2", (0, 3, 2), EXTERIOR), ("r3", (0, 5, 3), EXTERIOR),
                             ("t", (1, 1, 1), POLYNOMIAL)], coeff=Q),
        AlgebraPresentation([("r2", (0, 3, 2), EXTERIOR), ("t1", (1, 1, 1), POLYNOMIAL),
                             ("t2", (1, 1, 1), POLYNOMIAL)], ["t1 + t2"], coeff=F3),
        AlgebraPresentation([("r3", (0, 5, 3), EXTERIOR), ("t", (1, 1, 1), POLYNOMIAL)], ["6*t^3"], coeff=Z_HALF),
    ]


PRES = _presentations()


@st.composite
def homogeneous(draw, pres):
    box = pres.monomials_in_box(4, 10)
    degs = sorted(box)
    t = draw(st.sampled_from(degs))
    monos = box[t]
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=len(monos), max_size=len(monos)))
    return pres.element({m: c for m, c in zip(monos, coeffs) if c})


@pytest.mark.parametrize("pres", PRES, ids=["gl3", "torus2", "stiefel"])
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_graded_commutativity_and_degrees(pres, data):
    a = data.draw(homogeneous(pres))
    b = data.draw(homogeneous(pres))
    if a.is_zero() or b.is_zero():
        return
    ta, tb = a.degree(), b.degree()
    ab, ba = multiply(a, b), multiply(b, a)
    assert ab == ba.scale((-1) ** (ta.parity * tb.parity))
    if not ab.is_zero():
        assert ab.degree() == ta + tb
        assert ab.degree().chow_height == ta.chow_height + tb.chow_height


@pytest.mark.parametrize("pres", PRES, ids=["gl3", "torus2", "stiefel"])
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_associativity(pres, data):
    a, b, c = (data.draw(homogeneous(pres)) for _ in range(3))
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@pytest.mark.parametrize("pres", PRES, ids=["gl3", "torus2", "stiefel"])
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_render_parse_round_trip(pres, data):
    a = data.draw(homogeneous(pres))
    assert pres.parse(str(a)) == a
