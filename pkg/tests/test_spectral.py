import random

import pytest

from rsss import linalg
from rsss.algebra import EXTERIOR, POLYNOMIAL, AlgebraPresentation, Tridegree, differential_shift, rho_degree
from rsss.scenarios import gl_e2, projective_space, torus_on_gln, weighted_gln
from rsss.spectral import (Bounds, DifferentialRule, RuleError, apply_rules, assemble_presentation,
                           differential_on, enumerate_possible_differentials, init_page, margin_for, run)

from conftest import F3, Q, leibniz_trials


def T(*x):
    return Tridegree(*x)


def proj_e2(n, ring=Q):
    return AlgebraPresentation([("r%d" % n, rho_degree(n), EXTERIOR), ("t", (1, 1, 1), POLYNOMIAL)],
                               coeff=ring)


def test_init_page_examples():
    page = init_page(proj_e2(4), Bounds(6, 10))
    assert all(page.rank((i, i, i)) == 1 for i in range(7))
    empty = init_page(AlgebraPresentation([], coeff=Q), Bounds(4, 4))
    assert empty.ranks() == {T(0, 0, 0): 1}
    lam = AlgebraPresentation([("r2", rho_degree(2), EXTERIOR), ("r3", rho_degree(3), EXTERIOR),
                               ("t", (1, 1, 1), POLYNOMIAL)], coeff=Q)
    assert init_page(lam, Bounds(4, 10)).rank((1, 1, 1)) == 1


def test_entries_outside_bounds_are_absent():
    page = init_page(proj_e2(3), Bounds(2, 3))
    assert all(page.bounds.contains(t) for t in page.visible())
    assert page.rank((0, 5, 3)) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_projective_candidates(n):
    page = init_page(proj_e2(n), Bounds(2 * n + 2, 4 * n + 2))
    cands = enumerate_possible_differentials(page, generators_only=True)
    assert [(c.source, c.target, c.page) for c in cands] == [(T(0, 2 * n - 1, n), T(n, n, n), n)]
    # the remaining candidates are the r*t^k multiples of the same d_n
    rest = enumerate_possible_differentials(page)
    assert {(c.source - T(k, k, k), c.page) for c in rest for k in [c.source.s]} == {(T(0, 2 * n - 1, n), n)}


def test_polynomial_classes_support_no_candidates():
    e2 = AlgebraPresentation([("r2", rho_degree(2), EXTERIOR), ("r3", rho_degree(3), EXTERIOR),
                              ("t", (1, 1, 1), POLYNOMIAL)], coeff=Q)
    page = init_page(e2, Bounds(8, 14))
    cands = enumerate_possible_differentials(page)
    assert cands
    assert all(c.source.chow_height > 0 for c in cands)
    assert not any(c.source == T(i, i, i) for c in cands for i in range(9))


def test_single_entry_page_has_no_candidates():
    page = init_page(AlgebraPresentation([], coeff=Q), Bounds(4, 4))
    assert enumerate_possible_differentials(page) == []


def test_apply_rules_projective():
    page = init_page(proj_e2(4), Bounds(10, 18), margin_for(4))
    for _ in range(2, 4):
        page = apply_rules(page, [])
    nxt = apply_rules(page, [DifferentialRule(4, "r4", "t^4")])
    assert nxt.ranks() == {T(i, i, i): 1 for i in range(4)}


def test_empty_rules_leave_page_unchanged():
    page = init_page(proj_e2(3), Bounds(8, 14))
    nxt = apply_rules(page, [])
    assert nxt.r == 3
    assert {t: (e.rank, e.torsion) for t, e in nxt.entries.items()} == \
        {t: (e.rank, e.torsion) for t, e in page.entries.items()}


def test_product_sign_of_two_exterior_sources():
    # d(ra*rb) = d(ra) rb - ra d(rb) since ra has odd s+p
    e2 = AlgebraPresentation([("r2", rho_degree(2), EXTERIOR), ("r3", rho_degree(3), EXTERIOR),
                              ("t", (1, 1, 1), POLYNOMIAL), ("u", (0, 2, 1), POLYNOMIAL)], coeff=Q)
    page = init_page(e2, Bounds(6, 10))
    # fake page-2 differential with values chosen only to exercise signs
    D, _ = differential_on(page, [DifferentialRule(2, "r2", "t^2"), DifferentialRule(2, "r3", "t^2*u")])
    x = e2.gen("r2") * e2.gen("r3")
    got = D.apply(x)
    want = e2.parse("t^2*r3") - e2.parse("r2*t^2*u")
    assert got == want
    got = D.apply(e2.gen("r3") * e2.gen("r2"))
    assert got == -want


def test_tridegree_law_is_enforced():
    page = init_page(proj_e2(3), Bounds(8, 14))
    page = apply_rules(page, [])
    with pytest.raises(RuleError):
        apply_rules(page, [DifferentialRule(3, "r3", "t^2")])
    with pytest.raises(RuleError):
        apply_rules(page, [DifferentialRule(3, "nope", "t^3")])
    with pytest.raises(RuleError):
        run(proj_e2(3), [DifferentialRule(1, "r3", "t")], Bounds(8, 14))


def test_chow_drop_is_enforced():
    e2 = AlgebraPresentation([("r2", rho_degree(2), EXTERIOR), ("x", (2, 0, 2), POLYNOMIAL),
                              ("t", (1, 1, 1), POLYNOMIAL)], coeff=Q)
    rule = DifferentialRule(2, "r2", "x")
    # r2 sits in (0,3,2); x in (2,0,2) has the right shift only for the wrong motivic degree
    with pytest.raises(RuleError):
        rule.bind(e2)


def _direct_ranks(page, rules):
    """rank E_{r+1}(t) = dim E_r(t) - rank(d out of t) - rank(d into t), over a field."""
    D, _ = differential_on(page, rules)
    ring = page.ring
    shift = differential_shift(page.r)

    def map_rank(t):
        e, f = page.entries.get(t), page.entries.get(t + shift)
        if e is None or f is None:
            return 0
        rows = []
        for z in e.Z:
            x = page.vector_to_element(t, z)
            img = D.apply(x)
            rows.append(page.element_to_vector(img, t + shift) if not img.is_zero() else [0] * len(f.monos))
        return linalg.matrix_rank(rows + list(f.B), ring) - linalg.matrix_rank(list(f.B), ring)

    out = {}
    for t, e in page.entries.items():
        r = e.rank - map_rank(t) - map_rank(t - shift)
        if r:
            out[t] = r
    return out


@pytest.mark.parametrize("build", [
    lambda: (proj_e2(3, F3), [DifferentialRule(3, "r3", "t^3")], 3),
    lambda: (gl_e2(3, [3], Q)[0], [DifferentialRule(2, "r2", "3*t^2"), DifferentialRule(3, "r3", "t^3")], 2),
    lambda: (gl_e2(3, [0], Q)[0], [DifferentialRule(2, "r2", "t^2")], 2),
])
def test_rank_conservation(build):
    e2, rules, first = build()
    page = init_page(e2, Bounds(10, 16))
    for r in range(2, max(x.page for x in rules) + 1):
        here = [x for x in rules if x.page == r]
        want = _direct_ranks(page, here)
        page = apply_rules(page, here)
        got = {t: e.rank for t, e in page.entries.items() if e.rank}
        assert got == want


def test_leibniz_on_scenario_pages():
    rng = random.Random(7)
    res = torus_on_gln(3, Q, keep_pages=True)
    total = 0
    for page in res.pages[:-1]:
        rules = [x for x in res.page.rules_so_far if x.page == page.r]
        checked, failures = leibniz_trials(page, rules, rng, 20)
        assert not failures
        total += checked
    assert total > 20


def test_run_is_deterministic():
    a = weighted_gln(3, (1, 2, 2), Q)
    b = weighted_gln(3, (1, 2, 2), Q)
    assert a.log.to_json() == b.log.to_json()
    assert a.page.to_json() == b.page.to_json()


def test_run_without_rules_is_e2():
    e2 = gl_e2(3, [0], Q)[0]
    bounds = Bounds(6, 10)
    page, log = run(e2, [], bounds)
    assert page.ranks() == init_page(e2, bounds).ranks()
    pres = assemble_presentation(page)
    assert pres.presentation is e2 and pres.flags == []


def test_projective_run_and_presentation():
    page, log = run(proj_e2(3), [DifferentialRule(3, "r3", "t^3")], Bounds(8, 14))
    assert page.ranks() == {T(i, i, i): 1 for i in range(3)}
    assert log.unruled == []
    pres = assemble_presentation(page)
    assert pres.text() == "R[t]/(t^3)"
    assert "associated_graded_only" in pres.flags


def test_fired_rules_obey_laws():
    res = torus_on_gln(3, Q)
    for item in res.log.fired:
        src, tgt = T(*item["source_tridegree"]), T(*item["target_tridegree"])
        assert tgt == src + differential_shift(item["page"])
        assert tgt.chow_height == src.chow_height - 1


def test_linear_relations_are_eliminated():
    e2, _ = gl_e2(2, [1, 1], Q, thetas=["t1", "t2"])
    page, log = run(e2, [DifferentialRule(2, "r2", "t1*t2")], Bounds(6, 10))
    assert any("eliminated" in n for n in log.notes)
    assert page.ranks() == {T(0, 0, 0): 1, T(1, 1, 1): 1}
    assert page.source_presentation is e2


def test_projective_presentation_over_f3():
    res = projective_space(4, F3)
    assert res.presentation.text() == "R[t]/(t^4)"
