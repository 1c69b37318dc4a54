"""Trigraded algebra presentations over a coefficient ring R (the base in bidegree (0,0)).

A presentation is a free graded-commutative algebra on exterior and
polynomial generators modulo homogeneous relations.  Degrees are tridegrees
(s, p, w) = (filtration, motivic degree, weight); the Koszul sign of an
element is governed by the parity of s + p.
"""
import re
from collections import namedtuple
from fractions import Fraction
from itertools import combinations

from . import linalg
from .coefficients import CoeffRing, RingError

EXTERIOR = "exterior"
POLYNOMIAL = "polynomial"


class PresentationError(ValueError):
    pass


class StandingAssumptionError(ValueError):
    """The ring does not make the class {-1} vanish."""


class Tridegree(namedtuple("Tridegree", "s p w")):
    __slots__ = ()

    def __add__(self, other):
        return Tridegree(self.s + other[0], self.p + other[1], self.w + other[2])

    def __sub__(self, other):
        return Tridegree(self.s - other[0], self.p - other[1], self.w - other[2])

    def scaled(self, k):
        return Tridegree(k * self.s, k * self.p, k * self.w)

    @property
    def chow_height(self):
        return 2 * self.w - self.s - self.p

    @property
    def parity(self):
        return (self.s + self.p) % 2

    def as_list(self):
        return [self.s, self.p, self.w]


ZERO_DEGREE = Tridegree(0, 0, 0)


def chow_height(t):
    t = Tridegree(*t)
    return t.chow_height


def differential_shift(j):
    """Tridegree change of d_j: (j, 1 - j, 0)."""
    return Tridegree(j, 1 - j, 0)


Generator = namedtuple("Generator", "name degree kind")

_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9_']*$")


def make_generator(name, degree, kind):
    if not _NAME.match(name):
        raise PresentationError("bad generator name %r" % (name,))
    if kind not in (EXTERIOR, POLYNOMIAL):
        raise PresentationError("unknown generator kind %r" % (kind,))
    return Generator(name, Tridegree(*degree), kind)


# A monomial is (ext, poly): ext a sorted tuple of exterior indices, poly a
# tuple of exponents over the polynomial generators.


class AlgebraPresentation:
    def __init__(self, generators, relations=(), coeff=None, name=None):
        self.coeff = coeff or CoeffRing.integers()
        gens = [g if isinstance(g, Generator) else make_generator(*g) for g in generators]
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator names")
        self.ext = [g for g in gens if g.kind == EXTERIOR]
        self.poly = [g for g in gens if g.kind == POLYNOMIAL]
        self.generators = self.ext + self.poly
        self.name = name
        for g in self.generators:
            if g.degree.s < 0 or g.degree.p < 0:
                raise PresentationError("generator %s has a negative degree" % g.name)
        for g in self.poly:
            if g.degree.parity:
                raise PresentationError("polynomial generator %s has odd total degree" % g.name)
            if g.degree.s == 0 and g.degree.p == 0:
                raise PresentationError("polynomial generator %s has no positive degree" % g.name)
        self._index = {}
        for i, g in enumerate(self.ext):
            self._index[g.name] = ("e", i)
        for i, g in enumerate(self.poly):
            self._index[g.name] = ("p", i)
        self._ext_par = [g.degree.parity for g in self.ext]
        self._rel_cache = {}
        self._box_cache = {}
        self.relations = []
        for r in relations:
            el = self.parse(str(r), reduce=False)
            if el.is_zero():
                continue
            if not el.is_homogeneous():
                raise PresentationError("relation %s is not homogeneous" % el)
            self.relations.append(el)

    # structure
    def __repr__(self):
        return "AlgebraPresentation(%s)" % self.describe()

    def signature(self):
        return (tuple(self.generators), tuple(str(r) for r in self.relations), self.coeff)

    def gen_names(self):
        return [g.name for g in self.generators]

    def generator(self, name):
        kind, i = self._index[name]
        return self.ext[i] if kind == "e" else self.poly[i]

    def has_generator(self, name):
        return name in self._index

    def unit_monomial(self):
        return ((), (0,) * len(self.poly))

    def monomial_degree(self, m):
        ext, poly = m
        s = p = w = 0
        for i in ext:
            d = self.ext[i].degree
            s += d.s
            p += d.p
            w += d.w
        for i, e in enumerate(poly):
            if e:
                d = self.poly[i].degree
                s += e * d.s
                p += e * d.p
                w += e * d.w
        return Tridegree(s, p, w)

    def generator_monomial(self, name):
        kind, i = self._index[name]
        if kind == "e":
            return ((i,), (0,) * len(self.poly))
        e = [0] * len(self.poly)
        e[i] = 1
        return ((), tuple(e))

    def mono_mul(self, a, b):
        """(sign, monomial) for a*b in the free algebra, or None if zero."""
        ea, pa = a
        eb, pb = b
        if eb and ea:
            if set(ea) & set(eb):
                return None
            par = self._ext_par
            swaps = 0
            for x in ea:
                if par[x]:
                    for y in eb:
                        if y < x and par[y]:
                            swaps += 1
            ext = tuple(sorted(ea + eb))
            sign = -1 if swaps & 1 else 1
        else:
            ext = ea or eb
            sign = 1
        poly = tuple(x + y for x, y in zip(pa, pb)) if pa else pa
        return sign, (ext, poly)

    def factor_list(self, m):
        """Monomial as an ordered list of generator monomials (powers expanded)."""
        ext, poly = m
        out = []
        zero = (0,) * len(self.poly)
        for i in ext:
            out.append(((i,), zero))
        for i, e in enumerate(poly):
            for _ in range(e):
                v = [0] * len(self.poly)
                v[i] = 1
                out.append(((), tuple(v)))
        return out

    def monomial_parity(self, m):
        return self.monomial_degree(m).parity

    # enumeration
    def monomials_in_box(self, max_s, max_p):
        """All monomials with s <= max_s and p <= max_p, grouped by tridegree."""
        out = {}
        ext_choices = []
        k = len(self.ext)
        for r in range(k + 1):
            for sub in combinations(range(k), r):
                d = Tridegree(0, 0, 0)
                for i in sub:
                    d = d + self.ext[i].degree
                if d.s <= max_s and d.p <= max_p:
                    ext_choices.append((sub, d))
        for sub, d in ext_choices:
            for poly, pd in self._poly_monomials(max_s - d.s, max_p - d.p):
                t = d + pd
                out.setdefault(t, []).append((sub, poly))
        for t in out:
            out[t].sort()
        return out

    def _poly_monomials(self, bs, bp):
        res = []
        n = len(self.poly)

        def rec(i, bs, bp, acc, deg):
            if i == n:
                res.append((tuple(acc), deg))
                return
            d = self.poly[i].degree
            e = 0
            while True:
                if e * d.s > bs or e * d.p > bp:
                    break
                rec(i + 1, bs - e * d.s, bp - e * d.p, acc + [e], deg + d.scaled(e))
                e += 1

        rec(0, bs, bp, [], Tridegree(0, 0, 0))
        return res

    def monomials_of_degree(self, t):
        t = Tridegree(*t)
        if t.s < 0 or t.p < 0:
            return []
        key = (t.s, t.p)
        box = self._box_cache.get(key)
        if box is None:
            box = self._box_cache[key] = self.monomials_in_box(t.s, t.p)
        return box.get(t, [])

    # relations
    def relation_space(self, t):
        """Echelon basis of the relation ideal in degree t, over monomials_of_degree(t)."""
        t = Tridegree(*t)
        if t in self._rel_cache:
            return self._rel_cache[t]
        monos = self.monomials_of_degree(t)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        ring = self.coeff
        for rel in self.relations:
            dr = rel.degree()
            for m in self.monomials_of_degree(t - dr):
                row = [ring.zero()] * len(monos)
                for rm, c in rel.terms.items():
                    pr = self.mono_mul(m, rm)
                    if pr is None:
                        continue
                    sign, mm = pr
                    j = index[mm]
                    row[j] = ring.add(row[j], ring.mul(sign, c))
                rows.append(row)
        basis, pivots = linalg.echelon(rows, ring, ncols=len(monos)) if rows else ([], [])
        res = (monos, index, basis, pivots)
        self._rel_cache[t] = res
        return res

    def normal_form_terms(self, terms):
        if not self.relations:
            return {m: c for m, c in terms.items() if c != 0}
        by_deg = {}
        for m, c in terms.items():
            if c != 0:
                by_deg.setdefault(self.monomial_degree(m), {})[m] = c
        out = {}
        for t, part in by_deg.items():
            monos, index, basis, pivots = self.relation_space(t)
            if not basis:
                out.update(part)
                continue
            v = [self.coeff.zero()] * len(monos)
            for m, c in part.items():
                v[index[m]] = c
            v = linalg.reduce_vector(v, basis, pivots, self.coeff)
            for m, c in zip(monos, v):
                if c != 0:
                    out[m] = c
        return out

    # elements
    def element(self, terms, reduce=True):
        return AlgebraElement(self, terms, reduce=reduce)

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return AlgebraElement(self, {self.unit_monomial(): self.coeff.one()})

    def scalar(self, c):
        return AlgebraElement(self, {self.unit_monomial(): self.coeff.reduce(c)})

    def gen(self, name):
        if name not in self._index:
            raise PresentationError("no generator named %r" % name)
        return AlgebraElement(self, {self.generator_monomial(name): self.coeff.one()})

    def monomial_element(self, m, c=1):
        return AlgebraElement(self, {m: self.coeff.reduce(c)})

    def multiply(self, a, b, reduce=True):
        if a.pres is not self or b.pres is not self:
            raise PresentationError("elements belong to different presentations")
        ring = self.coeff
        out = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                pr = self.mono_mul(ma, mb)
                if pr is None:
                    continue
                sign, m = pr
                out[m] = ring.add(out.get(m, 0), ring.mul(sign, ring.mul(ca, cb)))
        return AlgebraElement(self, out, reduce=reduce)

    # text
    def render_monomial(self, m):
        ext, poly = m
        parts = [self.ext[i].name for i in ext]
        for i, e in enumerate(poly):
            if e == 1:
                parts.append(self.poly[i].name)
            elif e > 1:
                parts.append("%s^%d" % (self.poly[i].name, e))
        return "*".join(parts)

    def parse(self, text, reduce=True):
        return parse_element(text, self, reduce=reduce)

    def describe(self):
        ext = ",".join(g.name for g in self.ext)
        poly = ",".join(g.name for g in self.poly)
        text = "Lambda(%s)" % ext if ext else "R"
        if poly:
            text += "[%s]" % poly
        if self.relations:
            text += "/(%s)" % ", ".join(str(r) for r in self.relations)
        return text

    def to_json(self):
        return {
            "ring": self.coeff.spelling(),
            "generators": [
                {"name": g.name, "tridegree": g.degree.as_list(), "kind": g.kind}
                for g in self.generators
            ],
            "relations": [str(r) for r in self.relations],
            "text": self.describe(),
        }

    def with_relations(self, extra, name=None):
        return AlgebraPresentation(self.generators, [str(r) for r in self.relations] + list(extra),
                                   self.coeff, name=name or self.name)


class AlgebraElement:
    __slots__ = ("pres", "terms")

    def __init__(self, pres, terms, reduce=True):
        ring = pres.coeff
        clean = {}
        for m, c in terms.items():
            c = ring.reduce(c)
            if c != 0:
                clean[m] = c
        if reduce:
            clean = pres.normal_form_terms(clean)
        self.pres = pres
        self.terms = clean

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return {self.pres.monomial_degree(m) for m in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        ds = self.degrees()
        if len(ds) != 1:
            raise PresentationError("element %s is not homogeneous" % self)
        return next(iter(ds))

    def _binop(self, other, sign):
        ring = self.pres.coeff
        if not isinstance(other, AlgebraElement):
            other = self.pres.scalar(other)
        if other.pres is not self.pres:
            raise PresentationError("elements belong to different presentations")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = ring.add(out.get(m, 0), c if sign > 0 else ring.neg(c))
        return AlgebraElement(self.pres, out)

    def __add__(self, other):
        return self._binop(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        ring = self.pres.coeff
        c = ring.reduce(c)
        return AlgebraElement(self.pres, {m: ring.mul(c, v) for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        return self.pres.multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        out = self.pres.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            if other == 0:
                return self.is_zero()
            return NotImplemented
        return self.pres is other.pres and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __str__(self):
        return render_element(self)

    __repr__ = __str__

    def to_json(self):
        ring = self.pres.coeff
        return [
            {"coeff": ring.to_json(c), "monomial": self.pres.render_monomial(m) or "1"}
            for m, c in self.sorted_terms()
        ]


def multiply(a, b):
    if a.pres is not b.pres:
        raise PresentationError("elements belong to different presentations")
    return a.pres.multiply(a, b)


def render_element(x):
    """Canonical text: coefficient, exterior part, polynomial part, e.g. 3*r1*r2*t^3."""
    if x.is_zero():
        return "0"
    ring = x.pres.coeff
    pieces = []
    for m, c in x.sorted_terms():
        mono = x.pres.render_monomial(m)
        neg = False
        if ring.kind in ("z", "q", "zloc") and c < 0:
            neg, c = True, -c
        cs = ring.render(c)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = "%s*%s" % (cs, mono)
        pieces.append((neg, body))
    text = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        text += (" - " if neg else " + ") + body
    return text


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def parse_element(text, pres, reduce=True):
    text = text.strip()
    if text in ("", "0"):
        return AlgebraElement(pres, {})
    ring = pres.coeff
    tokens = _TERM_SPLIT.split(text)
    if tokens[0] == "":
        tokens = tokens[1:]
    else:
        tokens = ["+"] + tokens
    total = AlgebraElement(pres, {}, reduce=False)
    for sign, body in zip(tokens[0::2], tokens[1::2]):
        if not body:
            raise PresentationError("cannot parse %r" % text)
        coeff = Fraction(1)
        term = pres.one()
        term = AlgebraElement(pres, term.terms, reduce=False)
        for factor in body.split("*"):
            factor = factor.strip()
            if re.match(r"^\d+(/\d+)?$", factor):
                coeff *= Fraction(factor)
                continue
            name, _, exp = factor.partition("^")
            if not pres.has_generator(name):
                raise PresentationError("unknown generator %r in %r" % (name, text))
            k = int(exp) if exp else 1
            for _ in range(k):
                term = pres.multiply(term, pres.gen(name), reduce=False)
        if sign == "-":
            coeff = -coeff
        c = ring.reduce(coeff)
        term = AlgebraElement(pres, {m: ring.mul(c, v) for m, v in term.terms.items()}, reduce=False)
        total = AlgebraElement(pres, _merge(ring, total.terms, term.terms), reduce=False)
    return AlgebraElement(pres, total.terms, reduce=reduce)


def _merge(ring, a, b):
    out = dict(a)
    for m, c in b.items():
        out[m] = ring.add(out.get(m, 0), c)
    return out


# input cohomology rings

def rho_degree(i):
    return Tridegree(0, 2 * i - 1, i)


def _check_standing(ring):
    if not ring.minus_one_class_vanishes():
        raise StandingAssumptionError(
            "%s: need 2 invertible, or characteristic 2 with sqrt(-1) flagged" % ring.spelling())


def gln_cohomology(n, ring):
    """Lambda(r1..rn), |r_i| = (0, 2i-1, i), squares zero."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_standing(ring)
    gens = [("r%d" % i, rho_degree(i), EXTERIOR) for i in range(1, n + 1)]
    return AlgebraPresentation(gens, coeff=ring, name="GL%d" % n)


def stiefel_cohomology(n, m, ring):
    """Lambda(r_{n-m+1}..r_n) for full-rank n x m matrices."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n, got n=%d m=%d" % (n, m))
    _check_standing(ring)
    gens = [("r%d" % i, rho_degree(i), EXTERIOR) for i in range(n - m + 1, n + 1)]
    return AlgebraPresentation(gens, coeff=ring, name="V%d(A%d)" % (m, n))


class Coaction:
    """Per-generator coaction formulas: name -> list of (scalar, left, right).

    ``left`` is a coalgebra monomial name or "1"; ``right`` a module
    generator name or "1".
    """

    def __init__(self, formulas, coalgebra_generators=("tau",)):
        self.formulas = {k: [tuple(t) for t in v] for k, v in formulas.items()}
        self.coalgebra_generators = tuple(coalgebra_generators)

    def image(self, name):
        return self.formulas[name]

    def counit(self, name):
        """Apply the counit to the left factor: keeps only terms with left = 1."""
        return [(c, r) for c, l, r in self.formulas[name] if l == "1" and c != 0]

    def counit_ok(self):
        return all(self.counit(k) == [(1, k)] for k in self.formulas)

    def primitive_scalar(self, name):
        return sum(c for c, l, r in self.formulas[name] if l != "1")

    def is_trivial(self):
        return all(all(l == "1" for c, l, r in v if c != 0) for v in self.formulas.values())

    def to_json(self):
        return {k: [[c, l, r] for c, l, r in v] for k, v in sorted(self.formulas.items())}


def weighted_coaction(n, m, u, v):
    """Coaction of H(G_m) on the cohomology of GL_n (m = n or m = 0) or a Stiefel variety.

    For GL_n the lowest generator r1 picks up (sum u - sum v) tau x 1; every
    other generator is coinvariant.
    """
    u, v = list(u), list(v)
    if len(u) != n or len(v) != m or m > n:
        raise ValueError("weight vector lengths must be |u| = n, |v| = m <= n")
    gl = m in (0, n)
    low = 1 if gl else n - m + 1
    formulas = {}
    for i in range(low, n + 1):
        name = "r%d" % i
        terms = [(1, "1", name)]
        if gl and i == 1:
            b = sum(u) - sum(v)
            if b != 0:
                terms.append((b, "tau", "1"))
        formulas[name] = terms
    return Coaction(formulas)


class DualModule:
    """Dual basis of a free module with a distinguished basis."""

    def __init__(self, source_labels, labels=None):
        self.source_labels = list(source_labels)
        if labels is None:
            labels = ["hat(%s)" % x for x in self.source_labels]
        self.labels = list(labels)

    def __len__(self):
        return len(self.labels)

    def pair(self, i, j):
        return 1 if i == j else 0

    def pairing_matrix(self):
        n = len(self.labels)
        return [[self.pair(i, j) for j in range(n)] for i in range(n)]

    def dual(self):
        return DualModule(self.labels, labels=self.source_labels)


def dual_basis(presentation, bound):
    """Dual basis of the monomial basis of a presentation within (max_s, max_p)."""
    max_s, max_p = bound
    if presentation.relations:
        raise PresentationError("dual basis needs a free module (no relations)")
    monos = presentation.monomials_in_box(max_s, max_p)
    labels = []
    for t in sorted(monos):
        for m in monos[t]:
            labels.append(presentation.render_monomial(m) or "1")
    return DualModule(labels)
