"""Multiplicative trigraded spectral-sequence runner.

Every page E_r is stored as a subquotient Z_r / B_r of the E_2 algebra: at
each tridegree t, Z_r(t) and B_r(t) are submodules of the free module on the
E_2 monomials of degree t (B_2 is the relation ideal).  A page-j differential
is the derivation D_j of the E_2 algebra fixed by its values on generators;
it is applied to cycle representatives and read modulo B_j.
"""
from collections import namedtuple

from . import linalg
from .algebra import (
    AlgebraElement, AlgebraPresentation, EXTERIOR, POLYNOMIAL, Tridegree,
    differential_shift,
)


class RuleError(ValueError):
    pass


class InvariantError(RuntimeError):
    """An internal consistency check failed."""


class Bounds(namedtuple("Bounds", "max_filt max_deg")):
    __slots__ = ()

    def contains(self, t):
        return 0 <= t[0] <= self.max_filt and 0 <= t[1] <= self.max_deg


def default_bounds(n):
    return Bounds(2 * n + 2, 4 * n + 2)


def margin_for(max_page):
    """Extra filtration and motivic room so pages up to max_page are exact in the box."""
    js = range(2, max_page + 1)
    return sum(js), sum(j - 1 for j in js)


class DifferentialRule:
    """d_page(source) = target, known modulo an indeterminacy ideal."""

    def __init__(self, page, source, target, indeterminacy="", proven=True):
        self.page = int(page)
        self.source = source
        self.target = target
        self.indeterminacy = indeterminacy
        self.proven = proven

    def bind(self, pres):
        if self.page < 2:
            raise RuleError("differential page must be at least 2")
        if not pres.has_generator(self.source):
            raise RuleError("no generator %r" % self.source)
        tgt = self.target
        if not isinstance(tgt, AlgebraElement) or tgt.pres is not pres:
            tgt = pres.parse(str(tgt))
        src_deg = pres.generator(self.source).degree
        want = src_deg + differential_shift(self.page)
        if not tgt.is_zero():
            if not tgt.is_homogeneous() or tgt.degree() != want:
                raise RuleError("d_%d(%s) = %s violates the tridegree law (target must sit in %s)"
                                % (self.page, self.source, tgt, tuple(want)))
            if tgt.degree().chow_height != src_deg.chow_height - 1:
                raise RuleError("Chow height must drop by one")
        return DifferentialRule(self.page, self.source, tgt, self.indeterminacy, self.proven)

    def to_json(self, pres=None):
        src = self.source
        out = {
            "page": self.page,
            "source": src,
            "target": str(self.target),
            "proven": self.proven,
        }
        if pres is not None:
            sd = pres.generator(src).degree
            out["source_tridegree"] = sd.as_list()
            out["target_tridegree"] = (sd + differential_shift(self.page)).as_list()
        if self.indeterminacy:
            out["indeterminacy"] = self.indeterminacy
        return out


class Entry:
    __slots__ = ("t", "monos", "index", "Z", "Zp", "B", "Bp", "rank", "torsion")

    def __init__(self, t, monos, index, Z, Zp, B, Bp, ring):
        self.t = t
        self.monos = monos
        self.index = index
        self.Z, self.Zp, self.B, self.Bp = Z, Zp, B, Bp
        self.rank, self.torsion = linalg.quotient_invariants(B, Z, ring)

    def nonzero(self):
        return self.rank > 0 or bool(self.torsion)


Candidate = namedtuple("Candidate", "source target page ruled")


class SSPage:
    def __init__(self, r, pres, bounds, inner, entries, rules_so_far=()):
        self.r = r
        self.pres = pres
        self.bounds = bounds
        self.inner = inner
        self.entries = entries
        self.rules_so_far = tuple(rules_so_far)
        self.source_presentation = pres
        self._alive = None

    @property
    def ring(self):
        return self.pres.coeff

    def entry(self, t):
        return self.entries.get(Tridegree(*t))

    def rank(self, t):
        e = self.entry(t)
        return e.rank if e else 0

    def torsion(self, t):
        e = self.entry(t)
        return list(e.torsion) if e else []

    def nonzero(self, t):
        e = self.entry(t)
        return bool(e) and e.nonzero()

    def visible(self):
        """Nonzero entries inside the reported bounds, sorted."""
        return [t for t in sorted(self.entries, key=lambda t: (t.w, t.s, t.p))
                if self.bounds.contains(t) and self.entries[t].nonzero()]

    def ranks(self):
        return {t: self.entries[t].rank for t in self.visible()}

    def basis_representatives(self, t):
        """Representatives of a generating set of E_r(t) (free part first)."""
        e = self.entry(t)
        if not e:
            return []
        ring = self.ring
        chosen, cp = list(e.B), list(e.Bp)
        reps = []
        basis, piv = linalg.echelon(chosen, ring) if chosen else ([], [])
        for z in e.Z:
            if linalg.in_span(z, basis, piv, ring):
                continue
            reps.append(z)
            basis, piv = linalg.echelon(basis + [z], ring)
        return [self.vector_to_element(t, v) for v in reps]

    def vector_to_element(self, t, v):
        e = self.entry(t)
        return AlgebraElement(self.pres, {m: c for m, c in zip(e.monos, v) if c != 0}, reduce=False)

    def element_to_vector(self, x, t=None):
        if x.is_zero():
            if t is None:
                raise ValueError("zero element needs an explicit tridegree")
            e = self.entry(t)
            return [self.ring.zero()] * (len(e.monos) if e else 0)
        t = Tridegree(*(t or x.degree()))
        e = self.entry(t)
        v = [self.ring.zero()] * len(e.monos)
        for m, c in x.terms.items():
            v[e.index[m]] = c
        return v

    def is_cycle(self, x):
        """True iff x represents a class on this page."""
        if x.is_zero():
            return True
        t = x.degree()
        e = self.entry(t)
        if e is None:
            return False
        return linalg.in_span(self.element_to_vector(x), e.Z, e.Zp, self.ring)

    def is_boundary(self, x, t=None):
        if x.is_zero():
            return True
        t = Tridegree(*(t or x.degree()))
        e = self.entry(t)
        if e is None:
            return True
        return linalg.in_span(self.element_to_vector(x, t), e.B, e.Bp, self.ring)

    def same_class(self, x, y, t=None):
        diff = AlgebraElement(self.pres, _sub_terms(self.ring, x.terms, y.terms), reduce=False)
        if diff.is_zero():
            return True
        return self.is_boundary(diff, t)

    def alive_generators(self):
        if self._alive is None:
            alive = set()
            for g in self.pres.generators:
                if self.is_cycle(self.pres.gen(g.name)) and self.inner.contains(g.degree):
                    alive.add(g.name)
            self._alive = alive
        return self._alive

    def is_ruled(self, t):
        """True iff E_r(t) is spanned by products of surviving generators."""
        e = self.entry(t)
        if e is None:
            return True
        alive = self.alive_generators()
        rows = list(e.B)
        for i, m in enumerate(e.monos):
            ext, poly = m
            ok = all(self.pres.ext[k].name in alive for k in ext)
            ok = ok and all(self.pres.poly[k].name in alive for k, x in enumerate(poly) if x)
            if ok:
                v = [self.ring.zero()] * len(e.monos)
                v[i] = self.ring.one()
                rows.append(v)
        basis, piv = linalg.echelon(rows, self.ring, ncols=len(e.monos)) if rows else ([], [])
        return all(linalg.in_span(z, basis, piv, self.ring) for z in e.Z)

    def to_json(self, fired=(), warnings=()):
        ents = []
        for t in self.visible():
            e = self.entries[t]
            ents.append({
                "tridegree": t.as_list(),
                "rank": e.rank,
                "torsion": [self.ring.to_json(x) for x in e.torsion],
                "basis": [str(x) for x in self.basis_representatives(t)],
            })
        return {"page": self.r, "entries": ents, "fired": list(fired), "warnings": list(warnings)}


def _sub_terms(ring, a, b):
    out = dict(a)
    for m, c in b.items():
        out[m] = ring.sub(out.get(m, 0), c)
    return {m: c for m, c in out.items() if c != 0}


def init_page(e2, bounds, margin=(0, 0)):
    """E_2 page of a presentation, enumerated inside bounds plus an internal margin."""
    if not isinstance(bounds, Bounds):
        bounds = Bounds(*bounds)
    inner = Bounds(bounds.max_filt + margin[0], bounds.max_deg + margin[1])
    ring = e2.coeff
    monos_by_t = e2.monomials_in_box(inner.max_filt, inner.max_deg)
    entries = {}
    for t, monos in monos_by_t.items():
        n = len(monos)
        if e2.relations:
            _, index, B, Bp = e2.relation_space(t)
        else:
            index = {m: i for i, m in enumerate(monos)}
            B, Bp = [], []
        Z = []
        for i in range(n):
            row = [ring.zero()] * n
            row[i] = ring.one()
            Z.append(row)
        entries[t] = Entry(t, monos, index, Z, list(range(n)), list(B), list(Bp), ring)
    return SSPage(2, e2, bounds, inner, entries)


class Derivation:
    """Derivation of odd degree on the E_2 algebra determined by generator values."""

    def __init__(self, pres, values):
        self.pres = pres
        self.values = values
        self._cache = {}

    def on_monomial(self, m):
        if m in self._cache:
            return self._cache[m]
        pres = self.pres
        ring = pres.coeff
        factors = pres.factor_list(m)
        out = {}
        if len(factors) == 1:
            name = self._name_of(factors[0])
            val = self.values.get(name)
            if val is not None:
                out = dict(val.terms)
        elif factors:
            first = factors[0]
            rest = _mono_div_first(pres, m)
            # D(g * rest) = D(g) rest + (-1)^{|g|} g D(rest)
            dg = self.on_monomial(first)
            for mm, c in dg.items():
                pr = pres.mono_mul(mm, rest)
                if pr:
                    sgn, prod = pr
                    out[prod] = ring.add(out.get(prod, 0), ring.mul(sgn, c))
            drest = self.on_monomial(rest)
            gsign = -1 if pres.monomial_parity(first) else 1
            for mm, c in drest.items():
                pr = pres.mono_mul(first, mm)
                if pr:
                    sgn, prod = pr
                    out[prod] = ring.add(out.get(prod, 0), ring.mul(sgn * gsign, c))
        out = {k: v for k, v in out.items() if v != 0}
        self._cache[m] = out
        return out

    def _name_of(self, gm):
        ext, poly = gm
        if ext:
            return self.pres.ext[ext[0]].name
        return self.pres.poly[poly.index(1)].name

    def apply(self, x):
        ring = self.pres.coeff
        out = {}
        for m, c in x.terms.items():
            for mm, v in self.on_monomial(m).items():
                out[mm] = ring.add(out.get(mm, 0), ring.mul(c, v))
        return AlgebraElement(self.pres, out, reduce=False)


def _mono_div_first(pres, m):
    ext, poly = m
    if ext:
        return (ext[1:], poly)
    p = list(poly)
    i = next(k for k, e in enumerate(p) if e)
    p[i] -= 1
    return ((), tuple(p))


def _bind_rules(page, rules):
    bound = []
    seen = set()
    for rule in rules:
        if rule.page != page.r:
            raise RuleError("rule for page %d applied on page %d" % (rule.page, page.r))
        if rule.source in seen:
            raise RuleError("two rules for d_%d(%s)" % (rule.page, rule.source))
        seen.add(rule.source)
        bound.append(rule.bind(page.pres))
    return bound


def _image_vector(page, D, t, z, tgt_entry):
    """D applied to a vector over the monomials of t, as a vector over tgt_entry."""
    ring = page.ring
    e = page.entries[t]
    v = [ring.zero()] * len(tgt_entry.monos)
    for c, m in zip(z, e.monos):
        if c == 0:
            continue
        for mm, val in D.on_monomial(m).items():
            j = tgt_entry.index[mm]
            v[j] = ring.add(v[j], ring.mul(c, val))
    return v


def differential_on(page, rules):
    bound = _bind_rules(page, rules)
    values = {r.source: r.target for r in bound}
    return Derivation(page.pres, values), bound


def apply_rules(page, rules):
    """Next page: homology of the derivation-extended d_r on every tridegree."""
    D, bound = differential_on(page, rules)
    ring = page.ring
    shift = differential_shift(page.r)
    new_entries = {}
    images = {}
    if bound:
        for t, e in page.entries.items():
            t2 = t + shift
            e2 = page.entries.get(t2)
            if e2 is None:
                continue
            dz = [_image_vector(page, D, t, z, e2) for z in e.Z]
            images[t] = (t2, dz)
            # the differential must descend to E_r: boundaries to boundaries, cycles to cycles
            for b in e.B:
                db = _image_vector(page, D, t, b, e2)
                if not linalg.in_span(db, e2.B, e2.Bp, ring):
                    raise InvariantError("d_%d does not preserve boundaries at %s" % (page.r, tuple(t)))
            for v in dz:
                if not linalg.in_span(v, e2.Z, e2.Zp, ring):
                    raise InvariantError("d_%d of a cycle at %s is not a cycle" % (page.r, tuple(t)))
    incoming = {}
    for t, (t2, dz) in images.items():
        incoming.setdefault(t2, []).extend(dz)
    for t, e in page.entries.items():
        Z, Zp, B, Bp = e.Z, e.Zp, e.B, e.Bp
        if t in images:
            t2, dz = images[t]
            e2 = page.entries[t2]
            rows = dz + list(e2.B)
            ker = linalg.kernel(rows, ring, ncols=len(e2.monos))
            newZ = []
            k = len(dz)
            for x in ker:
                coeffs = x[:k]
                if all(c == 0 for c in coeffs):
                    continue
                v = [ring.zero()] * len(e.monos)
                for c, z in zip(coeffs, Z):
                    if c != 0:
                        v = linalg.add_scaled(ring, v, z, c)
                newZ.append(v)
            newZ = newZ + list(B)
            Z, Zp = linalg.echelon(newZ, ring, ncols=len(e.monos)) if newZ else ([], [])
        if t in incoming:
            B, Bp = linalg.echelon(list(B) + incoming[t], ring, ncols=len(e.monos))
        new_entries[t] = Entry(t, e.monos, e.index, Z, Zp, B, Bp, ring)
    return SSPage(page.r + 1, page.pres, page.bounds, page.inner, new_entries,
                  page.rules_so_far + tuple(bound))


def enumerate_possible_differentials(page, generators_only=False, max_page=None, exact_page=False):
    """Candidate differentials d_j (j >= r) between nonzero entries inside the bounds.

    The tridegree law fixes the target; the Chow height then drops by one
    automatically, which rules out every source of Chow height 0 (the
    polynomial classes) because no entry has negative Chow height.
    """
    out = []
    top = max_page if max_page is not None else page.bounds.max_filt
    if generators_only:
        sources = sorted({g.degree for g in page.pres.generators if page.nonzero(g.degree)
                          and page.bounds.contains(g.degree)}, key=lambda t: (t.w, t.s, t.p))
    else:
        sources = page.visible()
    for t in sources:
        js = [page.r] if exact_page else range(page.r, top + 1)
        for j in js:
            t2 = t + differential_shift(j)
            if not page.bounds.contains(t2) or not page.nonzero(t2):
                continue
            if t2.chow_height != t.chow_height - 1:
                continue
            out.append(Candidate(t, t2, j, page.is_ruled(t)))
    return out


class RunLog:
    def __init__(self):
        self.fired = []
        self.candidates = []
        self.warnings = []
        self.unruled = []
        self.notes = []

    def to_json(self):
        return {
            "fired": list(self.fired),
            "candidates": [
                {"source": c.source.as_list(), "target": c.target.as_list(), "page": c.page, "ruled": c.ruled}
                for c in self.candidates
            ],
            "warnings": list(self.warnings),
            "notes": list(self.notes),
        }


class LinearElimination:
    """Drop polynomial generators fixed by linear relations with a unit coefficient."""

    def __init__(self, pres):
        self.source = pres
        self.notes = []
        ring = pres.coeff
        gens = list(pres.generators)
        rels = [str(r) for r in pres.relations]
        subst = {}
        while True:
            cur = AlgebraPresentation(gens, rels, coeff=ring)
            pick = None
            for k, rel in enumerate(cur.relations):
                lin = _linear_poly_terms(cur, rel)
                if lin is None:
                    continue
                units = [name for name, c in lin if ring.is_unit(c)]
                if units:
                    pick = (k, units[-1], lin)
                    break
            if pick is None:
                break
            k, name, lin = pick
            c = dict(lin)[name]
            inv = ring.inv(c)
            image = [(ring.neg(ring.mul(inv, x)), g) for g, x in lin if g != name]
            subst[name] = image
            self.notes.append("eliminated %s = %s" % (name, _render_linear(ring, image)))
            gens = [g for g in gens if g.name != name]
            new = AlgebraPresentation(gens, coeff=ring)
            rels = [str(self._map(cur, r, new, {name: image})) for i, r in enumerate(cur.relations) if i != k]
            rels = [r for r in rels if r != "0"]
        self.subst = subst
        self.target = AlgebraPresentation(gens, rels, coeff=ring, name=pres.name)

    def _map(self, old, x, new, subst):
        ring = new.coeff
        out = new.zero()
        for m, c in x.terms.items():
            term = new.scalar(c)
            for gm in old.factor_list(m):
                name = old.render_monomial(gm)
                if name in subst:
                    img = new.zero()
                    for a, g in subst[name]:
                        img = img + new.gen(g).scale(a)
                    term = new.multiply(term, img, reduce=False)
                else:
                    term = new.multiply(term, new.gen(name), reduce=False)
            out = AlgebraElement(new, _add_terms(ring, out.terms, term.terms), reduce=False)
        return AlgebraElement(new, out.terms)

    def apply(self, x):
        """Image in the reduced presentation of an element (or text) of the source."""
        if not isinstance(x, AlgebraElement):
            x = self.source.parse(str(x))
        cur_pres = self.source
        for name, image in self.subst.items():
            nxt = AlgebraPresentation([g for g in cur_pres.generators if g.name != name], coeff=cur_pres.coeff)
            x = self._map(cur_pres, x, nxt, {name: image})
            cur_pres = nxt
        return AlgebraElement(self.target, x.terms)


def _add_terms(ring, a, b):
    out = dict(a)
    for m, c in b.items():
        out[m] = ring.add(out.get(m, 0), c)
    return {m: c for m, c in out.items() if c != 0}


def _linear_poly_terms(pres, rel):
    out = []
    for m, c in rel.terms.items():
        ext, poly = m
        if ext or sum(poly) != 1:
            return None
        out.append((pres.poly[poly.index(1)].name, c))
    return out


def _render_linear(ring, image):
    if not image:
        return "0"
    pres_terms = []
    for a, g in image:
        pres_terms.append("%s*%s" % (ring.render(a), g))
    return " + ".join(pres_terms)


def _shape(page):
    return {t: (e.rank, tuple(e.torsion)) for t, e in page.entries.items() if e.nonzero()}


def run(e2, rules, bounds, keep_pages=False, eliminate=True):
    """Run all pages carrying rules; returns (final page, log[, pages])."""
    rules = list(rules)
    for r in rules:
        if r.page < 2:
            raise RuleError("differential page must be at least 2")
    log = RunLog()
    source = e2
    if eliminate and e2.relations:
        elim = LinearElimination(e2)
        if elim.subst:
            for r in rules:
                r.bind(e2)
            rules = [DifferentialRule(r.page, r.source, elim.apply(r.bind(e2).target),
                                      r.indeterminacy, r.proven) for r in rules]
            e2 = elim.target
            log.notes.extend(elim.notes)
    last = max([r.page for r in rules], default=1)
    page = init_page(e2, bounds, margin_for(last))
    page.source_presentation = source
    pages = [page]
    for r in range(2, last + 1):
        here = [x for x in rules if x.page == r]
        for c in enumerate_possible_differentials(page, exact_page=True):
            log.candidates.append(c)
            if not c.ruled:
                log.unruled.append(c)
                log.warnings.append("unruled candidate d_%d: %s -> %s (not fired)"
                                    % (r, tuple(c.source), tuple(c.target)))
        D, bound = differential_on(page, here)
        before = _shape(page)
        nxt = apply_rules(page, here)
        acted = _shape(nxt) != before
        for b in bound:
            item = b.to_json(e2)
            item["zero"] = b.target.is_zero()
            item["acted"] = acted and not b.target.is_zero()
            log.fired.append(item)
        page = nxt
        page.source_presentation = source
        pages.append(page)
    for c in enumerate_possible_differentials(page):
        log.candidates.append(c)
        if not c.ruled:
            log.unruled.append(c)
            log.warnings.append("unruled candidate d_%d: %s -> %s (not fired)"
                                % (c.page, tuple(c.source), tuple(c.target)))
    if keep_pages:
        return page, log, pages
    return page, log


FLAGS = ("associated_graded_only", "unresolved_extension", "conjectural_differentials")


class RingPresentation:
    def __init__(self, presentation, flags=(), complete=True, notes=()):
        for f in flags:
            if f not in FLAGS:
                raise ValueError("unknown caveat flag %r" % f)
        self.presentation = presentation
        self.flags = sorted(set(flags))
        self.complete = complete
        self.notes = list(notes)

    @property
    def generators(self):
        return self.presentation.generators

    @property
    def relations(self):
        return self.presentation.relations

    def text(self):
        return self.presentation.describe()

    def to_json(self):
        out = self.presentation.to_json()
        out["flags"] = list(self.flags)
        out["complete_within_bounds"] = self.complete
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _class_vector_rows(page, t, elems):
    e = page.entry(t)
    return [page.element_to_vector(x, t) if not x.is_zero() else [page.ring.zero()] * len(e.monos)
            for x in elems]


def assemble_presentation(einf, fired_nonzero=None, flags=()):
    """Generators and relations of the (associated graded) algebra einf, within its bounds."""
    ring = einf.ring
    pres = einf.pres
    if fired_nonzero is None:
        fired_nonzero = any(not r.target.is_zero() for r in einf.rules_so_far)
    flags = set(flags)
    if not fired_nonzero:
        return RingPresentation(einf.source_presentation, flags)
    flags.add("associated_graded_only")
    order = sorted(einf.visible(), key=lambda t: (t.w, t.s + t.p, t.s, t.p))
    gens = []  # (name, degree, representative)
    counters = {}
    for t in order:
        if t == Tridegree(0, 0, 0):
            continue
        e = einf.entry(t)
        rows = list(e.B)
        for name, gd, rep in gens:
            rest = t - gd
            re_ = einf.entry(rest)
            if re_ is None or not re_.nonzero() and rest != Tridegree(0, 0, 0):
                continue
            for x in ([pres.one()] if rest == Tridegree(0, 0, 0) else einf.basis_representatives(rest)):
                prod = pres.multiply(rep, x, reduce=False)
                if not prod.is_zero():
                    rows.append(einf.element_to_vector(prod, t))
        basis, piv = linalg.echelon(rows, ring, ncols=len(e.monos)) if rows else ([], [])
        for z in e.Z:
            if linalg.in_span(z, basis, piv, ring):
                continue
            rep = einf.vector_to_element(t, z)
            name = _gen_name(pres, rep, counters)
            gens.append((name, t, rep))
            basis, piv = linalg.echelon(basis + [z], ring, ncols=len(e.monos))
    gdefs = [(n, d, EXTERIOR if d.parity else POLYNOMIAL) for n, d, _ in gens]
    reps = {n: r for n, _, r in gens}
    relations = []
    target = AlgebraPresentation(gdefs, coeff=ring)
    box = target.monomials_in_box(einf.bounds.max_filt, einf.bounds.max_deg)
    for t in sorted(box, key=lambda t: (t.w, t.s + t.p, t.s, t.p)):
        if t == Tridegree(0, 0, 0):
            continue
        current = AlgebraPresentation(gdefs, relations, coeff=ring)
        monos, index, rb, rp = current.relation_space(t)
        e = einf.entry(t)
        images = []
        for m in monos:
            x = pres.one()
            for gm in target.factor_list(m):
                x = pres.multiply(x, reps[target.render_monomial(gm)], reduce=False)
            # restore the sign of the canonical monomial order
            images.append(x)
        if e is None:
            kern_rows = []
            for i in range(len(monos)):
                v = [ring.zero()] * len(monos)
                v[i] = ring.one()
                kern_rows.append(v)
        else:
            rows = _class_vector_rows(einf, t, images) + list(e.B)
            ker = linalg.kernel(rows, ring, ncols=len(e.monos))
            kern_rows = [x[:len(monos)] for x in ker if any(c != 0 for c in x[:len(monos)])]
        for v in kern_rows:
            if linalg.in_span(v, rb, rp, ring):
                continue
            rel = AlgebraElement(current, {m: c for m, c in zip(monos, v) if c != 0}, reduce=False)
            relations.append(str(rel))
            current = AlgebraPresentation(gdefs, relations, coeff=ring)
            monos, index, rb, rp = current.relation_space(t)
    result = AlgebraPresentation(gdefs, relations, coeff=ring, name="E_inf")
    notes = []
    if not ring.is_field() and any(einf.entries[t].torsion for t in einf.visible()):
        notes.append("generators chosen greedily over a non-field; the set may not be minimal")
    return RingPresentation(result, flags, notes=notes)


def _gen_name(pres, rep, counters):
    if len(rep.terms) == 1:
        (m, c), = rep.terms.items()
        factors = pres.factor_list(m)
        if len(factors) == 1:
            name = pres.render_monomial(m)
            if c == 1:
                return name
    base = "x"
    counters[base] = counters.get(base, 0) + 1
    return "%s%d" % (base, counters[base])


def presentation_ranks(pres, bounds):
    """Ranks of a presentation per tridegree inside bounds (no differentials)."""
    page = init_page(pres, bounds)
    return page.ranks()
