"""Named equivariant computations: E2 page, differential rules, run, closed forms."""
from dataclasses import dataclass, field

from .algebra import EXTERIOR, POLYNOMIAL, AlgebraPresentation, StandingAssumptionError, rho_degree
from .coefficients import CoeffRing, _is_prime, binomial_in_ring
from .ext import Config, ext_closed_form, ext_closed_form_eta
from .spectral import (Bounds, DifferentialRule, InvariantError, RingPresentation, assemble_presentation,
                       default_bounds, presentation_ranks, run)
from .symmetric import elementary_symmetric, remainder_sign_report, roots_mod_p, sigma_difference, vex

KINDS = ("projective", "torus-punctured", "torus-gln", "weighted-gln", "pgl", "left-right", "stiefel",
         "crosscheck")

INDETERMINACY = "modulo the image of earlier differentials"


class ScenarioError(ValueError):
    """A scenario precondition does not hold."""


@dataclass
class ScenarioSpec:
    kind: str
    n: int
    coeff: CoeffRing = None
    m: int = None
    u: tuple = None
    v: tuple = None
    w: tuple = None
    prime: int = None

    def __post_init__(self):
        if self.coeff is None:
            self.coeff = CoeffRing.rationals()
        for name in ("u", "v", "w"):
            val = getattr(self, name)
            if val is not None:
                setattr(self, name, tuple(int(x) for x in val))
        self.validate()

    def validate(self):
        if self.kind not in KINDS:
            raise ScenarioError("unknown scenario %r" % self.kind)
        if self.n is None or self.n < 1:
            raise ScenarioError("n must be a positive integer")
        need = {"weighted-gln": ("w",), "left-right": ("u", "v"), "stiefel": ("m", "u", "v"),
                "crosscheck": ("m", "u", "v", "prime")}.get(self.kind, ())
        for name in need:
            if getattr(self, name) is None:
                raise ScenarioError("%s needs --%s" % (self.kind, name))
        if self.kind == "weighted-gln" and len(self.w) != self.n:
            raise ScenarioError("weight vector has length %d, expected %d" % (len(self.w), self.n))
        if self.kind == "left-right" and not len(self.u) == len(self.v) == self.n:
            raise ScenarioError("u and v must both have length n=%d" % self.n)
        if self.kind in ("stiefel", "crosscheck"):
            if not 1 <= self.m < self.n:
                raise ScenarioError("need 1 <= m < n, got n=%d m=%d" % (self.n, self.m))
            if len(self.u) != self.n or len(self.v) != self.m:
                raise ScenarioError("u must have length n=%d and v length m=%d" % (self.n, self.m))

    def to_json(self):
        out = {"kind": self.kind, "n": self.n, "coeff": self.coeff.spelling()}
        for name in ("m", "u", "v", "w", "prime"):
            val = getattr(self, name)
            if val is not None:
                out[name] = list(val) if isinstance(val, tuple) else val
        return out


@dataclass
class ScenarioResult:
    spec: ScenarioSpec
    bounds: Bounds
    e2: AlgebraPresentation
    rules: list
    page: object
    log: object
    presentation: RingPresentation
    notes: list = field(default_factory=list)
    closed_form: AlgebraPresentation = None
    closed_form_agrees: bool = None
    pages: list = None
    metadata: dict = field(default_factory=dict)

    @property
    def flags(self):
        return self.presentation.flags

    @property
    def warnings(self):
        return self.log.warnings

    def ranks(self):
        return self.page.ranks()

    def e2_ranks(self):
        return presentation_ranks(self.e2, self.bounds)


# E2 pages

def _gl_config(indices, thetas=1):
    return Config([], [(1, 1)] * thetas, [tuple(rho_degree(i))[1:] for i in indices])


def _ordered(pres, name=None):
    """Same algebra with exterior generators sorted by their rho index."""
    ext = sorted(pres.ext, key=lambda g: (len(g.name), g.name))
    return AlgebraPresentation(ext + pres.poly, [str(r) for r in pres.relations], coeff=pres.coeff,
                               name=name or pres.name)


def gl_e2(n, b, ring, thetas=None):
    """Ext over the torus dual of H(GL_n) when rho_1 coacts through sum b_j theta_j.

    Returns (presentation, unresolved); the other rho_i are primitive.
    """
    b = list(b)
    tnames = thetas or (["t"] if len(b) == 1 else ["t%d" % (j + 1) for j in range(len(b))])
    ext = ext_closed_form_eta(0, len(b), n - 1, _gl_config(range(2, n + 1), len(b)), b, coeff=ring,
                              eta_degree=(1, 1), gamma_names=["r%d" % i for i in range(2, n + 1)],
                              theta_names=tnames, eta_name="r1")
    if ext.unresolved:
        return _ordered(ext.sub, "E2"), True
    return _ordered(ext.merged, "E2"), False


def _theta_term(ring, c, k, name="t"):
    c = ring.reduce(c)
    if c == 0:
        return "0"
    power = name if k == 1 else "%s^%d" % (name, k)
    return power if c == 1 else "%s*%s" % (ring.render(c), power)


def _check_standing(ring):
    if not ring.minus_one_class_vanishes():
        raise ScenarioError("%s: need 2 invertible, or characteristic 2 with sqrt(-1) flagged"
                            % ring.spelling())


def _need_two_invertible(ring):
    if not ring.is_unit(2):
        raise ScenarioError("2 is not invertible in %s" % ring.spelling())


def _bounds(n, bounds):
    if bounds is None:
        return default_bounds(n)
    if not isinstance(bounds, Bounds):
        bounds = Bounds(*bounds)
    d = default_bounds(n)
    return Bounds(d.max_filt if bounds.max_filt is None else bounds.max_filt,
                  d.max_deg if bounds.max_deg is None else bounds.max_deg)


def _finish(spec, bounds, e2, rules, notes=(), flags=(), keep_pages=False, metadata=None):
    out = run(e2, rules, bounds, keep_pages=keep_pages)
    page, log = out[0], out[1]
    flags = set(flags)
    if any(not r.proven for r in rules):
        flags.add("conjectural_differentials")
    if log.unruled:
        # surviving candidates over a non-field are only reported, never fired
        flags.add("conjectural_differentials")
        if spec.coeff.is_field():
            raise InvariantError("unruled candidate differentials over a field: %s" % log.warnings)
    acted = any(item["acted"] for item in log.fired)
    pres = assemble_presentation(page, fired_nonzero=acted, flags=flags)
    meta = {"beilinson_soule_assumed": True}
    meta.update(metadata or {})
    return ScenarioResult(spec, bounds, e2, list(rules), page, log, pres, notes=list(notes) + log.notes,
                          pages=out[2] if keep_pages else None, metadata=meta)


def _override(result, closed):
    """Compare engine ranks with a closed-form ring and, on agreement, report that ring."""
    want = presentation_ranks(closed, result.bounds)
    got = result.page.ranks()
    result.closed_form = closed
    result.closed_form_agrees = want == got
    if not result.closed_form_agrees:
        diff = sorted(set(want.items()) ^ set(got.items()))
        raise InvariantError("engine ranks differ from the closed form at %s" % diff[:6])
    flags = [f for f in result.presentation.flags if f != "associated_graded_only"]
    result.presentation = RingPresentation(closed, flags, notes=["ring structure from the closed form"])
    return result


def _truncated_gl(n, j, ring, name):
    """Lambda(r_k : k != j)[t]/(t^j); j=None leaves everything, j=1 drops t."""
    gens = [("r%d" % k, rho_degree(k), EXTERIOR) for k in range(1, n + 1) if k != j]
    rels = []
    if j != 1:
        gens.append(("t", (1, 1, 1), POLYNOMIAL))
        if j is not None:
            rels.append("t^%d" % j)
    return AlgebraPresentation(gens, rels, coeff=ring, name=name)


# scenarios

def projective_space(n, ring=None, bounds=None, keep_pages=False):
    """G_m scaling punctured affine n-space: d_n(r_n) = t^n."""
    ring = ring or CoeffRing.rationals()
    spec = ScenarioSpec("projective", n, ring)
    bounds = _bounds(n, bounds)
    if n == 1:
        e2, _ = gl_e2(1, [1], ring)
        return _finish(spec, bounds, e2, [], ["the sequence is trivial for n = 1"], keep_pages=keep_pages)
    e2 = _ordered(ext_closed_form(0, 1, 1, _gl_config([n]), ring, ["r%d" % n], ["t"]), "E2")
    rules = [DifferentialRule(n, "r%d" % n, _theta_term(ring, 1, n))]
    notes = ["the unit coefficient of d_%d is normalized to 1" % n]
    return _finish(spec, bounds, e2, rules, notes, keep_pages=keep_pages)


def torus_punctured(n, ring=None, bounds=None, keep_pages=False):
    """The rank-n torus acting on punctured affine n-space: d_n(r_n) = t1*...*tn."""
    ring = ring or CoeffRing.rationals()
    if n == 1:
        res = projective_space(1, ring, bounds, keep_pages)
        res.spec = ScenarioSpec("torus-punctured", 1, ring)
        res.notes.append("reduces to the projective case n = 1")
        return res
    spec = ScenarioSpec("torus-punctured", n, ring)
    bounds = _bounds(n, bounds)
    tn = ["t%d" % (j + 1) for j in range(n)]
    e2 = ext_closed_form(0, n, 1, Config([], [(1, 1)] * n, [tuple(rho_degree(n))[1:]]), ring,
                         ["r%d" % n], tn)
    rules = [DifferentialRule(n, "r%d" % n, "*".join(tn))]
    return _finish(spec, bounds, _ordered(e2, "E2"), rules, keep_pages=keep_pages)


def _sigma_text(k, names):
    from itertools import combinations
    return " + ".join("*".join(c) for c in combinations(names, k))


def torus_on_gln(n, ring=None, bounds=None, keep_pages=False):
    """The diagonal torus acting on GL_n: d_i(r_i) = sigma_i(t1..tn)."""
    ring = ring or CoeffRing.rationals()
    _check_standing(ring)
    spec = ScenarioSpec("torus-gln", n, ring)
    bounds = _bounds(n, bounds)
    tn = ["t%d" % (j + 1) for j in range(n)]
    e2, unresolved = gl_e2(n, [1] * n, ring, thetas=tn)
    rules = [DifferentialRule(i, "r%d" % i, _sigma_text(i, tn), INDETERMINACY) for i in range(2, n + 1)]
    notes = ["nothing to run: the torus is GL_1 itself"] if n == 1 else []
    flags = ["unresolved_extension"] if unresolved else []
    return _finish(spec, bounds, e2, rules, notes, flags, keep_pages=keep_pages)


def weighted_gln(n, w, ring=None, bounds=None, keep_pages=False, kind="weighted-gln"):
    """G_m acting on GL_n through weights w: d_i(r_i) = sigma_i(w) t^i."""
    ring = ring or CoeffRing.rationals()
    _check_standing(ring)
    w = tuple(int(x) for x in w)
    spec = ScenarioSpec(kind, n, ring, w=w)
    bounds = _bounds(n, bounds)
    e2, unresolved = gl_e2(n, [sum(w)], ring)
    rules = [DifferentialRule(i, "r%d" % i, _theta_term(ring, elementary_symmetric(i, w), i), INDETERMINACY)
             for i in range(2, n + 1)]
    flags = ["unresolved_extension"] if unresolved else []
    return _finish(spec, bounds, e2, rules, flags=flags, keep_pages=keep_pages)


def pgl_closed_form(n, ring):
    i = min(k for k in range(1, n + 1) if binomial_in_ring(n, k, ring) != 0)
    return _truncated_gl(n, i, ring, "PGL%d" % n), i


def pgl(n, ring=None, bounds=None, keep_pages=False):
    """PGL_n as GL_n modulo scalars; the engine run is checked against the closed form."""
    ring = ring or CoeffRing.rationals()
    if not ring.is_field():
        raise ScenarioError("pgl needs a field, got %s" % ring.spelling())
    res = weighted_gln(n, [1] * n, ring, bounds, keep_pages, kind="pgl")
    closed, i = pgl_closed_form(n, ring)
    res.metadata["least_nonzero_binomial"] = i
    return _override(res, closed)


def first_sigma_difference(u, v, ring):
    """Least i with sigma_i(u) != sigma_i(v) in the ring, or None."""
    for i in range(1, len(u) + 1):
        if ring.reduce(elementary_symmetric(i, u) - elementary_symmetric(i, v)) != 0:
            return i
    return None


def left_right(n, u, v, ring=None, bounds=None, keep_pages=False):
    """G_m acting on GL_n on the left by weights u and on the right by v."""
    ring = ring or CoeffRing.rationals()
    spec = ScenarioSpec("left-right", n, ring, u=u, v=v)
    _need_two_invertible(ring)
    u, v = spec.u, spec.v
    bounds = _bounds(n, bounds)
    e2, unresolved = gl_e2(n, [sum(u) - sum(v)], ring)
    rules = []
    for i in range(2, n + 1):
        c = elementary_symmetric(i, u) - elementary_symmetric(i, v)
        rules.append(DifferentialRule(i, "r%d" % i, _theta_term(ring, c, i), INDETERMINACY))
    flags = ["unresolved_extension"] if unresolved else []
    res = _finish(spec, bounds, e2, rules, flags=flags, keep_pages=keep_pages)
    if ring.is_field():
        j = first_sigma_difference(u, v, ring)
        res.metadata["first_sigma_difference"] = j
        res = _override(res, _truncated_gl(n, j, ring, "closed form"))
    return res


def _sign_notes(u, v):
    rows = remainder_sign_report(u, v)
    bad = [r["i"] for r in rows if r["n_minus_i_disagrees"]]
    if not bad:
        return []
    return ["remainder identity holds with sign (-1)^i; the (-1)^(n-i) reading fails at i = %s"
            % ", ".join(map(str, bad))]


def stiefel_coefficients(n, m, u, v):
    """{k: sigma_k(u) - sigma_k(vex_u(v))} for k = n-m+1..n."""
    return {k: sigma_difference(list(u), list(v), k) for k in range(n - m + 1, n + 1)}


def stiefel(n, m, u, v, ring=None, bounds=None, keep_pages=False):
    """G_m acting on full-rank n x m matrices by weights u (left) and v (right)."""
    ring = ring or CoeffRing.localized([2])
    spec = ScenarioSpec("stiefel", n, ring, m=m, u=u, v=v)
    _need_two_invertible(ring)
    u, v = spec.u, spec.v
    bounds = _bounds(n, bounds)
    notes = []
    if not (ring.kind == "q" or (ring.kind == "zloc" and 2 in ring.primes)):
        notes.append("coefficients other than Z[1/2] or Q are outside the proven range")
    idx = list(range(n - m + 1, n + 1))
    e2 = _ordered(ext_closed_form(0, 1, m, _gl_config(idx), ring, ["r%d" % k for k in idx], ["t"]), "E2")
    coeffs = stiefel_coefficients(n, m, u, v)
    rules = []
    proven = True
    for k in idx:
        rules.append(DifferentialRule(k, "r%d" % k, _theta_term(ring, coeffs[k], k), INDETERMINACY, proven))
        if ring.reduce(coeffs[k]) != 0:
            proven = False
    if any(not r.proven for r in rules):
        notes.append("differentials after the first nonzero one follow the conjectured pattern")
    notes += _sign_notes(u, v)
    meta = {"vex": vex(u, v).to_json(), "coefficients": {str(k): c for k, c in coeffs.items()}}
    return _finish(spec, bounds, e2, rules, notes, keep_pages=keep_pages, metadata=meta)


@dataclass
class CrosscheckReport:
    spec: ScenarioSpec
    roots: list
    lifted_v: list
    k_vex: int
    coeff_vex: int
    k_lift: int
    coeff_lift: int
    engine_k: int
    run: ScenarioResult = None

    @property
    def agree(self):
        return (self.k_vex, self.coeff_vex) == (self.k_lift, self.coeff_lift)

    def to_json(self):
        return {
            "roots": list(self.roots),
            "lifted_v": list(self.lifted_v),
            "k_vex": self.k_vex,
            "coeff_vex": self.coeff_vex,
            "k_lift": self.k_lift,
            "coeff_lift": self.coeff_lift,
            "engine_k": self.engine_k,
            "agree": self.agree,
        }


def _first_nonzero(diffs, p):
    for k, c in enumerate(diffs, start=1):
        if c % p:
            return k, c % p
    return None, None


def stiefel_crosscheck(n, m, u, v, p, bounds=None):
    """Compare the vex coefficients mod p with a left-right run on lifted weights over Z/p."""
    if not _is_prime(p) or p == 2:
        raise ScenarioError("%s is not an odd prime" % p)
    ring = CoeffRing.mod(p)
    spec = ScenarioSpec("crosscheck", n, ring, m=m, u=u, v=v, prime=p)
    u, v = list(spec.u), list(spec.v)
    res = vex(u, v)
    roots = roots_mod_p(list(res.q), p)
    if roots is None:
        raise ScenarioError("q = %s does not split over Z/%d" % (list(res.q), p))
    lifted = v + roots
    k_vex, c_vex = _first_nonzero([elementary_symmetric(k, u) - res.sigma_vex[k - 1] for k in range(1, n + 1)], p)
    k_lift, c_lift = _first_nonzero([elementary_symmetric(k, u) - elementary_symmetric(k, lifted)
                                     for k in range(1, n + 1)], p)
    lr = left_right(n, u, lifted, ring, bounds)
    engine_k = None
    if ring.reduce(sum(u) - sum(lifted)) != 0:
        engine_k = 1
    else:
        for item in lr.log.fired:
            if item["acted"]:
                engine_k = item["page"]
                break
    if engine_k != k_lift:
        raise InvariantError("engine fired d_%s but the lifted weights predict d_%s" % (engine_k, k_lift))
    return CrosscheckReport(spec, roots, lifted, k_vex, c_vex, k_lift, c_lift, engine_k, lr)


def run_scenario(spec, bounds=None, keep_pages=False):
    """Dispatch a ScenarioSpec."""
    k, ring = spec.kind, spec.coeff
    if k == "projective":
        return projective_space(spec.n, ring, bounds, keep_pages)
    if k == "torus-punctured":
        return torus_punctured(spec.n, ring, bounds, keep_pages)
    if k == "torus-gln":
        return torus_on_gln(spec.n, ring, bounds, keep_pages)
    if k == "weighted-gln":
        return weighted_gln(spec.n, spec.w, ring, bounds, keep_pages)
    if k == "pgl":
        return pgl(spec.n, ring, bounds, keep_pages)
    if k == "left-right":
        return left_right(spec.n, spec.u, spec.v, ring, bounds, keep_pages)
    if k == "stiefel":
        return stiefel(spec.n, spec.m, spec.u, spec.v, ring, bounds, keep_pages)
    return stiefel_crosscheck(spec.n, spec.m, spec.u, spec.v, spec.prime, bounds)
