"""Integer symmetric-function tools.

Univariate polynomials are coefficient lists in ascending powers of z.
Multivariate polynomials (used for the antisymmetric decomposition) are dicts
from exponent tuples to coefficients.
"""
from dataclasses import dataclass
from fractions import Fraction

from .coefficients import CoeffRing


class NotMonicError(ValueError):
    pass


class NotAntisymmetricError(ValueError):
    pass


class TwoNotInvertibleError(ValueError):
    pass


# univariate integer polynomials

def poly_trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_degree(f):
    f = poly_trim(f)
    return len(f) - 1 if f else -1


def poly_add(f, g):
    n = max(len(f), len(g))
    return poly_trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def poly_sub(f, g):
    return poly_add(f, [-c for c in g])


def poly_mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly_trim(out)


def poly_eval(f, x, modulus=None):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
        if modulus:
            acc %= modulus
    return acc


def poly_coeff(f, k):
    return f[k] if 0 <= k < len(f) else 0


def render_poly(f, var="z"):
    f = poly_trim(f)
    if not f:
        return "0"
    parts = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else "%s^%d" % (var, k)
            body = mono if mag == 1 else "%d*%s" % (mag, mono)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        text += " %s %s" % (sign, body)
    return text


def elementary_symmetric(i, v):
    """sigma_i of the entries of v."""
    v = list(v)
    if not 0 <= i <= len(v):
        raise ValueError("sigma index %d out of range for %d entries" % (i, len(v)))
    # coefficients of prod (1 + v_j t)
    e = [1]
    for x in v:
        e = [a + x * b for a, b in zip(e + [0], [0] + e)]
    return e[i]


def weight_polynomial(v):
    """f_v(z) = prod (z - v_i), ascending coefficients."""
    f = [1]
    for x in v:
        f = poly_mul(f, [-x, 1])
    return f


def poly_divmod(f, g):
    """Long division by a monic g: f = g*q + r with deg r < deg g."""
    f = poly_trim(f)
    g = poly_trim(g)
    if not g or g[-1] != 1:
        raise NotMonicError("divisor must be monic")
    dg = len(g) - 1
    r = list(f)
    if len(r) - 1 < dg:
        return [], r
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            q[k - dg] = c
            for j in range(dg + 1):
                r[k - dg + j] -= c * g[j]
    return poly_trim(q), poly_trim(r[:dg])


def power_sums(v, upto):
    return [sum(x ** k for x in v) for k in range(1, upto + 1)]


def elementary_from_power_sums(p):
    """Newton's identities: k e_k = sum_{j=1..k} (-1)^{j-1} e_{k-j} p_j."""
    e = [Fraction(1)]
    for k in range(1, len(p) + 1):
        acc = sum((-1) ** (j - 1) * e[k - j] * p[j - 1] for j in range(1, k + 1))
        e.append(acc / k)
    return e


@dataclass(frozen=True)
class VexResult:
    f_u: tuple
    f_v: tuple
    q: tuple
    r: tuple
    sigma_vex: tuple

    def to_json(self):
        return {
            "f_u": list(self.f_u),
            "f_v": list(self.f_v),
            "q": list(self.q),
            "r": list(self.r),
            "sigma_vex": list(self.sigma_vex),
        }


def vex(u, v):
    """Approximate extension of v to length len(u).

    The padded weights are the roots of q in f_u = f_v*q + r; only their
    elementary symmetric values are kept, read off from f_v*q.
    """
    u, v = list(u), list(v)
    n = len(u)
    if len(v) >= n:
        raise ValueError("vex needs len(v) < len(u), got %d and %d" % (len(v), n))
    f_u = weight_polynomial(u)
    f_v = weight_polynomial(v)
    q, r = poly_divmod(f_u, f_v)
    ext = poly_mul(f_v, q)
    sig = tuple((-1) ** i * poly_coeff(ext, n - i) for i in range(1, n + 1))
    return VexResult(tuple(f_u), tuple(f_v), tuple(q), tuple(r), sig)


class SignMismatch(AssertionError):
    pass


def sigma_difference(u, v, i):
    """sigma_i(u) - sigma_i(vex_u(v)), cross-checked against the remainder.

    The coefficient of z^{n-i} in r equals (-1)^i times the difference.
    """
    n = len(u)
    if not 1 <= i <= n:
        raise ValueError("index %d out of range 1..%d" % (i, n))
    res = vex(u, v)
    direct = elementary_symmetric(i, u) - res.sigma_vex[i - 1]
    via_r = (-1) ** i * poly_coeff(list(res.r), n - i)
    if direct != via_r:
        raise SignMismatch("remainder identity failed for u=%s v=%s i=%d" % (u, v, i))
    return direct


def remainder_sign_report(u, v):
    """Per-index comparison of the two sign conventions for the remainder identity.

    Returns rows with the direct difference, the (-1)^i remainder reading
    (always equal to it) and the (-1)^(n-i) reading, flagged when it differs.
    """
    n = len(u)
    res = vex(u, v)
    rows = []
    for i in range(1, n + 1):
        direct = elementary_symmetric(i, u) - res.sigma_vex[i - 1]
        c = poly_coeff(list(res.r), n - i)
        alt = (-1) ** (n - i) * c
        rows.append({
            "i": i,
            "difference": direct,
            "remainder_coeff": c,
            "signed_by_i": (-1) ** i * c,
            "signed_by_n_minus_i": alt,
            "n_minus_i_disagrees": alt != direct,
        })
    return rows


# prime splitting

def _primes_upto(n):
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(n + 1) if sieve[i]]


def _deflate(f, root, p):
    # synthetic division by (z - root) mod p, f ascending
    out = [0] * (len(f) - 1)
    acc = 0
    for k in range(len(f) - 1, 0, -1):
        acc = (acc * root + f[k]) % p
        out[k - 1] = acc
    return out


def roots_mod_p(f, p):
    """Full multiset of roots of f mod p if f splits into linear factors, else None."""
    f = [c % p for c in f]
    f = poly_trim(f)
    deg = len(f) - 1
    if deg < 1:
        return None
    roots = []
    for x in range(p):
        while len(f) > 1 and poly_eval(f, x, p) == 0:
            f = poly_trim(_deflate(f, x, p))
            roots.append(x)
    return roots if len(roots) == deg else None


def split_primes(q, max_prime):
    """Odd primes p <= max_prime over which q is a product of linear factors.

    Returns a list of (p, roots) pairs, roots sorted with multiplicity.
    """
    q = poly_trim(q)
    if len(q) < 2:
        raise ValueError("split_primes needs a nonconstant polynomial")
    out = []
    for p in _primes_upto(max_prime):
        if p == 2 or q[-1] % p == 0:
            continue
        roots = roots_mod_p(q, p)
        if roots is not None:
            out.append((p, roots))
    return out


# antisymmetric decomposition

def mpoly_add(f, g, ring):
    out = dict(f)
    for k, c in g.items():
        out[k] = ring.add(out.get(k, 0), c)
        if out[k] == 0:
            del out[k]
    return out


def mpoly_mul(f, g, ring):
    out = {}
    for ka, ca in f.items():
        for kb, cb in g.items():
            k = tuple(a + b for a, b in zip(ka, kb))
            out[k] = ring.add(out.get(k, 0), ring.mul(ca, cb))
    return {k: c for k, c in out.items() if c != 0}


def mpoly_scale(f, c, ring):
    out = {k: ring.mul(v, c) for k, v in f.items()}
    return {k: v for k, v in out.items() if v != 0}


def mpoly_substitute(f, images, ring, nvars):
    """Substitute variable j -> images[j] (each an mpoly in nvars variables)."""
    out = {}
    for exps, c in f.items():
        term = {tuple([0] * nvars): ring.reduce(c)}
        for j, e in enumerate(exps):
            for _ in range(e):
                term = mpoly_mul(term, images[j], ring)
        out = mpoly_add(out, term, ring)
    return out


def swap_primes(f, k):
    """phi: c_j <-> c'_j for exponent tuples laid out as (c_1..c_k, c'_1..c'_k)."""
    return {e[k:] + e[:k]: c for e, c in f.items()}


def antisymmetric_decompose(f, k, ring=None):
    """Write an antisymmetric f(c, c') as sum_j (c_j - c'_j) f_j with phi(f_j) = f_j.

    f is a dict over exponent tuples of length 2k, ordered (c_1..c_k, c'_1..c'_k).
    Returns the list [f_1, ..., f_k] in the same encoding.
    """
    ring = ring or CoeffRing.rationals()
    f = {tuple(e): ring.reduce(c) for e, c in f.items() if ring.reduce(c) != 0}
    for e in f:
        if len(e) != 2 * k:
            raise ValueError("exponent tuple %s does not have length %d" % (e, 2 * k))
    if mpoly_add(f, swap_primes(f, k), ring):
        raise NotAntisymmetricError("f + phi(f) is not zero")
    two = ring.reduce(2)
    if not ring.is_unit(two):
        raise TwoNotInvertibleError("2 is not invertible in %s" % ring.spelling())
    half = ring.inv(two)

    def var(j, c=1):
        e = [0] * (2 * k)
        e[j] = 1
        return {tuple(e): ring.reduce(c)}

    # c_j = e_j + d_j, c'_j = e_j - d_j with variables laid out (e_1..e_k, d_1..d_k)
    images = [mpoly_add(var(j), var(k + j), ring) for j in range(k)]
    images += [mpoly_add(var(j), var(k + j, -1), ring) for j in range(k)]
    g = mpoly_substitute(f, images, ring, 2 * k)
    parts = [dict() for _ in range(k)]
    for e, c in sorted(g.items()):
        dpart = e[k:]
        j = next(i for i, x in enumerate(dpart) if x > 0)
        lowered = list(e)
        lowered[k + j] -= 1
        parts[j][tuple(lowered)] = ring.add(parts[j].get(tuple(lowered), 0), c)
    # back to c, c': e_j = (c_j + c'_j)/2, d_j = (c_j - c'_j)/2; f_j = g_j / 2
    back = [mpoly_scale(mpoly_add(var(j), var(k + j), ring), half, ring) for j in range(k)]
    back += [mpoly_scale(mpoly_add(var(j), var(k + j, -1), ring), half, ring) for j in range(k)]
    return [mpoly_scale(mpoly_substitute(p, back, ring, 2 * k), half, ring) for p in parts]


def reconstruct_antisymmetric(parts, k, ring=None):
    """sum_j (c_j - c'_j) f_j."""
    ring = ring or CoeffRing.rationals()
    out = {}
    for j, fj in enumerate(parts):
        e1 = [0] * (2 * k)
        e1[j] = 1
        e2 = [0] * (2 * k)
        e2[k + j] = 1
        diff = {tuple(e1): ring.one(), tuple(e2): ring.neg(ring.one())}
        out = mpoly_add(out, mpoly_mul(diff, fj, ring), ring)
    return out

