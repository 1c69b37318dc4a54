"""Ext over finite algebras from bar complexes, plus the closed forms they check.

Ext^s_S(N, R) is computed as the cohomology of Hom_R(S-bar^{(x)s} (x) N, R),
S-bar the augmentation ideal, with the coboundary

    (df)[a1|..|a_{s+1}]n = e(a1) f[a2|..]n + sum_i (-1)^i f[..|a_i a_{i+1}|..]n
                           + (-1)^{s+1} f[a1|..|a_s](a_{s+1} n)

(the first term only survives in the unnormalized complex).  Cochains are
split into blocks by a fine multigrading that every structure map
preserves, and the module is split into indecomposable summands so that
isomorphic copies are computed once.
"""
from collections import namedtuple
from fractions import Fraction
from itertools import combinations
from math import lcm

import numpy as np

from . import kernels, linalg
from .algebra import AlgebraPresentation, EXTERIOR, POLYNOMIAL, Tridegree
from .coefficients import CoeffRing, RingError


class ExtError(ValueError):
    pass


MAX_CELLS = 40_000_000


class FiniteAlgebra:
    """Algebra free of finite rank over the coefficient ring.

    ``mult`` maps (i, j) to a list of (k, c): e_i e_j = sum c e_k.  Degrees
    are (p, w) pairs; ``fine`` is an optional finer multigrading preserved
    by the product.
    """

    def __init__(self, coeff, labels, mult, unit=0, augmentation=None, degrees=None, fine=None):
        self.coeff = coeff
        self.labels = list(labels)
        n = len(self.labels)
        self.unit = unit
        self.mult = {}
        for (i, j), terms in mult.items():
            terms = [(k, coeff.reduce(c)) for k, c in terms if coeff.reduce(c) != 0]
            if terms:
                self.mult[(i, j)] = terms
        if augmentation is None:
            augmentation = [1 if i == unit else 0 for i in range(n)]
        self.augmentation = [coeff.reduce(x) for x in augmentation]
        self.degrees = [tuple(d) for d in (degrees or [(0, 0)] * n)]
        self.fine = [tuple(f) for f in (fine or [()] * n)]

    @property
    def rank(self):
        return len(self.labels)

    def product(self, i, j):
        return self.mult.get((i, j), [])

    def mul_vec(self, x, y):
        ring = self.coeff
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.product(i, j):
                    out[k] = ring.add(out.get(k, 0), ring.mul(c, ring.mul(a, b)))
        return {k: v for k, v in out.items() if v != 0}

    def adapted(self):
        """Unit is a basis element and the augmentation is its indicator."""
        return all(self.augmentation[i] == (1 if i == self.unit else 0) for i in range(self.rank))

    def check(self, cap=64):
        ring = self.coeff
        n = self.rank
        one = ring.one()
        for i in range(n):
            if self.product(self.unit, i) != [(i, one)] or self.product(i, self.unit) != [(i, one)]:
                raise ExtError("unit does not act as the identity on %s" % self.labels[i])
        idx = range(min(n, cap))
        for i in idx:
            for j in idx:
                for k, _ in self.product(i, j):
                    if self._deg_sum(i, j) != (self.degrees[k], self.fine[k]):
                        raise ExtError("product %s*%s is not homogeneous" % (self.labels[i], self.labels[j]))
                for k in idx:
                    lhs = self.mul_vec(self.mul_vec({i: one}, {j: one}), {k: one})
                    rhs = self.mul_vec({i: one}, self.mul_vec({j: one}, {k: one}))
                    if lhs != rhs:
                        raise ExtError("multiplication is not associative")
        for i in range(n):
            for j in range(n):
                lhs = ring.zero()
                for k, c in self.product(i, j):
                    lhs = ring.add(lhs, ring.mul(c, self.augmentation[k]))
                if lhs != ring.mul(self.augmentation[i], self.augmentation[j]):
                    raise ExtError("augmentation is not multiplicative")
        return True

    def _deg_sum(self, i, j):
        d = tuple(a + b for a, b in zip(self.degrees[i], self.degrees[j]))
        f = tuple(a + b for a, b in zip(self.fine[i], self.fine[j]))
        return d, f

    def signature(self):
        return (self.coeff, tuple(self.labels), self.unit,
                tuple(sorted((k, tuple(v)) for k, v in self.mult.items())),
                tuple(self.augmentation), tuple(self.degrees), tuple(self.fine))


class FiniteModule:
    """Left module over a FiniteAlgebra, free of finite rank over the coefficients.

    ``action`` maps (i, j) to a list of (k, c): e_i m_j = sum c m_k.  An
    optional ``diagonal`` maps j to a list of (k, l, c), used for products.
    """

    def __init__(self, algebra, labels, action, degrees=None, fine=None, diagonal=None, name=None):
        self.algebra = algebra
        ring = algebra.coeff
        self.labels = list(labels)
        n = len(self.labels)
        self.action = {}
        for (i, j), terms in action.items():
            terms = [(k, ring.reduce(c)) for k, c in terms if ring.reduce(c) != 0]
            if terms:
                self.action[(i, j)] = terms
        self.degrees = [tuple(d) for d in (degrees or [(0, 0)] * n)]
        self.fine = [tuple(f) for f in (fine or [()] * n)]
        self.diagonal = diagonal
        self.name = name
        self.closed_form = None

    @property
    def coeff(self):
        return self.algebra.coeff

    @property
    def rank(self):
        return len(self.labels)

    def act(self, i, j):
        return self.action.get((i, j), [])

    def act_vec(self, x, m):
        ring = self.coeff
        out = {}
        for i, a in x.items():
            for j, b in m.items():
                for k, c in self.act(i, j):
                    out[k] = ring.add(out.get(k, 0), ring.mul(c, ring.mul(a, b)))
        return {k: v for k, v in out.items() if v != 0}

    def check(self):
        A = self.algebra
        ring = self.coeff
        one = ring.one()
        for j in range(self.rank):
            if self.act(A.unit, j) != [(j, one)]:
                raise ExtError("unit does not act as the identity on %s" % self.labels[j])
        for i in range(A.rank):
            for j in range(self.rank):
                for k, _ in self.act(i, j):
                    d = tuple(a + b for a, b in zip(A.degrees[i], self.degrees[j]))
                    f = tuple(a + b for a, b in zip(A.fine[i], self.fine[j]))
                    if (d, f) != (self.degrees[k], self.fine[k]):
                        raise ExtError("action %s.%s is not homogeneous" % (A.labels[i], self.labels[j]))
        for i in range(A.rank):
            for k in range(A.rank):
                prod = A.mul_vec({i: one}, {k: one})
                for j in range(self.rank):
                    lhs = self.act_vec(prod, {j: one})
                    rhs = self.act_vec({i: one}, self.act_vec({k: one}, {j: one}))
                    if lhs != rhs:
                        raise ExtError("action does not respect the product (%s, %s)"
                                       % (A.labels[i], A.labels[k]))
        return True

    def components(self):
        """Index sets of the indecomposable summands visible from the action graph."""
        parent = list(range(self.rank))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (i, j), terms in self.action.items():
            for k, _ in terms:
                a, b = find(j), find(k)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups = {}
        for j in range(self.rank):
            groups.setdefault(find(j), []).append(j)
        return [groups[k] for k in sorted(groups)]

    def restrict(self, idx):
        """Summand on the basis elements idx, with degrees measured from their minimum."""
        pos = {j: a for a, j in enumerate(idx)}
        action = {}
        for (i, j), terms in self.action.items():
            if j in pos:
                action[(i, pos[j])] = [(pos[k], c) for k, c in terms]
        dmin = tuple(min(self.degrees[j][c] for j in idx) for c in range(len(self.degrees[idx[0]])))
        fdim = len(self.fine[idx[0]])
        fmin = tuple(min(self.fine[j][c] for j in idx) for c in range(fdim))
        degs = [tuple(a - b for a, b in zip(self.degrees[j], dmin)) for j in idx]
        fine = [tuple(a - b for a, b in zip(self.fine[j], fmin)) for j in idx]
        sub = FiniteModule(self.algebra, [self.labels[j] for j in idx], action, degs, fine)
        return sub, dmin

    def signature(self):
        return (tuple(sorted((k, tuple(v)) for k, v in self.action.items())),
                tuple(self.degrees), tuple(self.fine))


class GradedExtResult:
    """Ext groups per tridegree (s, p, w) as (free rank, torsion invariant factors)."""

    def __init__(self, coeff, max_degree, groups, module=None):
        self.coeff = coeff
        self.max_degree = max_degree
        self.groups = {Tridegree(*t): (r, list(tor)) for t, (r, tor) in groups.items() if r or tor}
        self.module = module

    def rank(self, t):
        return self.groups.get(Tridegree(*t), (0, []))[0]

    def torsion(self, t):
        return list(self.groups.get(Tridegree(*t), (0, []))[1])

    def ranks(self):
        return {t: r for t, (r, _) in self.groups.items() if r}

    def degree(self, s):
        """(total free rank, torsion list) in homological degree s."""
        r, tor = 0, []
        for t, (a, b) in self.groups.items():
            if t.s == s:
                r += a
                tor += b
        return r, sorted(tor)

    def to_json(self):
        return {
            "ring": self.coeff.spelling(),
            "max_degree": self.max_degree,
            "groups": [
                {"tridegree": t.as_list(), "rank": r, "torsion": [self.coeff.to_json(x) for x in tor]}
                for t, (r, tor) in sorted(self.groups.items())
            ],
        }


# bar complex

class BarComplex:
    """Resolution B_p = S (x) S^{(x)p} (x) N of N by free S-modules (unnormalized)."""

    def __init__(self, module, max_degree):
        self.module = module
        self.max_degree = max_degree
        A = module.algebra
        self.ranks = [module.rank * A.rank ** p for p in range(max_degree + 1)]
        self.r_ranks = [A.rank * r for r in self.ranks]
        self.differentials = [self._matrix(p) for p in range(1, max_degree + 1)]

    def _cells(self, p):
        A, N = self.module.algebra, self.module
        return A.rank ** (p + 1) * N.rank

    def _decode(self, idx, p):
        nm, na = self.module.rank, self.module.algebra.rank
        n = idx % nm
        idx //= nm
        digits = []
        for _ in range(p + 1):
            digits.append(idx % na)
            idx //= na
        return digits[::-1], n

    def _encode(self, digits, n):
        na = self.module.algebra.rank
        idx = 0
        for d in digits:
            idx = idx * na + d
        return idx * self.module.rank + n

    def _matrix(self, p):
        """d_p: B_p -> B_{p-1} as a dict {(row, col): coeff} over the coefficients."""
        A, N = self.module.algebra, self.module
        ring = A.coeff
        out = {}
        for col in range(self._cells(p)):
            digits, n = self._decode(col, p)
            for i in range(p + 1):
                sign = -1 if i % 2 else 1
                if i < p:
                    for k, c in A.product(digits[i], digits[i + 1]):
                        row = self._encode(digits[:i] + [k] + digits[i + 2:], n)
                        out[(row, col)] = ring.add(out.get((row, col), 0), ring.mul(sign, c))
                else:
                    for k, c in N.act(digits[p], n):
                        row = self._encode(digits[:p], k)
                        out[(row, col)] = ring.add(out.get((row, col), 0), ring.mul(sign, c))
        return {k: v for k, v in out.items() if v != 0}

    def check_square_zero(self):
        ring = self.module.coeff
        for p in range(2, self.max_degree + 1):
            d1, d2 = self.differentials[p - 2], self.differentials[p - 1]
            by_row = {}
            for (r, c), v in d1.items():
                by_row.setdefault(c, []).append((r, v))
            comp = {}
            for (r, c), v in d2.items():
                for r2, v2 in by_row.get(r, []):
                    comp[(r2, c)] = ring.add(comp.get((r2, c), 0), ring.mul(v, v2))
            if any(v != 0 for v in comp.values()):
                return False
        return True


def bar_resolution(module, max_degree):
    if max_degree < 0:
        raise ExtError("max_degree must be nonnegative")
    return BarComplex(module, max_degree)


class _Cochains:
    """Bar cochains Hom(S-bar^{(x)s} (x) N, R), split into fine-degree blocks."""

    def __init__(self, module, top):
        A = module.algebra
        self.module = module
        self.ring = A.coeff
        self.normalized = A.adapted()
        self.abasis = [i for i in range(A.rank) if not (self.normalized and i == A.unit)]
        self.na = len(self.abasis)
        self.nm = module.rank
        self.top = top
        loc = {a: k for k, a in enumerate(self.abasis)}
        coefs = [c for a in self.abasis for b in self.abasis for _, c in A.product(a, b)]
        coefs += [c for a in self.abasis for j in range(self.nm) for _, c in module.act(a, j)]
        coefs += [A.augmentation[a] for a in self.abasis]
        self.int_coeffs = all(_as_int(c) is not None for c in coefs)
        dtype = np.int64 if self.int_coeffs else object
        conv = _as_int if self.int_coeffs else (lambda c: c)
        T = max([len(A.product(a, b)) for a in self.abasis for b in self.abasis] + [1])
        self.prod_idx = np.full((self.na, self.na, T), -1, dtype=np.int64)
        self.prod_coef = np.zeros((self.na, self.na, T), dtype=dtype)
        for x, a in enumerate(self.abasis):
            for y, b in enumerate(self.abasis):
                for t, (k, c) in enumerate(A.product(a, b)):
                    if k not in loc:
                        if self.normalized:
                            raise ExtError("augmentation ideal is not closed under the product")
                        continue
                    self.prod_idx[x, y, t] = loc[k]
                    self.prod_coef[x, y, t] = conv(c)
        T2 = max([len(module.act(a, j)) for a in self.abasis for j in range(self.nm)] + [1])
        self.act_idx = np.full((self.na, self.nm, T2), -1, dtype=np.int64)
        self.act_coef = np.zeros((self.na, self.nm, T2), dtype=dtype)
        for x, a in enumerate(self.abasis):
            for j in range(self.nm):
                for t, (k, c) in enumerate(module.act(a, j)):
                    self.act_idx[x, j, t] = k
                    self.act_coef[x, j, t] = conv(c)
        self.eps = np.array([conv(A.augmentation[a]) for a in self.abasis], dtype=dtype)
        self._codes(A, module)
        self._blocks = {}

    def _codes(self, A, N):
        acoords = [tuple(A.fine[a]) + tuple(A.degrees[a]) for a in self.abasis]
        ncoords = [tuple(f) + tuple(d) for f, d in zip(N.fine, N.degrees)]
        dim = len(ncoords[0]) if ncoords else 0
        if acoords and len(acoords[0]) != dim:
            raise ExtError("algebra and module gradings have different shapes")
        allc = acoords + ncoords
        lo = [min(c[i] for c in allc) for i in range(dim)]
        hi = [max(c[i] for c in allc) for i in range(dim)]
        base = (self.top + 2) * (max([h - l for h, l in zip(hi, lo)] + [0]) + 1)
        if base ** max(dim, 1) >= 2 ** 62:
            raise ExtError("grading too large to encode")
        weights = [base ** i for i in range(dim)]
        enc = lambda c: sum((x - l) * wt for x, l, wt in zip(c, lo, weights))
        self.codeA = np.array([enc(c) for c in acoords], dtype=np.int64)
        self.codeN = np.array([enc(c) for c in ncoords], dtype=np.int64)
        self.degA = [tuple(A.degrees[a]) for a in self.abasis]
        self.degN = [tuple(d) for d in N.degrees]

    def ncells(self, s):
        return self.na ** s * self.nm

    def blocks(self, s):
        """{key: sorted array of cell indices} in bar degree s."""
        if s in self._blocks:
            return self._blocks[s]
        if self.ncells(s) > MAX_CELLS:
            raise ExtError("bar complex in degree %d has %d cells, above the limit" % (s, self.ncells(s)))
        keys = np.zeros(1, dtype=np.int64)
        for _ in range(s):
            keys = (keys[:, None] + self.codeA[None, :]).ravel()
        keys = (keys[:, None] + self.codeN[None, :]).ravel()
        if len(keys) == 0:
            self._blocks[s] = {}
            return {}
        order = np.argsort(keys, kind="stable")
        sk = keys[order]
        cuts = np.flatnonzero(np.diff(sk)) + 1
        starts = np.concatenate(([0], cuts))
        ends = np.concatenate((cuts, [len(sk)]))
        out = {}
        for a, b in zip(starts, ends):
            out[int(sk[a])] = order[a:b]
        self._blocks[s] = out
        return out

    def digits(self, cells, s):
        n = cells % self.nm
        rest = cells // self.nm
        ds = []
        for _ in range(s):
            ds.append(rest % self.na)
            rest = rest // self.na
        return ds[::-1], n

    def encode(self, ds, n):
        idx = np.zeros_like(n)
        for d in ds:
            idx = idx * self.na + d
        return idx * self.nm + n

    def tridegree(self, s, cell):
        ds, n = self.digits(np.array([cell], dtype=np.int64), s)
        p = self.degN[int(n[0])][0] + sum(self.degA[int(d[0])][0] for d in ds)
        w = self.degN[int(n[0])][1] + sum(self.degA[int(d[0])][1] for d in ds)
        return Tridegree(s, p, w)

    def coboundary(self, s, key):
        """delta_s restricted to one block, as (rows, cols, coefficient list) triples.

        Rows index target cells of block (s+1, key), columns source cells of
        block (s, key).
        """
        tgt = self.blocks(s + 1).get(key)
        src = self.blocks(s).get(key)
        if tgt is None or src is None:
            return None
        ds, n = self.digits(tgt, s + 1)
        rows_l, cols_l, vals_l = [], [], []
        rowpos = np.arange(len(tgt), dtype=np.int64)

        def emit(mask, src_cells, coef):
            if not mask.any():
                return
            sc = src_cells[mask]
            pos = np.searchsorted(src, sc)
            if np.any(pos >= len(src)) or np.any(src[np.minimum(pos, len(src) - 1)] != sc):
                raise ExtError("coboundary leaves its grading block")
            rows_l.append(rowpos[mask])
            cols_l.append(pos)
            vals_l.append(coef[mask])

        if not self.normalized:
            eps = self.eps[ds[0]]
            mask = eps != 0
            emit(mask, self.encode(ds[1:], n), eps)
        for i in range(1, s + 1):
            a, b = ds[i - 1], ds[i]
            sign = -1 if i % 2 else 1
            for t in range(self.prod_idx.shape[2]):
                k = self.prod_idx[a, b, t]
                mask = k >= 0
                coef = self.prod_coef[a, b, t] * sign
                new = ds[:i - 1] + [np.where(mask, k, 0)] + ds[i + 1:]
                emit(mask, self.encode(new, n), coef)
        sign = -1 if (s + 1) % 2 else 1
        last = ds[s]
        for t in range(self.act_idx.shape[2]):
            k = self.act_idx[last, n, t]
            mask = k >= 0
            coef = self.act_coef[last, n, t] * sign
            emit(mask, self.encode(ds[:s], np.where(mask, k, 0)), coef)
        if not rows_l:
            empty = np.zeros(0, dtype=np.int64)
            return (empty, empty, empty), len(tgt), len(src)
        rows = np.concatenate(rows_l)
        cols = np.concatenate(cols_l)
        vals = np.concatenate(vals_l)
        return (rows, cols, vals), len(tgt), len(src)


def _csr(rows, cols, vals, nrows):
    order = np.lexsort((cols, rows))
    rows, cols, vals = rows[order], cols[order], vals[order]
    counts = np.bincount(rows, minlength=nrows) if len(rows) else np.zeros(nrows, dtype=np.int64)
    indptr = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
    return indptr, cols.astype(np.int64), vals


def _field_rank(ring, triple, nrows, ncols, backend):
    rows, cols, vals = triple
    if len(rows) == 0:
        return 0
    indptr, indices, vals = _csr(rows, cols, vals, nrows)
    if ring.kind == "zmod":
        if vals.dtype == object:
            vals = np.array([int(ring.reduce(v)) for v in vals], dtype=np.int64)
        data = np.mod(vals, ring.modulus).astype(np.int64)
        return kernels.rank_mod_p(indptr, indices, data, ncols, ring.modulus, backend=backend)
    if vals.dtype != object:
        if len(vals) and int(np.abs(vals).max()) >= 2 ** 31:
            return kernels.rank_rational(indptr, indices, vals.tolist(), ncols, backend="python")
        return kernels.rank_rational(indptr, indices, vals, ncols, backend=backend)
    # rational entries: clear denominators row by row
    ints = []
    for r in range(nrows):
        seg = [Fraction(v) for v in vals[indptr[r]:indptr[r + 1]]]
        m = lcm(*[x.denominator for x in seg]) if seg else 1
        ints.extend(int(x * m) for x in seg)
    return kernels.rank_rational(indptr, indices, ints, ncols, backend="python")


def _as_int(c):
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return None


def _dense(ring, triple, nrows, ncols):
    rows, cols, vals = triple
    M = [[ring.zero()] * ncols for _ in range(nrows)]
    for r, c, v in zip(rows.tolist(), cols.tolist(), vals.tolist()):
        M[r][c] = ring.add(M[r][c], v)
    return M


def _component_ext(module, max_degree, backend):
    """{tridegree: (rank, torsion)} for one summand, degrees relative to its minimum."""
    ring = module.coeff
    cx = _Cochains(module, max_degree + 1)
    rank_of = {}
    smith_of = {}
    for s in range(0, max_degree + 1):
        for key in cx.blocks(s):
            res = cx.coboundary(s, key)
            if res is None:
                rank_of[(s, key)] = 0
                continue
            triple, nrows, ncols = res
            if ring.is_field():
                rank_of[(s, key)] = _field_rank(ring, triple, nrows, ncols, backend)
            else:
                M = _dense(ring, triple, nrows, ncols)
                diag = linalg.smith_diagonal(M, ring)
                rank_of[(s, key)] = len(diag)
                smith_of[(s, key)] = [d for d in diag if not ring.is_unit(d)]
    groups = {}
    for s in range(0, max_degree + 1):
        for key, cells in cx.blocks(s).items():
            dim = len(cells)
            r = dim - rank_of.get((s, key), 0) - (rank_of.get((s - 1, key), 0) if s else 0)
            tor = smith_of.get((s - 1, key), []) if s else []
            if r or tor:
                t = cx.tridegree(s, int(cells[0]))
                old = groups.get(t, (0, []))
                groups[t] = (old[0] + r, old[1] + list(tor))
    return groups


_CACHE = {}


def ext_via_bar(module, max_degree, backend=None, use_cache=True):
    """Ext_S^s(N, R) for s <= max_degree, per tridegree.

    One bar degree beyond max_degree is always built, so the top group is
    exact.  Summands of N with the same structure are computed once.
    """
    ring = module.coeff
    if max_degree < 0:
        raise ExtError("max_degree must be nonnegative")
    if not ring.is_pid():
        raise RingError("Ext over %s is not supported (composite modulus)" % ring.spelling())
    asig = module.algebra.signature()
    groups = {}
    for idx in module.components():
        sub, offset = module.restrict(idx)
        key = (asig, sub.signature(), max_degree)
        part = _CACHE.get(key) if use_cache else None
        if part is None:
            part = _component_ext(sub, max_degree, backend)
            if use_cache:
                _CACHE[key] = part
        for t, (r, tor) in part.items():
            tt = Tridegree(t.s, t.p + offset[0], t.w + offset[1])
            old = groups.get(tt, (0, []))
            groups[tt] = (old[0] + r, old[1] + list(tor))
    return GradedExtResult(ring, max_degree, groups, module)


def clear_cache():
    _CACHE.clear()


# Hopf-dual construction

def _subsets(k):
    out = []
    for r in range(k + 1):
        out.extend(combinations(range(k), r))
    return out


def _ext_mul(S, T, parity):
    """x_S x_T in an exterior algebra: (sign, union) or None."""
    if set(S) & set(T):
        return None
    swaps = sum(1 for a in S if parity[a] for b in T if b < a and parity[b])
    return (-1 if swaps % 2 else 1), tuple(sorted(S + T))


class _Tensor:
    """Elements of X (x) Y for exterior algebras X, Y: {(S, T): coeff}."""

    def __init__(self, px, py):
        self.px, self.py = px, py

    def mul(self, u, v):
        out = {}
        for (S1, T1), c1 in u.items():
            for (S2, T2), c2 in v.items():
                # (x (x) y)(x' (x) y') = (-1)^{|y||x'|} x x' (x) y y'
                deg_y = sum(self.py[i] for i in T1) % 2
                deg_x2 = sum(self.px[i] for i in S2) % 2
                sign = -1 if deg_y * deg_x2 else 1
                a = _ext_mul(S1, S2, self.px)
                b = _ext_mul(T1, T2, self.py)
                if a is None or b is None:
                    continue
                key = (a[1], b[1])
                out[key] = out.get(key, 0) + sign * a[0] * b[0] * c1 * c2
        return {k: v for k, v in out.items() if v != 0}


def hopf_dual_module(a_gens, b_gens, coaction, coeff, name=None):
    """Dual algebra of A = Lambda(a_gens) (primitive generators) acting on the dual of B = Lambda(b_gens).

    a_gens, b_gens: lists of (name, (p, w)).  coaction maps a B generator to
    a list of (coeff, a_name or None, b_name or None) giving its image in
    A (x) B, None standing for 1; generators not listed are sent to 1 (x) y.
    The module gets the diagonal dual to the product of B.
    """
    an = [g[0] for g in a_gens]
    bn = [g[0] for g in b_gens]
    apar = [g[1][0] % 2 for g in a_gens]
    bpar = [g[1][0] % 2 for g in b_gens]
    # fine grading: generators linked by a coaction term share a coordinate
    parent = {x: x for x in ["a:" + g for g in an] + ["b:" + g for g in bn]}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def union(x, y):
        x, y = find(x), find(y)
        if x != y:
            parent[max(x, y)] = min(x, y)

    for g, terms in coaction.items():
        for c, a, b in terms:
            if a is not None:
                union("b:" + g, "a:" + a)
            if b is not None:
                union("b:" + g, "b:" + b)
    classes = sorted({find(x) for x in parent})
    coord = {x: classes.index(find(x)) for x in parent}
    dim = len(classes)

    def fine_of(names, prefix):
        v = [0] * dim
        for x in names:
            v[coord[prefix + x]] += 1
        return tuple(v)

    def deg_of(idx, gens):
        return (sum(gens[i][1][0] for i in idx), sum(gens[i][1][1] for i in idx))

    A_mon = _subsets(len(an))
    B_mon = _subsets(len(bn))
    a_pos = {m: i for i, m in enumerate(A_mon)}
    b_pos = {m: i for i, m in enumerate(B_mon)}
    ring = coeff
    # coproduct on A: Delta(x_S) = prod over S of (x_i (x) 1 + 1 (x) x_i)
    AA = _Tensor(apar, apar)
    mult = {}
    for S in A_mon:
        d = {((), ()): 1}
        for i in S:
            d = AA.mul(d, {((i,), ()): 1, ((), (i,)): 1})
        s_idx = a_pos[S]
        for (T, U), c in d.items():
            mult.setdefault((a_pos[T], a_pos[U]), []).append((s_idx, c))
    algebra = FiniteAlgebra(
        ring, ["d(%s)" % "*".join(an[i] for i in S) if S else "1" for S in A_mon], mult, unit=0,
        degrees=[deg_of(S, a_gens) for S in A_mon],
        fine=[fine_of([an[i] for i in S], "a:") for S in A_mon],
    )
    # coaction on B, extended multiplicatively
    AB = _Tensor(apar, bpar)
    gen_images = []
    for j, g in enumerate(bn):
        terms = coaction.get(g)
        if terms is None:
            img = {((), (j,)): 1}
        else:
            img = {}
            for c, a, b in terms:
                key = ((an.index(a),) if a is not None else (), (bn.index(b),) if b is not None else ())
                img[key] = img.get(key, 0) + c
        gen_images.append(img)
    action = {}
    for S in B_mon:
        rho = {((), ()): 1}
        for j in S:
            rho = AB.mul(rho, gen_images[j])
        s_idx = b_pos[S]
        for (T, U), c in rho.items():
            action.setdefault((a_pos[T], b_pos[U]), []).append((s_idx, c))
    diagonal = {}
    for T in B_mon:
        for U in B_mon:
            pr = _ext_mul(T, U, bpar)
            if pr is None:
                continue
            sign, S = pr
            diagonal.setdefault(b_pos[S], []).append((b_pos[T], b_pos[U], ring.reduce(sign)))
    module = FiniteModule(
        algebra, ["d(%s)" % "*".join(bn[i] for i in S) if S else "d(1)" for S in B_mon], action,
        degrees=[deg_of(S, b_gens) for S in B_mon],
        fine=[fine_of([bn[i] for i in S], "b:") for S in B_mon],
        diagonal=diagonal, name=name,
    )
    return module


Config = namedtuple("Config", "alpha beta gamma")


def default_degrees(n_alpha, m_beta, p_gamma):
    """Bidegrees (p, w) for a configuration; every beta has odd p so theta is even."""
    return Config(
        alpha=[(2 * i + 2, i + 2) for i in range(n_alpha)],
        beta=[(2 * j + 1, j + 1) for j in range(m_beta)],
        gamma=[(2 * k + 3, k + 2) for k in range(p_gamma)],
    )


def closed_form_setup(n_alpha, m_beta, p_gamma, degrees=None, coeff=None, b=None, eta_degree=None):
    """The dual module of B = Lambda(alpha', gamma[, eta]) over the dual of A = Lambda(alpha, beta).

    alpha'_i -> alpha_i (x) 1 + 1 (x) alpha'_i, gamma_k -> 1 (x) gamma_k and,
    when b is given, eta -> 1 (x) eta + sum b_i beta_i (x) 1.
    """
    coeff = coeff or CoeffRing.rationals()
    deg = Config(*degrees) if degrees is not None else default_degrees(n_alpha, m_beta, p_gamma)
    a_gens = [("a%d" % (i + 1), deg.alpha[i]) for i in range(n_alpha)]
    a_gens += [("b%d" % (j + 1), deg.beta[j]) for j in range(m_beta)]
    b_gens = [("ap%d" % (i + 1), deg.alpha[i]) for i in range(n_alpha)]
    b_gens += [("g%d" % (k + 1), deg.gamma[k]) for k in range(p_gamma)]
    coaction = {"ap%d" % (i + 1): [(1, "a%d" % (i + 1), None), (1, None, "ap%d" % (i + 1))]
                for i in range(n_alpha)}
    if b is not None:
        if len(b) != m_beta:
            raise ExtError("need one eta coefficient per beta")
        ed = eta_degree or (deg.beta[0] if m_beta else (1, 1))
        for j, x in enumerate(b):
            if coeff.reduce(x) != 0 and tuple(deg.beta[j]) != tuple(ed):
                raise ExtError("eta and beta_%d must have the same degree" % (j + 1))
        b_gens.append(("eta", ed))
        coaction["eta"] = [(1, None, "eta")] + [(x, "b%d" % (j + 1), None)
                                                for j, x in enumerate(b) if coeff.reduce(x) != 0]
    module = hopf_dual_module(a_gens, b_gens, coaction, coeff)
    if b is None:
        module.closed_form = ext_closed_form(n_alpha, m_beta, p_gamma, deg, coeff=coeff)
    else:
        module.closed_form = ext_closed_form_eta(n_alpha, m_beta, p_gamma, deg, b, coeff=coeff,
                                                 eta_degree=eta_degree)
    return module


def lambda1(coeff=None):
    """Dual of Lambda(tau), |tau| = (1, 1), acting trivially on the base ring."""
    return closed_form_setup(0, 1, 0, Config([], [(1, 1)], []), coeff=coeff)


def z2_group(coeff=None):
    """Group ring R[Z/2] = R{1, g}, g^2 = 1, acting trivially on R."""
    coeff = coeff or CoeffRing.integers()
    alg = FiniteAlgebra(coeff, ["1", "g"], {(0, 0): [(0, 1)], (0, 1): [(1, 1)], (1, 0): [(1, 1)],
                                             (1, 1): [(0, 1)]},
                        unit=0, augmentation=[1, 1])
    return FiniteModule(alg, ["m"], {(0, 0): [(0, 1)], (1, 0): [(0, 1)]},
                        diagonal={0: [(0, 0, 1)]}, name="z2-group")


def regular_module(algebra):
    """The algebra as a free module of rank one over itself."""
    return FiniteModule(algebra, list(algebra.labels), dict(algebra.mult),
                        degrees=algebra.degrees, fine=algebra.fine)


def custom_module(doc, coeff=None):
    """Algebra and module from a JSON document.

    {"coeff": "q", "algebra": {"basis": [...], "unit": 0, "augmentation": [...],
      "degrees": [[p, w], ...], "products": [[i, j, k, c], ...]},
     "module": {"basis": [...], "degrees": [...], "action": [[i, j, k, c], ...]}}
    """
    if coeff is None:
        coeff = CoeffRing.parse(doc.get("coeff", "q"))
    a = doc["algebra"]
    mult = {}
    for i, j, k, c in a["products"]:
        mult.setdefault((i, j), []).append((k, coeff.parse_element(c)))
    alg = FiniteAlgebra(coeff, a["basis"], mult, unit=a.get("unit", 0),
                        augmentation=[coeff.parse_element(x) for x in a["augmentation"]]
                        if "augmentation" in a else None,
                        degrees=a.get("degrees"))
    m = doc["module"]
    action = {}
    for i, j, k, c in m["action"]:
        action.setdefault((i, j), []).append((k, coeff.parse_element(c)))
    mod = FiniteModule(alg, m["basis"], action, degrees=m.get("degrees"), name=doc.get("name"))
    alg.check()
    mod.check()
    return mod


PRESETS = {"lambda1": lambda1, "z2-group": z2_group}


# closed forms

def ext_closed_form(n_alpha, m_beta, p_gamma, degrees=None, coeff=None, gamma_names=None, theta_names=None):
    """Lambda(gamma'_1..gamma'_p)[theta_1..theta_m]; gamma'_k in filtration 0, theta_j at (1, |beta_j|)."""
    coeff = coeff or CoeffRing.rationals()
    deg = Config(*degrees) if degrees is not None else default_degrees(n_alpha, m_beta, p_gamma)
    gnames = gamma_names or ["g%d" % (k + 1) for k in range(p_gamma)]
    tnames = theta_names or (["t"] if m_beta == 1 else ["t%d" % (j + 1) for j in range(m_beta)])
    gens = [(gnames[k], (0,) + tuple(deg.gamma[k]), EXTERIOR) for k in range(p_gamma)]
    for j in range(m_beta):
        p, w = deg.beta[j]
        if (1 + p) % 2:
            raise ExtError("beta_%d has even motivic degree; theta would be odd" % (j + 1))
        gens.append((tnames[j], (1, p, w), POLYNOMIAL))
    return AlgebraPresentation(gens, coeff=coeff, name="Ext")


class EtaExtension:
    """Ext for the eta coaction: 0 -> sub -> Ext -> quotient -> 0.

    ``quotient`` is the annihilator of sum b_i theta_i, shifted by the degree of
    eta; None when it is zero.  ``merged`` is a presentation of Ext itself
    when the sequence pins it down.
    """

    def __init__(self, sub, quotient, merged, relation, eta_degree):
        self.sub = sub
        self.quotient = quotient
        self.merged = merged
        self.relation = relation
        self.eta_degree = eta_degree

    @property
    def unresolved(self):
        return self.merged is None

    def ranks(self, bounds):
        """Ranks of the middle term, sub plus shifted quotient, within (max_s, max_p)."""
        from .spectral import presentation_ranks
        out = dict(presentation_ranks(self.sub, bounds))
        if self.quotient is not None:
            shift = Tridegree(0, *self.eta_degree)
            for t, r in presentation_ranks(self.quotient, bounds).items():
                tt = t + shift
                if tt.s <= bounds[0] and tt.p <= bounds[1]:
                    out[tt] = out.get(tt, 0) + r
        return {t: r for t, r in out.items() if r}

    def to_json(self):
        return {
            "sub": self.sub.to_json(),
            "quotient": self.quotient.to_json() if self.quotient is not None else None,
            "merged": self.merged.to_json() if self.merged is not None else None,
            "relation": self.relation,
        }


def ext_closed_form_eta(n_alpha, m_beta, p_gamma, degrees, b, coeff=None, eta_degree=None,
                        gamma_names=None, theta_names=None, eta_name="e"):
    coeff = coeff or CoeffRing.rationals()
    if len(b) != m_beta:
        raise ExtError("need one eta coefficient per theta")
    deg = Config(*degrees) if degrees is not None else default_degrees(n_alpha, m_beta, p_gamma)
    base = ext_closed_form(n_alpha, m_beta, p_gamma, deg, coeff, gamma_names, theta_names)
    tnames = [g.name for g in base.poly]
    bs = [coeff.reduce(x) for x in b]
    terms = [base.gen(t).scale(x) for x, t in zip(bs, tnames) if x != 0]
    relation = str(sum(terms[1:], terms[0])) if terms else "0"
    ed = tuple(eta_degree or (deg.beta[0] if m_beta else (1, 1)))
    if not terms:
        # Ann(0) is everything: a free copy generated by a new exterior class
        gens = list(base.generators) + [(eta_name, (0,) + ed, EXTERIOR)]
        merged = AlgebraPresentation(gens, coeff=coeff, name="Ext")
        return EtaExtension(base, base, merged, relation, ed)
    if not coeff.is_pid():
        # the annihilator of a linear form over a ring with zero divisors is not computed
        return EtaExtension(base.with_relations([relation]), None, None, relation, ed)
    sub = base.with_relations([relation], name="Ext")
    # over a domain a nonzero linear form is a nonzerodivisor on Lambda(gamma')[theta]
    return EtaExtension(sub, None, sub, relation, ed)


# products

def _cocycle_classes(cx, s, key):
    """(cocycle basis, pivots of coboundaries+cocycles, class representatives) for a block."""
    ring = cx.ring
    cells = cx.blocks(s).get(key)
    if cells is None:
        return None
    n = len(cells)
    res = cx.coboundary(s, key)
    if res is None:
        cocycles = [[ring.one() if i == j else ring.zero() for i in range(n)] for j in range(n)]
    else:
        triple, nrows, ncols = res
        M = _dense(ring, triple, nrows, ncols)
        cols = [[M[r][c] for r in range(nrows)] for c in range(ncols)]
        cocycles = linalg.kernel(cols, ring, ncols=nrows)
    bounds = []
    if s > 0:
        prev = cx.coboundary(s - 1, key)
        if prev is not None:
            triple, nrows, ncols = prev
            M = _dense(ring, triple, nrows, ncols)
            bounds = [[M[r][c] for r in range(nrows)] for c in range(ncols)]
    basis, piv = linalg.echelon(bounds, ring, ncols=n) if bounds else ([], [])
    reps = []
    for z in cocycles:
        if linalg.in_span(z, basis, piv, ring):
            continue
        reps.append(z)
        basis, piv = linalg.echelon(basis + [z], ring, ncols=n)
    return cells, reps, bounds


def _cup(cx, s1, f, cells1, s2, g, cells2):
    """f cup g as a dict over global cells of degree s1+s2."""
    ring = cx.ring
    diag = cx.module.diagonal
    if diag is None:
        raise ExtError("module has no diagonal; products are undefined")
    fv = {int(c): v for c, v in zip(cells1, f) if v != 0}
    gv = {int(c): v for c, v in zip(cells2, g) if v != 0}
    out = {}
    na, nm = cx.na, cx.nm
    # target [a1..a_{s1+s2}] n: split n by the diagonal
    for n, terms in diag.items():
        for n1, n2, c in terms:
            for cf, vf in fv.items():
                if cf % nm != n1:
                    continue
                pre = cf // nm
                for cg, vg in gv.items():
                    if cg % nm != n2:
                        continue
                    post = cg // nm
                    idx = (pre * na ** s2 + post) * nm + n
                    out[idx] = ring.add(out.get(idx, 0), ring.mul(c, ring.mul(vf, vg)))
    return {k: v for k, v in out.items() if v != 0}


def ext_product_check(result, samples, closed_form=None):
    """Compare product ranks H(t1) x H(t2) -> H(t1+t2) on bar cocycles with the closed form.

    samples: iterable of (t1, t2) tridegree pairs.  Returns True iff every
    sampled product rank agrees; cup products of cocycles are also checked
    to be cocycles.
    """
    module = result.module
    closed = closed_form or module.closed_form
    if closed is None:
        raise ExtError("no closed form to compare against")
    if hasattr(closed, "merged"):
        closed = closed.merged
    ring = result.coeff
    if not ring.is_field():
        raise ExtError("product ranks are compared over fields only")
    samples = [(Tridegree(*a), Tridegree(*b)) for a, b in samples]
    top = max(a.s + b.s for a, b in samples)
    cx = _Cochains(module, top + 1)
    classes = {}

    def classes_at(t):
        if t in classes:
            return classes[t]
        out = []
        for key, cells in cx.blocks(t.s).items():
            if cx.tridegree(t.s, int(cells[0])) != t:
                continue
            got = _cocycle_classes(cx, t.s, key)
            out.append((key, got))
        classes[t] = out
        return out

    for t1, t2 in samples:
        t = t1 + t2
        prods = []
        for _, (c1, reps1, _) in classes_at(t1):
            for _, (c2, reps2, _) in classes_at(t2):
                for f in reps1:
                    for g in reps2:
                        prods.append(_cup(cx, t1.s, f, c1, t2.s, g, c2))
        bar_rank = 0
        for key, (cells, reps, bounds) in classes_at(t):
            pos = {int(c): i for i, c in enumerate(cells)}
            vecs = []
            for pdict in prods:
                v = [ring.zero()] * len(cells)
                hit = False
                for c, x in pdict.items():
                    if c in pos:
                        v[pos[c]] = x
                        hit = True
                if hit:
                    vecs.append(v)
            if not vecs:
                continue
            # products of cocycles must be cocycles
            res = cx.coboundary(t.s, key)
            if res is not None:
                triple, nrows, ncols = res
                M = _dense(ring, triple, nrows, ncols)
                for v in vecs:
                    for row in M:
                        acc = ring.zero()
                        for a, x in zip(row, v):
                            if a != 0 and x != 0:
                                acc = ring.add(acc, ring.mul(a, x))
                        if acc != 0:
                            raise ExtError("cup product of cocycles is not a cocycle")
            base = linalg.matrix_rank(bounds, ring) if bounds else 0
            bar_rank += linalg.matrix_rank(bounds + vecs, ring) - base
        if bar_rank != _closed_product_rank(closed, t1, t2):
            return False
    return True


def _closed_product_rank(pres, t1, t2):
    ring = pres.coeff
    t = t1 + t2
    monos, index, rb, rp = pres.relation_space(t)
    if not monos:
        return 0
    vecs = list(rb)
    for m1 in pres.monomials_of_degree(t1):
        for m2 in pres.monomials_of_degree(t2):
            pr = pres.mono_mul(m1, m2)
            if pr is None:
                continue
            v = [ring.zero()] * len(monos)
            v[index[pr[1]]] = ring.reduce(pr[0])
            vecs.append(v)
    return linalg.matrix_rank(vecs, ring) - len(rb)


def closed_form_ranks(pres, max_s, max_p=None):
    """Ranks of a closed-form presentation per tridegree with s <= max_s."""
    from .spectral import presentation_ranks
    if max_p is None:
        max_p = sum(g.degree.p for g in pres.ext)
        max_p += max_s * max([g.degree.p for g in pres.poly] + [0])
    return presentation_ranks(pres, (max_s, max_p))
