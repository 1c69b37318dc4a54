"""Exact linear algebra over Z, Q, Z/p and Z[1/S].

Vectors are lists of ring elements.  Submodules of R^n are given by lists of
row vectors.  Every routine takes the ring explicitly; all rings used here are
Euclidean (see ``CoeffRing.divmod``).
"""
from .coefficients import RingError


def _check_pid(ring):
    if not ring.is_pid():
        raise RingError("linear algebra over %s is not supported (composite modulus)" % ring.spelling())


def zero_vector(n, ring):
    z = ring.zero()
    return [z] * n


def is_zero_vector(v):
    return all(x == 0 for x in v)


def add_scaled(ring, v, w, c):
    """v + c*w."""
    if c == 0:
        return list(v)
    return [ring.add(a, ring.mul(c, b)) if b != 0 else a for a, b in zip(v, w)]


def echelon(rows, ring, ncols=None, full=True):
    """Row echelon (Hermite) form of the row span.

    Returns (basis, pivots): basis rows are nonzero with strictly increasing
    pivot columns, pivot entries normalized to a canonical associate, and with
    ``full`` the entries above each pivot reduced.
    """
    _check_pid(ring)
    A = [list(r) for r in rows if not is_zero_vector(r)]
    if not A:
        return [], []
    n = ncols if ncols is not None else len(A[0])
    r = 0
    pivots = []
    for col in range(n):
        if r == len(A):
            break
        while True:
            nz = [i for i in range(r, len(A)) if A[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: (ring.norm(A[i][col]), i))
            A[r], A[best] = A[best], A[r]
            clean = True
            for i in range(r + 1, len(A)):
                if A[i][col] == 0:
                    continue
                q, rem = ring.divmod(A[i][col], A[r][col])
                A[i] = add_scaled(ring, A[i], A[r], ring.neg(q))
                if rem != 0:
                    clean = False
            if clean:
                break
        if r < len(A) and A[r][col] != 0:
            u = ring.normalize_unit(A[r][col])
            if u != 1:
                A[r] = [ring.mul(u, x) for x in A[r]]
            pivots.append(col)
            r += 1
    basis = [row for row in A[:r]]
    if full:
        for k, col in enumerate(pivots):
            p = basis[k][col]
            for i in range(k):
                if basis[i][col] != 0:
                    q, _ = ring.divmod(basis[i][col], p)
                    if q != 0:
                        basis[i] = add_scaled(ring, basis[i], basis[k], ring.neg(q))
    return basis, pivots


def reduce_vector(v, basis, pivots, ring):
    """Remainder of v modulo an echelon basis (canonical for a fixed basis)."""
    v = list(v)
    for row, col in zip(basis, pivots):
        if v[col] != 0:
            q, _ = ring.divmod(v[col], row[col])
            if q != 0:
                v = add_scaled(ring, v, row, ring.neg(q))
    return v


def coordinates(v, basis, pivots, ring):
    """Coefficients c with v = sum c_k basis[k], or None if v is not in the span."""
    v = list(v)
    coeffs = []
    for row, col in zip(basis, pivots):
        if v[col] == 0:
            coeffs.append(ring.zero())
            continue
        q, rem = ring.divmod(v[col], row[col])
        if rem != 0:
            return None
        coeffs.append(q)
        v = add_scaled(ring, v, row, ring.neg(q))
    if not is_zero_vector(v):
        return None
    return coeffs


def in_span(v, basis, pivots, ring):
    return coordinates(v, basis, pivots, ring) is not None


def kernel(rows, ring, ncols=None):
    """Basis of {x : sum x_i rows[i] = 0} (left kernel), as echelon rows."""
    _check_pid(ring)
    m = len(rows)
    if m == 0:
        return []
    n = ncols if ncols is not None else len(rows[0])
    aug = []
    for i, r in enumerate(rows):
        e = zero_vector(m, ring)
        e[i] = ring.one()
        aug.append(list(r) + e)
    basis, pivots = echelon(aug, ring, ncols=n + m, full=False)
    ker = [row[n:] for row, col in zip(basis, pivots) if col >= n]
    kb, _ = echelon(ker, ring, ncols=m)
    return kb


def smith_diagonal(rows, ring):
    """Nonzero invariant factors of a matrix (list of rows), normalized."""
    _check_pid(ring)
    A = [list(r) for r in rows if not is_zero_vector(r)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        # pick the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0:
                    key = ring.norm(A[i][j])
                    if best is None or key < best[0]:
                        best = (key, i, j)
                        if key == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t] != 0:
                    q, rem = ring.divmod(A[i][t], p)
                    A[i] = add_scaled(ring, A[i], A[t], ring.neg(q))
                    if rem != 0:
                        done = False
            for j in range(t + 1, n):
                if A[t][j] != 0:
                    q, rem = ring.divmod(A[t][j], p)
                    nq = ring.neg(q)
                    for row in A:
                        if row[t] != 0:
                            row[j] = ring.add(row[j], ring.mul(nq, row[t]))
                    if rem != 0:
                        done = False
            if done:
                # divisibility condition on the remaining block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] != 0 and not ring.divides(p, A[i][j]):
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                A[t] = add_scaled(ring, A[t], A[bad], ring.one())
                continue
            # move a smaller remainder into the pivot position
            best = None
            for i in range(t, m):
                if A[i][t] != 0 and (best is None or ring.norm(A[i][t]) < best[0]):
                    best = (ring.norm(A[i][t]), i, "r")
            for j in range(t, n):
                if A[t][j] != 0 and (best is None or ring.norm(A[t][j]) < best[0]):
                    best = (ring.norm(A[t][j]), j, "c")
            _, k, kind = best
            if kind == "r":
                A[t], A[k] = A[k], A[t]
            else:
                for row in A:
                    row[t], row[k] = row[k], row[t]
        d = A[t][t]
        diag.append(ring.mul(ring.normalize_unit(d), d))
        t += 1
    return diag


def quotient_invariants(sub_rows, ambient_rows, ring):
    """Structure of span(ambient)/span(sub), sub contained in ambient.

    Returns (free_rank, torsion) where torsion lists the non-unit invariant
    factors.  Raises if sub is not contained in ambient.
    """
    basis, pivots = echelon(ambient_rows, ring)
    coords = []
    for v in sub_rows:
        c = coordinates(v, basis, pivots, ring)
        if c is None:
            raise ArithmeticError("submodule not contained in ambient module")
        coords.append(c)
    diag = smith_diagonal(coords, ring) if coords and basis else []
    rank = len(basis) - len(diag)
    torsion = [d for d in diag if not ring.is_unit(d)]
    return rank, torsion


def matrix_rank(rows, ring):
    b, _ = echelon(rows, ring, full=False)
    return len(b)
