"""Pure-Python versions of the compiled rank kernels (same algorithm)."""
import heapq
from math import gcd


def _rows(indptr, indices, data):
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    data = [int(x) for x in data]
    for i in range(len(indptr) - 1):
        yield indices[indptr[i]:indptr[i + 1]], data[indptr[i]:indptr[i + 1]]


def rank_mod_p(indptr, indices, data, ncols, p):
    pivots = {}
    rank = 0
    for cols, vals in _rows(indptr, indices, data):
        acc = {}
        for c, v in zip(cols, vals):
            acc[c] = (acc.get(c, 0) + v) % p
        heap = list(acc)
        heapq.heapify(heap)
        queued = set(heap)
        while heap:
            c = heapq.heappop(heap)
            queued.discard(c)
            v = acc.pop(c, 0)
            if v == 0:
                continue
            piv = pivots.get(c)
            if piv is not None:
                for c2, v2 in piv:
                    acc[c2] = (acc.get(c2, 0) - v * v2) % p
                    if c2 not in queued:
                        queued.add(c2)
                        heapq.heappush(heap, c2)
                continue
            inv = pow(v, -1, p)
            tail = sorted((c2, x * inv % p) for c2, x in acc.items() if x)
            pivots[c] = tail
            rank += 1
            break
    return rank


def rank_rational(indptr, indices, data, ncols):
    """Fraction-free elimination with Python integers (no overflow)."""
    pivots = {}
    rank = 0
    for cols, vals in _rows(indptr, indices, data):
        acc = {}
        for c, v in zip(cols, vals):
            acc[c] = acc.get(c, 0) + v
        heap = list(acc)
        heapq.heapify(heap)
        queued = set(heap)
        while heap:
            c = heapq.heappop(heap)
            queued.discard(c)
            v = acc.pop(c, 0)
            if v == 0:
                continue
            piv = pivots.get(c)
            if piv is not None:
                lead, tail = piv
                g = gcd(lead, v)
                a, b = lead // g, v // g
                if a != 1:
                    for k in acc:
                        acc[k] *= a
                for c2, v2 in tail:
                    acc[c2] = acc.get(c2, 0) - b * v2
                    if c2 not in queued:
                        queued.add(c2)
                        heapq.heappush(heap, c2)
                continue
            tail = sorted((c2, x) for c2, x in acc.items() if x)
            g = v
            for _, x in tail:
                g = gcd(g, x)
            g = abs(g)
            if g > 1:
                v //= g
                tail = [(c2, x // g) for c2, x in tail]
            pivots[c] = (v, tail)
            rank += 1
            break
    return rank
