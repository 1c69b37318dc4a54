# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Sparse exact rank of a CSR matrix (rows eliminated one at a time).

Each incoming row is loaded into a dense accumulator and reduced against the
stored pivot rows in increasing column order, driven by a min-heap of the
columns it touches.  A row that survives becomes the pivot for its leading
column.
"""
from libcpp.vector cimport vector
from libcpp.queue cimport priority_queue
from libc.stdlib cimport llabs

import numpy as np


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, nt = 1, r = p, nr = a % p, q, tmp
    if nr < 0:
        nr += p
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


cdef long long _gcd(long long a, long long b):
    a = llabs(a)
    b = llabs(b)
    while b:
        a, b = b, a % b
    return a


def rank_mod_p(indptr, indices, data, Py_ssize_t ncols, long long p):
    """Rank over Z/p of the CSR matrix (entries are reduced here)."""
    cdef const long long[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const long long[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef const long long[:] dv = np.ascontiguousarray(data, dtype=np.int64)
    cdef Py_ssize_t nrows = ip.shape[0] - 1
    cdef vector[vector[int]] pcols
    cdef vector[vector[long long]] pvals
    cdef vector[char] has_piv
    cdef vector[long long] acc
    cdef vector[char] inheap
    cdef priority_queue[int] heap  # holds negated columns
    cdef Py_ssize_t i, k
    cdef int c, c2
    cdef long long v, f, inv
    cdef int rank = 0
    pcols.resize(ncols)
    pvals.resize(ncols)
    has_piv.assign(ncols, 0)
    acc.assign(ncols, 0)
    inheap.assign(ncols, 0)
    for i in range(nrows):
        for k in range(ip[i], ip[i + 1]):
            c = <int>ix[k]
            v = dv[k] % p
            if v < 0:
                v += p
            acc[c] = (acc[c] + v) % p
            if not inheap[c]:
                inheap[c] = 1
                heap.push(-c)
        while not heap.empty():
            c = -heap.top()
            heap.pop()
            inheap[c] = 0
            v = acc[c]
            if v == 0:
                continue
            if has_piv[c]:
                f = v
                acc[c] = 0
                for k in range(<Py_ssize_t>pcols[c].size()):
                    c2 = pcols[c][k]
                    acc[c2] = (acc[c2] - f * pvals[c][k]) % p
                    if acc[c2] < 0:
                        acc[c2] += p
                    if not inheap[c2]:
                        inheap[c2] = 1
                        heap.push(-c2)
                continue
            # new pivot: the rest of the heap is the tail of this row
            inv = _inv_mod(v, p)
            acc[c] = 0
            has_piv[c] = 1
            rank += 1
            while not heap.empty():
                c2 = -heap.top()
                heap.pop()
                inheap[c2] = 0
                if acc[c2] != 0:
                    pcols[c].push_back(c2)
                    pvals[c].push_back((acc[c2] * inv) % p)
                    acc[c2] = 0
            break
    return rank


cdef long long LIMIT = 1LL << 31


def rank_rational(indptr, indices, data, Py_ssize_t ncols):
    """Rank over Q by fraction-free elimination in 64-bit integers.

    Raises OverflowError once an entry exceeds 2^31 in absolute value; the
    caller then falls back to the arbitrary-precision implementation.
    """
    cdef const long long[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const long long[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef const long long[:] dv = np.ascontiguousarray(data, dtype=np.int64)
    cdef Py_ssize_t nrows = ip.shape[0] - 1
    cdef vector[vector[int]] pcols
    cdef vector[vector[long long]] pvals
    cdef vector[long long] plead
    cdef vector[char] has_piv
    cdef vector[long long] acc
    cdef vector[char] inheap
    cdef vector[int] active
    cdef priority_queue[int] heap
    cdef Py_ssize_t i, k
    cdef int c, c2
    cdef long long v, L, g, a, b, x
    cdef int rank = 0
    pcols.resize(ncols)
    pvals.resize(ncols)
    plead.assign(ncols, 0)
    has_piv.assign(ncols, 0)
    acc.assign(ncols, 0)
    inheap.assign(ncols, 0)
    for i in range(nrows):
        active.clear()
        for k in range(ip[i], ip[i + 1]):
            c = <int>ix[k]
            acc[c] += dv[k]
            if llabs(acc[c]) > LIMIT:
                raise OverflowError("entry growth beyond 64-bit safety bound")
            if not inheap[c]:
                inheap[c] = 1
                heap.push(-c)
                active.push_back(c)
        while not heap.empty():
            c = -heap.top()
            heap.pop()
            inheap[c] = 0
            v = acc[c]
            if v == 0:
                continue
            if has_piv[c]:
                L = plead[c]
                g = _gcd(L, v)
                a = L // g
                b = v // g
                acc[c] = 0
                if a != 1:
                    for k in range(<Py_ssize_t>active.size()):
                        c2 = active[k]
                        if acc[c2] != 0:
                            x = acc[c2] * a
                            if llabs(x) > LIMIT:
                                raise OverflowError("entry growth beyond 64-bit safety bound")
                            acc[c2] = x
                for k in range(<Py_ssize_t>pcols[c].size()):
                    c2 = pcols[c][k]
                    x = acc[c2] - b * pvals[c][k]
                    if llabs(x) > LIMIT:
                        raise OverflowError("entry growth beyond 64-bit safety bound")
                    acc[c2] = x
                    if not inheap[c2]:
                        inheap[c2] = 1
                        heap.push(-c2)
                        active.push_back(c2)
                continue
            acc[c] = 0
            g = v
            while not heap.empty():
                c2 = -heap.top()
                heap.pop()
                inheap[c2] = 0
                if acc[c2] != 0:
                    pcols[c].push_back(c2)
                    pvals[c].push_back(acc[c2])
                    g = _gcd(g, acc[c2])
                    acc[c2] = 0
            if g > 1:
                v //= g
                for k in range(<Py_ssize_t>pvals[c].size()):
                    pvals[c][k] //= g
            plead[c] = v
            has_piv[c] = 1
            rank += 1
            break
        for k in range(<Py_ssize_t>active.size()):
            acc[active[k]] = 0
    return rank
