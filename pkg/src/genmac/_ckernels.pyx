# distutils: language = c++
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels on packed 64-bit keys.

Coefficients are machine integers with explicit overflow detection; any
overflow raises ``OverflowError`` and the caller redoes the work with
Python integers.
"""

from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc

cdef extern from *:
    """
    #include <stdint.h>
    static inline int gm_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int gm_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int gm_bareiss(long long p, long long x, long long f,
                                 long long y, long long d, long long *r) {
        __int128 v = (__int128)p * x - (__int128)f * y;
        v /= d;
        if (v > INT64_MAX || v < INT64_MIN) return 1;
        *r = (long long)v;
        return 0;
    }
    """
    bint gm_mul(long long a, long long b, long long *r) nogil
    bint gm_add(long long a, long long b, long long *r) nogil
    bint gm_bareiss(long long p, long long x, long long f, long long y,
                    long long d, long long *r) nogil


def packed_chain_product(long long start, list factors,
                         long long qwidth, long long twidth):
    """Sequential sparse product on packed keys.

    ``factors`` is a list of ``(keys, qs, ts, coeffs)`` sequences.  A packed
    key stores q in the lowest field (width ``qwidth``), t in the next one
    (width ``twidth``) and the weight fields above; factor keys carry no
    bias so that adding them to an accumulator key is carry free whenever
    the result stays inside the box.  The product starts from the single
    term ``start`` with coefficient 1.
    """
    cdef unordered_map[long long, long long] acc, nxt
    cdef unordered_map[long long, long long].iterator it
    cdef vector[long long] kb, qb, tb, cb
    cdef long long ka, ca, qa, ta, prod, tot, key
    cdef Py_ssize_t j, n

    acc[start] = 1
    for keys, qs, ts, coeffs in factors:
        kb = keys
        qb = qs
        tb = ts
        cb = coeffs
        n = kb.size()
        nxt.clear()
        it = acc.begin()
        while it != acc.end():
            ka = deref(it).first
            ca = deref(it).second
            inc(it)
            if ca == 0:
                continue
            qa = ka % qwidth
            ta = (ka // qwidth) % twidth
            for j in range(n):
                if qa + qb[j] >= qwidth or ta + tb[j] >= twidth:
                    continue
                if gm_mul(ca, cb[j], &prod):
                    raise OverflowError("coefficient overflow")
                key = ka + kb[j]
                if gm_add(nxt[key], prod, &tot):
                    raise OverflowError("coefficient overflow")
                nxt[key] = tot
        acc.swap(nxt)

    out = {}
    it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            out[deref(it).first] = deref(it).second
        inc(it)
    return out


def bareiss_rank(list rows, Py_ssize_t ncols):
    """Rank of an integer matrix by fraction-free elimination in int64."""
    cdef vector[vector[long long]] a = rows
    cdef Py_ssize_t m = a.size(), rank = 0, col, i, j, piv
    cdef long long prev = 1, p, f, val
    for col in range(ncols):
        if rank == m:
            break
        piv = -1
        for i in range(rank, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            a[rank].swap(a[piv])
        p = a[rank][col]
        for i in range(rank + 1, m):
            f = a[i][col]
            for j in range(col + 1, ncols):
                if gm_bareiss(p, a[i][j], f, a[rank][j], prev, &val):
                    raise OverflowError("entry overflow")
                a[i][j] = val
            a[i][col] = 0
        prev = p
        rank += 1
    return rank
