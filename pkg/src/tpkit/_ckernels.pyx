# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels (same contract as ``_pykernels``).

Toeplitz minors are first attempted in ``int64`` with checked arithmetic;
any overflow reruns that minor on Python integers, so results are always
exact.
"""
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

try:
    from gmpy2 import gcd as _gcd
except ImportError:
    from math import gcd as _gcd

IMPLEMENTATION = "cython"

cdef extern from *:
    bint __builtin_mul_overflow(int64_t a, int64_t b, int64_t *res) nogil
    bint __builtin_sub_overflow(int64_t a, int64_t b, int64_t *res) nogil

cdef enum:
    MAXN = 64


cdef bint _det_i64(int64_t *m, int n, int64_t *out) nogil:
    """Bareiss on an n*n row-major buffer (destroyed).  False on overflow."""
    cdef int k, i, j
    cdef int64_t pivot, prev = 1, lead, t1, t2, tmp
    cdef int sign = 1
    if n == 0:
        out[0] = 1
        return True
    for k in range(n - 1):
        if m[k * n + k] == 0:
            for i in range(k + 1, n):
                if m[i * n + k] != 0:
                    for j in range(n):
                        tmp = m[k * n + j]
                        m[k * n + j] = m[i * n + j]
                        m[i * n + j] = tmp
                    sign = -sign
                    break
            else:
                out[0] = 0
                return True
        pivot = m[k * n + k]
        for i in range(k + 1, n):
            lead = m[i * n + k]
            for j in range(k + 1, n):
                if __builtin_mul_overflow(m[i * n + j], pivot, &t1):
                    return False
                if __builtin_mul_overflow(lead, m[k * n + j], &t2):
                    return False
                if __builtin_sub_overflow(t1, t2, &t1):
                    return False
                m[i * n + j] = t1 // prev
        prev = pivot
    out[0] = sign * m[(n - 1) * n + (n - 1)]
    return True


cdef object _det_obj(list m):
    cdef Py_ssize_t n = len(m), k, i, j
    cdef int sign = 1
    cdef list row_k, row_i
    if n == 0:
        return 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        row_k = m[k]
        pivot = row_k[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def bareiss_det(matrix):
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    cdef list m = [list(row) for row in matrix]
    cdef int n = len(m), i, j
    cdef int64_t buf[MAXN * MAXN]
    cdef int64_t out
    cdef bint small = n <= MAXN
    if small:
        try:
            for i in range(n):
                for j in range(n):
                    buf[i * n + j] = m[i][j]
        except OverflowError:
            small = False
    if small and _det_i64(buf, n, &out):
        return int(out)
    return _det_obj(m)


cdef inline bint _next_comb(int *c, int k, int lo, int hi):
    """Advance c[0..k) to the next increasing k-subset of [lo, hi]."""
    cdef int i = k - 1
    while i >= 0 and c[i] == hi - (k - 1 - i):
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for i in range(i + 1, k):
        c[i] = c[i - 1] + 1
    return True


def scan_toeplitz(coeffs, int max_order, int window, bint stop_first):
    """See ``tpkit._pykernels.scan_toeplitz``."""
    cdef int order, t, r, c, n_top
    cdef int *rows
    cdef int *cols
    cdef int64_t *small_coeffs
    cdef int64_t buf[MAXN * MAXN]
    cdef int64_t out
    cdef bint all_small = True, has_rows, has_cols, dominated, done
    cdef long long evaluated = 0, pruned = 0
    cdef list order_minima = [None] * max_order
    first = None

    n_top = min(max_order, window + 1)
    if n_top > MAXN:
        raise ValueError("order exceeds compiled kernel limit")
    rows = <int *> malloc(MAXN * sizeof(int))
    cols = <int *> malloc(MAXN * sizeof(int))
    small_coeffs = <int64_t *> malloc((window + 1) * sizeof(int64_t))
    try:
        for t in range(window + 1):
            try:
                small_coeffs[t] = coeffs[t]
            except OverflowError:
                all_small = False
                break
        done = False
        for order in range(1, n_top + 1):
            best = None
            for t in range(order):
                rows[t] = t
            has_rows = True
            while has_rows:
                for t in range(order):
                    cols[t] = t
                has_cols = True
                while has_cols:
                    dominated = False
                    for t in range(order):
                        if cols[t] < rows[t]:
                            dominated = True
                            break
                    if dominated:
                        pruned += 1
                    else:
                        value = None
                        if all_small:
                            for r in range(order):
                                for c in range(order):
                                    if cols[c] >= rows[r]:
                                        buf[r * order + c] = small_coeffs[cols[c] - rows[r]]
                                    else:
                                        buf[r * order + c] = 0
                            if _det_i64(buf, order, &out):
                                value = out
                        if value is None:
                            value = _det_obj([[coeffs[cols[c] - rows[r]] if cols[c] >= rows[r] else 0
                                               for c in range(order)] for r in range(order)])
                        evaluated += 1
                        if best is None or value < best:
                            best = value
                        if value < 0 and first is None:
                            first = (order,
                                     tuple([rows[t] for t in range(order)]),
                                     tuple([cols[t] for t in range(order)]),
                                     value)
                            if stop_first:
                                done = True
                                break
                    has_cols = _next_comb(cols, order, 0, window)
                if done:
                    break
                # rows[0] stays 0; advance the tail inside [1, window]
                has_rows = order > 1 and _next_comb(rows + 1, order - 1, 1, window)
            order_minima[order - 1] = best
            if done:
                break
    finally:
        free(rows)
        free(cols)
        free(small_coeffs)
    return first, order_minima, evaluated, pruned


cdef list _primitive(list p):
    g = 0
    for c in p:
        g = _gcd(g, c)
        if g == 1:
            return p
    if g == 0:
        return p
    return [c // g for c in p]


cdef list _prem(list a, list b):
    cdef Py_ssize_t db = len(b) - 1, delta = len(a) - len(b) + 1, i, shift
    lb = b[db]
    a = list(a)
    while a and len(a) - 1 >= db:
        la = a[len(a) - 1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for i in range(db + 1):
            a[i + shift] = a[i + shift] - la * b[i]
        a.pop()
        delta -= 1
        while a and a[len(a) - 1] == 0:
            a.pop()
    if a and delta > 0:
        f = lb ** delta
        a = [x * f for x in a]
    return a


def sturm_chain(p):
    """See ``tpkit._pykernels.sturm_chain``."""
    cdef list chain, a, b, r
    p = list(p)
    while p and p[len(p) - 1] == 0:
        p.pop()
    chain = [_primitive(list(p))]
    if len(p) <= 1:
        return chain
    chain.append(_primitive([i * p[i] for i in range(1, len(p))]))
    while len(chain[len(chain) - 1]) > 1:
        a = chain[len(chain) - 2]
        b = chain[len(chain) - 1]
        r = _prem(a, b)
        if not r:
            break
        r = _primitive(r)
        if b[len(b) - 1] > 0 or (len(a) - len(b) + 1) % 2 == 0:
            r = [-x for x in r]
        chain.append(r)
    return chain
