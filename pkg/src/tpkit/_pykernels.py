"""Pure-Python hot kernels.

Reference implementation of everything in ``_ckernels.pyx``.  Both modules
expose the same three functions with the same semantics; ``tpkit.kernels``
picks one at import time.

All inputs are integers (``int`` or ``gmpy2.mpz``); callers integerize
rational data first.
"""
from itertools import combinations

try:
    from gmpy2 import gcd as _gcd
except ImportError:  # pragma: no cover
    from math import gcd as _gcd

IMPLEMENTATION = "python"


def bareiss_det(matrix):
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
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
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def _toeplitz_block(coeffs, rows, cols):
    return [[coeffs[c - r] if c >= r else 0 for c in cols] for r in rows]


def scan_toeplitz(coeffs, max_order, window, stop_first):
    """Enumerate Toeplitz minors of order 1..max_order inside [0, window].

    Entry (i, j) of the matrix is ``coeffs[j - i]`` (zero below the band).
    Only rows starting at 0 are visited: a minor is invariant under shifting
    rows and cols by the same amount, so every value in the window occurs
    with ``rows[0] == 0`` and the lexicographically first negative minor has
    that form.  Column sets with ``cols[t] < rows[t]`` for some ``t`` contain
    a zero block and vanish; they are counted in ``pruned``, not evaluated.

    Returns ``(first_negative, order_minima, evaluated, pruned)`` where
    ``first_negative`` is ``(order, rows, cols, value)`` or ``None`` and
    ``order_minima[r - 1]`` is the smallest evaluated minor of order ``r``
    (``None`` when the order was not reached).
    """
    order_minima = [None] * max_order
    first = None
    evaluated = 0
    pruned = 0
    indices = range(window + 1)
    for order in range(1, min(max_order, window + 1) + 1):
        best = None
        for tail in combinations(range(1, window + 1), order - 1):
            rows = (0,) + tail
            for cols in combinations(indices, order):
                if any(c < r for c, r in zip(cols, rows)):
                    pruned += 1
                    continue
                value = bareiss_det(_toeplitz_block(coeffs, rows, cols))
                evaluated += 1
                if best is None or value < best:
                    best = value
                if value < 0 and first is None:
                    first = (order, rows, cols, value)
                    if stop_first:
                        order_minima[order - 1] = best
                        return first, order_minima, evaluated, pruned
        order_minima[order - 1] = best
    return first, order_minima, evaluated, pruned


def _primitive(p):
    g = 0
    for c in p:
        g = _gcd(g, c)
        if g == 1:
            return p
    if g == 0:
        return p
    return [c // g for c in p]


def _prem(a, b):
    """Pseudo-remainder lc(b)**(deg a - deg b + 1) * a mod b; coefficients low->high."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b) + 1
    while a and len(a) - 1 >= db:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for i in range(db + 1):
            a[i + shift] -= la * b[i]
        a.pop()
        delta -= 1
        while a and a[-1] == 0:
            a.pop()
    if a and delta > 0:
        f = lb ** delta
        a = [x * f for x in a]
    return a


def sturm_chain(p):
    """Primitive Sturm chain of an integer polynomial (coefficients low->high).

    Element ``i + 1`` is a positive multiple of ``-rem(chain[i - 1], chain[i])``,
    so sign variations agree with the classical Sturm sequence.  The last
    element is a (primitive) gcd of ``p`` and ``p'``.
    """
    while p and p[-1] == 0:
        p = p[:-1]
    chain = [_primitive(list(p))]
    if len(p) <= 1:
        return chain
    deriv = _primitive([i * p[i] for i in range(1, len(p))])
    chain.append(deriv)
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r = _prem(a, b)
        if not r:
            break
        r = _primitive(r)
        # prem = lc(b)^(da-db+1) * rem; Sturm wants -rem up to a positive factor
        if b[-1] > 0 or (len(a) - len(b) + 1) % 2 == 0:
            r = [-x for x in r]
        chain.append(r)
    return chain
