"""Kernel selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels``.  ``TPKIT_PURE_PYTHON=1`` forces the fallback.
Integer inputs are promoted to ``gmpy2.mpz`` when gmpy2 is installed, which
is what keeps the big-integer Sturm chains tractable.
"""
import os

from tpkit import _pykernels

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int

_backend = _pykernels
if not os.environ.get("TPKIT_PURE_PYTHON"):
    try:
        from tpkit import _ckernels as _backend
    except ImportError:
        _backend = _pykernels

IMPLEMENTATION = _backend.IMPLEMENTATION


def backend(name=None):
    """Return the kernel module called ``name`` ("cython" or "python"), or the active one."""
    if name is None:
        return _backend
    if name == "python":
        return _pykernels
    if name == "cython":
        from tpkit import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


def bareiss_det(matrix):
    return int(_backend.bareiss_det([[_mpz(x) for x in row] for row in matrix]))


def scan_toeplitz(coeffs, max_order, window, stop_first=True):
    first, minima, evaluated, pruned = _backend.scan_toeplitz(
        [_mpz(c) for c in coeffs], max_order, window, stop_first
    )
    if first is not None:
        order, rows, cols, value = first
        first = (order, tuple(rows), tuple(cols), int(value))
    minima = [None if m is None else int(m) for m in minima]
    return first, minima, evaluated, pruned


def sturm_chain(p):
    """Primitive Sturm chain; coefficients stay ``mpz`` (they can be huge)."""
    return _backend.sturm_chain([_mpz(c) for c in p])
