"""Exact minors of the Toeplitz matrix ``||a_{j-i}||`` and windowed TP_m checks.

Minors are computed by fraction-free elimination on the integerized
sequence (``a_k * D`` for a common denominator ``D``), then divided by
``D**order``.  :func:`minor_cofactor` is an independent Laplace-expansion
oracle on Fractions used to cross-check the fast path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from tpkit import kernels
from tpkit.rational import format_rational, integerize

__all__ = [
    "MinorRequest",
    "MinorCertificate",
    "TPWitness",
    "minor",
    "minor_cofactor",
    "toeplitz_submatrix",
    "check_tp_window",
    "find_negative_minor",
    "contiguous_prescreen",
]


@dataclass(frozen=True)
class MinorRequest:
    rows: tuple
    cols: tuple

    def __post_init__(self):
        rows, cols = tuple(self.rows), tuple(self.cols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        if len(rows) != len(cols):
            raise ValueError(f"non-square request: {len(rows)} rows, {len(cols)} cols")
        if not rows:
            raise ValueError("a minor needs at least one row")
        for name, idx in (("rows", rows), ("cols", cols)):
            if idx[0] < 0 or any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError(f"{name} must be strictly increasing nonnegative indices: {idx}")

    @property
    def order(self):
        return len(self.rows)


@dataclass(frozen=True)
class MinorCertificate:
    rows: tuple
    cols: tuple
    value: Fraction

    @property
    def order(self):
        return len(self.rows)

    def to_json(self):
        return {"rows": list(self.rows), "cols": list(self.cols), "value": format_rational(self.value)}


@dataclass(frozen=True)
class TPWitness:
    order_bound: object  # int, or "unbounded"
    window: int
    verdict: str  # "pass" | "fail"
    failing: Optional[MinorCertificate]
    min_value: Fraction
    minors_evaluated: int = 0

    def __post_init__(self):
        if (self.verdict == "fail") != (self.failing is not None and self.failing.value < 0):
            raise ValueError("verdict 'fail' requires a negative failing certificate")

    def to_json(self):
        return {
            "order_bound": self.order_bound,
            "window": self.window,
            "verdict": self.verdict,
            "failing": None if self.failing is None else self.failing.to_json(),
            "min_value": format_rational(self.min_value),
            "minors_evaluated": self.minors_evaluated,
        }


def _as_request(req, cols=None):
    if cols is not None:
        return MinorRequest(tuple(req), tuple(cols))
    if isinstance(req, MinorRequest):
        return req
    rows, cols = req
    return MinorRequest(tuple(rows), tuple(cols))


def _check_range(seq, req):
    top = max(req.rows[-1], req.cols[-1])
    if top > seq.horizon:
        raise IndexError(f"index {top} beyond materialized horizon {seq.horizon}")


def toeplitz_submatrix(seq, rows, cols):
    """Selected block of ``||a_{j-i}||`` as Fractions (zero where ``j < i``)."""
    return [[seq.at(c - r) for c in cols] for r in rows]


def minor(seq, req, cols=None):
    """Exact Toeplitz minor; ``req`` is a MinorRequest or ``(rows, cols)``.

    ``minor(seq, rows, cols)`` is accepted as shorthand.
    """
    req = _as_request(req, cols)
    _check_range(seq, req)
    span = max(0, req.cols[-1] - req.rows[0])
    ints, d = integerize(seq.coeffs[: span + 1])
    block = [[ints[c - r] if c >= r else 0 for c in req.cols] for r in req.rows]
    return Fraction(kernels.bareiss_det(block), d**req.order)


def _laplace(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = Fraction(0)
    for j, entry in enumerate(m[0]):
        if entry:
            sub = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * entry * _laplace(sub)
    return total


def minor_cofactor(seq, req, cols=None):
    """Naive cofactor expansion on Fractions (reference oracle, exponential cost)."""
    req = _as_request(req, cols)
    _check_range(seq, req)
    return _laplace(toeplitz_submatrix(seq, req.rows, req.cols))


def _scan(seq, max_order, window, stop_first):
    if max_order < 1:
        raise ValueError("order bound must be at least 1")
    if window < 1:
        raise ValueError("window must be positive")
    if window > seq.horizon:
        raise ValueError(f"window {window} exceeds materialized horizon {seq.horizon}")
    ints, d = integerize(seq.coeffs[: window + 1])
    first, minima, evaluated, pruned = kernels.scan_toeplitz(ints, max_order, window, stop_first)
    cert = None
    if first is not None:
        order, rows, cols, value = first
        cert = MinorCertificate(rows, cols, Fraction(value, d**order))
    values = [Fraction(m, d ** (r + 1)) for r, m in enumerate(minima) if m is not None]
    if pruned:
        values.append(Fraction(0))
    return cert, min(values), evaluated


def check_tp_window(seq, m, N):
    """Check every minor of order <= m with indices in [0, N].

    Minors are visited by increasing order, then lexicographic (rows, cols);
    the scan stops at the first negative one, so on failure ``min_value`` is
    the smallest minor seen up to that point.
    """
    cert, min_value, evaluated = _scan(seq, m, N, stop_first=True)
    verdict = "fail" if cert is not None else "pass"
    return TPWitness(m, N, verdict, cert, min_value, evaluated)


def find_negative_minor(seq, max_order, N):
    """First negative minor in the declared order, or None (which proves nothing)."""
    cert, _, _ = _scan(seq, max_order, N, stop_first=True)
    return cert


def contiguous_prescreen(seq, m, N):
    """Heuristic: first negative minor among contiguous rows/cols blocks.

    Cheap (O(m N^2) minors) and sound when it finds something, but a clean
    result never implies a pass: the Fekete criterion behind it needs
    strictly positive minors, which these sequences need not have.
    """
    if m < 1 or N > seq.horizon:
        raise ValueError("bounds outside the materialized window")
    for order in range(1, m + 1):
        for c0 in range(0, N - order + 2):
            cols = tuple(range(c0, c0 + order))
            rows = tuple(range(order))
            if cols[-1] > N:
                continue
            value = minor(seq, rows, cols)
            if value < 0:
                return MinorCertificate(rows, cols, value)
    return None
