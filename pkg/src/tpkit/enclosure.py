"""Rigorous enclosures: closed intervals with exact rational endpoints.

Arithmetic on endpoints is exact, so the only widening comes from square
roots (integer ``isqrt`` at a chosen bit precision) and from optional
outward rounding that keeps denominators from growing without bound.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

from tpkit.rational import as_rational, format_rational

__all__ = ["Interval", "sqrt_bounds", "isqrt_interval", "round_down", "round_up"]


def round_down(x, bits):
    """Largest dyadic ``k / 2^s`` <= x with about ``bits`` significant bits."""
    x = Fraction(x)
    if x == 0:
        return x
    s = bits - (abs(x.numerator).bit_length() - x.denominator.bit_length())
    if s < 0:
        scale = 1 << -s
        return Fraction((x.numerator // (x.denominator * scale)) * scale)
    return Fraction((x.numerator << s) // x.denominator, 1 << s)


def round_up(x, bits):
    return -round_down(-Fraction(x), bits)


def sqrt_bounds(x, bits):
    """``(lo, hi)`` with ``lo <= sqrt(x) <= hi`` and ``hi - lo <= 2^-s`` for ``s >= bits``; exact squares give ``lo == hi``."""
    x = as_rational(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    if x == 0:
        return Fraction(0), Fraction(0)
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        r = Fraction(rp, rq)
        return r, r
    # relative precision: shift so that the scaled root carries ~bits bits
    s = max(bits, bits + (q.bit_length() - p.bit_length()) // 2 + 1)
    t = isqrt((p << (2 * s)) // q)
    return Fraction(t, 1 << s), Fraction(t + 1, 1 << s)


class Interval:
    """Closed interval ``[lo, hi]`` of rationals."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = as_rational(lo)
        hi = lo if hi is None else as_rational(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo, self.hi = lo, hi

    @staticmethod
    def coerce(x):
        return x if isinstance(x, Interval) else Interval(x)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def is_exact(self):
        return self.lo == self.hi

    def contains(self, x):
        return self.lo <= x <= self.hi

    def sign(self):
        """+1 or -1 when the interval excludes 0, else 0 (undecided)."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def __repr__(self):
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __add__(self, other):
        o = Interval.coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-Interval.coerce(other))

    def __rsub__(self, other):
        return Interval.coerce(other) - self

    def __mul__(self, other):
        o = Interval.coerce(other)
        if self.lo >= 0 and o.lo >= 0:
            return Interval(self.lo * o.lo, self.hi * o.hi)
        c = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(c), max(c))

    __rmul__ = __mul__

    def reciprocal(self):
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains 0")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * Interval.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return Interval.coerce(other) * self.reciprocal()

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        if k == 0:
            return Interval(1)
        if self.lo >= 0:
            return Interval(self.lo**k, self.hi**k)
        if self.hi <= 0:
            a, b = (-self.hi) ** k, (-self.lo) ** k
            return Interval(a, b) if k % 2 == 0 else Interval(-b, -a)
        if k % 2:
            return Interval(self.lo**k, self.hi**k)
        return Interval(0, max(self.lo**k, self.hi**k))

    def sqrt(self, bits):
        if self.lo < 0:
            raise ValueError("square root of an interval reaching below 0")
        return Interval(sqrt_bounds(self.lo, bits)[0], sqrt_bounds(self.hi, bits)[1])

    def rounded(self, bits):
        """Outward rounding to dyadic endpoints (keeps the enclosure valid)."""
        return Interval(round_down(self.lo, bits), round_up(self.hi, bits))

    def __lt__(self, other):
        """Certainly less: every point of self is below every point of other."""
        return self.hi < Interval.coerce(other).lo

    def __gt__(self, other):
        return self.lo > Interval.coerce(other).hi

    def to_json(self):
        return [format_rational(self.lo), format_rational(self.hi)]

    def to_float_json(self):
        return [float(self.lo), float(self.hi)]


def isqrt_interval(x, bits):
    """Enclosure of ``sqrt(x)`` for a rational or interval ``x``."""
    if isinstance(x, Interval):
        return x.sqrt(bits)
    return Interval(*sqrt_bounds(x, bits))
