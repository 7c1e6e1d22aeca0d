"""Exact rational helpers shared by every module.

Rationals are :class:`fractions.Fraction` instances; on the wire they are
strings such as ``"3/4"`` or ``"-2"``.
"""
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = ["Fraction", "as_rational", "format_rational", "common_denominator", "integerize"]


def as_rational(value):
    """Coerce ``value`` to a Fraction without ever going through a float.

    Accepts Fractions, ints and strings (``"p/q"``, integers, or finite
    decimal literals like ``"3.503"``).  Floats are rejected because they
    would silently import rounding error into exact computations.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, _RationalABC):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def common_denominator(values):
    from math import lcm

    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def integerize(values):
    """Return ``(ints, d)`` with ``ints[k] == values[k] * d`` and ``d > 0`` minimal."""
    d = common_denominator(values)
    return [v.numerator * (d // v.denominator) for v in map(Fraction, values)], d
