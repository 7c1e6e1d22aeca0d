"""Sequence specifications and exact materialization.

A :class:`SequenceSpec` is a small declarative tree (explicit list, quotient
generated, rational generating function, finite ASWE product, partial theta,
exponential, geometric, and the Hadamard / remainder / derivative operators).
:func:`materialize` turns it into a :class:`CoefficientSequence`, an exact
prefix ``a_0 .. a_N`` of Fractions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Union

from tpkit.rational import as_rational, format_rational

__all__ = [
    "Explicit",
    "FromQuotients",
    "RationalGF",
    "AsweFinite",
    "PartialTheta",
    "Exponential",
    "Geometric",
    "Hadamard",
    "Remainder",
    "Derivative",
    "SequenceSpec",
    "CoefficientSequence",
    "materialize",
    "hadamard",
    "remainder",
    "derivative_weights",
    "normalize",
    "ones",
    "spec_from_json",
    "spec_to_json",
]


def _fractions(values):
    return tuple(as_rational(v) for v in values)


@dataclass(frozen=True)
class Explicit:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _fractions(self.coeffs))

    def _coeffs(self, horizon):
        c = list(self.coeffs[: horizon + 1])
        return c + [Fraction(0)] * (horizon + 1 - len(c))


@dataclass(frozen=True)
class FromQuotients:
    """Sequence generated from second quotients ``q = (q_2, ..., q_n)``."""

    q: tuple
    a0: Fraction = Fraction(1)
    a1: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "q", _fractions(self.q))
        object.__setattr__(self, "a0", as_rational(self.a0))
        object.__setattr__(self, "a1", as_rational(self.a1))
        if self.a0 <= 0 or self.a1 <= 0:
            raise ValueError("FromQuotients needs a0 > 0 and a1 > 0")
        for j, qj in enumerate(self.q, start=2):
            if qj <= 0:
                raise ValueError(f"second quotient q_{j} = {qj} is not positive")

    @property
    def max_index(self):
        return len(self.q) + 1

    def _coeffs(self, horizon):
        if horizon > self.max_index:
            raise ValueError(f"quotients only determine a_0..a_{self.max_index}, horizon {horizon} requested")
        a = [self.a0, self.a1][: horizon + 1]
        for n in range(2, horizon + 1):
            a.append(a[n - 1] ** 2 / (a[n - 2] * self.q[n - 2]))
        return a


@dataclass(frozen=True)
class RationalGF:
    """``P(z) / (1 - beta z)^pole_order``."""

    numerator: tuple
    beta: Fraction
    pole_order: int

    def __post_init__(self):
        object.__setattr__(self, "numerator", _fractions(self.numerator))
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.beta <= 0:
            raise ValueError("RationalGF needs beta > 0")
        if int(self.pole_order) != self.pole_order or self.pole_order < 1:
            raise ValueError("pole_order must be a positive integer")

    def _coeffs(self, horizon):
        m, beta = self.pole_order, self.beta
        pole = [comb(k + m - 1, m - 1) * beta**k for k in range(horizon + 1)]
        return _mul_trunc(list(self.numerator), pole, horizon)


@dataclass(frozen=True)
class AsweFinite:
    """``c z^shift e^(gamma z) prod(1 + alpha_k z) / prod(1 - beta_k z)`` with finite factor lists."""

    c: Fraction
    shift: int = 0
    alphas: tuple = ()
    betas: tuple = ()
    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))
        object.__setattr__(self, "alphas", _fractions(self.alphas))
        object.__setattr__(self, "betas", _fractions(self.betas))
        object.__setattr__(self, "gamma", as_rational(self.gamma))
        if self.c < 0 or self.gamma < 0:
            raise ValueError("AsweFinite needs c >= 0 and gamma >= 0")
        if self.shift < 0:
            raise ValueError("shift must be nonnegative")
        if any(x < 0 for x in self.alphas + self.betas):
            raise ValueError("alphas and betas must be nonnegative")

    def _coeffs(self, horizon):
        poly = [Fraction(0)] * self.shift + [self.c]
        for alpha in self.alphas:
            poly = _mul_trunc(poly, [Fraction(1), alpha], horizon)
        series = poly[: horizon + 1] + [Fraction(0)] * (horizon + 1 - len(poly))
        if self.gamma:
            expo = [self.gamma**k / factorial(k) for k in range(horizon + 1)]
            series = _mul_trunc(series, expo, horizon)
        for beta in self.betas:
            # divide by (1 - beta z):  b_k = s_k + beta * b_{k-1}
            for k in range(1, horizon + 1):
                series[k] += beta * series[k - 1]
        return series


@dataclass(frozen=True)
class PartialTheta:
    """Coefficients ``1 / (a^2)^(k(k-1)/2)``; only ``a^2`` is stored."""

    a_squared: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a_squared", as_rational(self.a_squared))
        if self.a_squared <= 1:
            raise ValueError("partial theta needs a^2 > 1")

    def _coeffs(self, horizon):
        return [1 / self.a_squared ** (k * (k - 1) // 2) for k in range(horizon + 1)]


@dataclass(frozen=True)
class Exponential:
    def _coeffs(self, horizon):
        return [Fraction(1, factorial(k)) for k in range(horizon + 1)]


@dataclass(frozen=True)
class Geometric:
    c: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.c <= 0 or self.beta <= 0:
            raise ValueError("Geometric needs c > 0 and beta > 0")

    def _coeffs(self, horizon):
        return [self.c * self.beta**k for k in range(horizon + 1)]


@dataclass(frozen=True)
class Hadamard:
    left: "SequenceSpec"
    right: "SequenceSpec"

    def _coeffs(self, horizon):
        return [x * y for x, y in zip(self.left._coeffs(horizon), self.right._coeffs(horizon))]


@dataclass(frozen=True)
class Remainder:
    inner: "SequenceSpec"
    l: int

    def __post_init__(self):
        if self.l < 0:
            raise ValueError("remainder index must be nonnegative")

    def _coeffs(self, horizon):
        if self.l > horizon:
            raise ValueError(f"remainder index {self.l} exceeds horizon {horizon}")
        c = self.inner._coeffs(horizon)
        return [Fraction(0)] * self.l + c[self.l :]


@dataclass(frozen=True)
class Derivative:
    """Coefficients ``k a_k`` (generating function ``z f'(z)``)."""

    inner: "SequenceSpec"

    def _coeffs(self, horizon):
        return [k * a for k, a in enumerate(self.inner._coeffs(horizon))]


SequenceSpec = Union[
    Explicit, FromQuotients, RationalGF, AsweFinite, PartialTheta, Exponential, Geometric, Hadamard, Remainder, Derivative
]


def _mul_trunc(a, b, horizon):
    out = [Fraction(0)] * (horizon + 1)
    for i, x in enumerate(a[: horizon + 1]):
        if x:
            for j, y in enumerate(b[: horizon + 1 - i]):
                out[i + j] += x * y
    return out


@dataclass(frozen=True)
class CoefficientSequence:
    """Exact prefix ``a_0 .. a_N``; indices below zero read as 0."""

    coeffs: tuple
    source: object = field(default=None, compare=False)
    exact: bool = True

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a sequence needs at least a_0")

    @property
    def horizon(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def at(self, k):
        if k < 0:
            return Fraction(0)
        if k > self.horizon:
            raise IndexError(f"index {k} beyond materialized horizon {self.horizon}")
        return self.coeffs[k]

    def to_json(self):
        return [format_rational(c) for c in self.coeffs]


def materialize(spec, horizon):
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    return CoefficientSequence(tuple(spec._coeffs(horizon)), source=spec)


def ones(horizon):
    return CoefficientSequence((Fraction(1),) * (horizon + 1), source=Geometric(1, 1))


def hadamard(a, b):
    if a.horizon != b.horizon:
        raise ValueError(f"horizon mismatch: {a.horizon} vs {b.horizon}")
    return CoefficientSequence(tuple(x * y for x, y in zip(a, b)))


def remainder(a, l):
    if l < 0 or l > a.horizon:
        raise ValueError(f"remainder index {l} outside 0..{a.horizon}")
    return CoefficientSequence((Fraction(0),) * l + a.coeffs[l:])


def derivative_weights(a):
    return CoefficientSequence(tuple(k * c for k, c in enumerate(a)))


def normalize(a):
    """Rescale to ``a_0 = a_1 = 1`` via ``g(z) = f(a_0 z / a_1) / a_0``; second quotients are unchanged."""
    if a.horizon < 1:
        raise ValueError("normalization needs a_0 and a_1")
    a0, a1 = a[0], a[1]
    if a0 <= 0 or a1 <= 0:
        raise ValueError("normalization needs a_0 > 0 and a_1 > 0")
    return CoefficientSequence(tuple(c * a0 ** (k - 1) / a1**k for k, c in enumerate(a)))


# -- JSON ---------------------------------------------------------------------

def _rat_list(values):
    return [format_rational(v) for v in values]


def spec_to_json(spec):
    if isinstance(spec, Explicit):
        return {"type": "explicit", "coeffs": _rat_list(spec.coeffs)}
    if isinstance(spec, FromQuotients):
        return {"type": "from_quotients", "q": _rat_list(spec.q), "a0": format_rational(spec.a0), "a1": format_rational(spec.a1)}
    if isinstance(spec, RationalGF):
        return {"type": "rational_gf", "numerator": _rat_list(spec.numerator), "beta": format_rational(spec.beta), "pole_order": spec.pole_order}
    if isinstance(spec, AsweFinite):
        return {
            "type": "aswe_finite",
            "c": format_rational(spec.c),
            "shift": spec.shift,
            "alphas": _rat_list(spec.alphas),
            "betas": _rat_list(spec.betas),
            "gamma": format_rational(spec.gamma),
        }
    if isinstance(spec, PartialTheta):
        return {"type": "partial_theta", "a_squared": format_rational(spec.a_squared)}
    if isinstance(spec, Exponential):
        return {"type": "exponential"}
    if isinstance(spec, Geometric):
        return {"type": "geometric", "c": format_rational(spec.c), "beta": format_rational(spec.beta)}
    if isinstance(spec, Hadamard):
        return {"type": "hadamard", "left": spec_to_json(spec.left), "right": spec_to_json(spec.right)}
    if isinstance(spec, Remainder):
        return {"type": "remainder", "inner": spec_to_json(spec.inner), "l": spec.l}
    if isinstance(spec, Derivative):
        return {"type": "derivative", "inner": spec_to_json(spec.inner)}
    raise TypeError(f"not a sequence spec: {spec!r}")


def _nonneg_int(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{name} must be an integer")
    return value


def spec_from_json(obj):
    """Parse the JSON encoding (dict or JSON text) into a spec."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError("a sequence spec must be an object with a 'type' field")
    kind = obj["type"]
    try:
        if kind == "explicit":
            return Explicit(tuple(obj["coeffs"]))
        if kind == "from_quotients":
            return FromQuotients(tuple(obj["q"]), obj.get("a0", "1"), obj.get("a1", "1"))
        if kind == "rational_gf":
            return RationalGF(tuple(obj["numerator"]), obj["beta"], _nonneg_int(obj["pole_order"], "pole_order"))
        if kind == "aswe_finite":
            return AsweFinite(
                obj.get("c", "1"),
                _nonneg_int(obj.get("shift", 0), "shift"),
                tuple(obj.get("alphas", ())),
                tuple(obj.get("betas", ())),
                obj.get("gamma", "0"),
            )
        if kind == "partial_theta":
            return PartialTheta(obj["a_squared"])
        if kind == "exponential":
            return Exponential()
        if kind == "geometric":
            return Geometric(obj["c"], obj["beta"])
        if kind == "hadamard":
            return Hadamard(spec_from_json(obj["left"]), spec_from_json(obj["right"]))
        if kind == "remainder":
            return Remainder(spec_from_json(obj["inner"]), _nonneg_int(obj["l"], "l"))
        if kind == "derivative":
            return Derivative(spec_from_json(obj["inner"]))
    except KeyError as exc:
        raise ValueError(f"{kind} spec is missing field {exc.args[0]!r}") from exc
    except TypeError as exc:
        raise ValueError(f"malformed {kind} spec: {exc}") from exc
    raise ValueError(f"unknown sequence type {kind!r}")
