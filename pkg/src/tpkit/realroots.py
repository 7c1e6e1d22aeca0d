"""Exact real-root counting for rational polynomials.

Everything here is exact: Sturm chains are built on primitive integer
polynomials (see ``tpkit.kernels.sturm_chain``) and evaluated by sign only.
Multiplicities come from Yun's square-free factorization.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, inf
from typing import Optional

from tpkit import kernels
from tpkit.rational import as_rational, format_rational, integerize
from tpkit.seqcore import AsweFinite, RationalGF

__all__ = [
    "Polynomial",
    "RootReport",
    "TheoremSt1Verdict",
    "PowerSumReport",
    "sturm_count",
    "count_real_roots",
    "squarefree_factorization",
    "is_real_rooted_nonpositive",
    "isolate_real_roots",
    "derivative_numerator",
    "classify_theorem_st1",
    "finite_multiplier_check",
    "root_power_sum_identities",
]


def _sign(x):
    return (x > 0) - (x < 0)


class Polynomial:
    """Dense polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls([lead])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def derivative(self):
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lead
        for k in range(dq, -1, -1):
            f = rem[k + other.degree] / lead
            quot[k] = f
            if f:
                for i, c in enumerate(other.coeffs):
                    rem[k + i] -= f * c
        return Polynomial(quot), Polynomial(rem[: other.degree])

    def monic(self):
        return Polynomial([c / self.lead for c in self.coeffs])

    def reflect(self):
        """``p(-z)``."""
        return Polynomial([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def integer_coeffs(self):
        """Integer coefficients of a positive multiple of ``self``."""
        ints, _ = integerize(self.coeffs)
        return ints

    def to_json(self):
        return {"coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, dict):
            obj = obj["coeffs"]
        return cls(obj)


def _poly_gcd(a, b):
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


# -- Sturm machinery ----------------------------------------------------------

class _SturmChain:
    """Sturm chain of the square-free part of an integer polynomial."""

    def __init__(self, ints):
        chain = kernels.sturm_chain(ints)
        if len(chain[-1]) > 1:
            # repeated roots: restart from p / gcd(p, p') so endpoint counts stay valid
            p = Polynomial(ints)
            g = Polynomial(chain[-1])
            chain = kernels.sturm_chain(p.divmod(g)[0].integer_coeffs())
        self.chain = chain

    def _variations(self, signs):
        signs = [s for s in signs if s]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    def variations_at(self, x):
        if x == inf:
            return self._variations([_sign(q[-1]) for q in self.chain])
        if x == -inf:
            return self._variations([_sign(q[-1]) * (-1) ** (len(q) - 1) for q in self.chain])
        if x == 0:
            return self._variations([_sign(q[0]) for q in self.chain])
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        signs = []
        for q in self.chain:
            # sign of den^deg * q(num/den), all in integers
            d = len(q) - 1
            acc = 0
            for k, c in enumerate(q):
                acc += c * num**k * den ** (d - k)
            signs.append(_sign(acc))
        return self._variations(signs)

    def count(self, lo, hi):
        return self.variations_at(lo) - self.variations_at(hi)


def _bound(x, default):
    if x is None:
        return default
    if x in (inf, -inf):
        return x
    return as_rational(x)


def sturm_count(p, lo=None, hi=None):
    """Number of distinct real roots of ``p`` in ``(lo, hi]``; ``None`` means an infinite end."""
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root count")
    lo, hi = _bound(lo, -inf), _bound(hi, inf)
    if p.degree == 0 or not lo < hi:
        return 0
    return _SturmChain(p.integer_coeffs()).count(lo, hi)


def count_real_roots(p):
    """Distinct real roots of ``p`` (the fast path used by the threshold bisection)."""
    return sturm_count(p)


def squarefree_factorization(p):
    """Yun's algorithm: list of ``(factor, multiplicity)`` with monic square-free factors."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    out = []
    if p.degree <= 0:
        return out
    dp = p.derivative()
    a = _poly_gcd(p, dp)
    b = p.divmod(a)[0]
    c = dp.divmod(a)[0]
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = _poly_gcd(b, d)
        if a.degree > 0:
            out.append((a.monic(), i))
        b = b.divmod(a)[0]
        c = d.divmod(a)[0]
        d = c - b.derivative()
        i += 1
    return out


@dataclass(frozen=True)
class RootReport:
    degree: int
    real_root_count_total: int
    real_root_count_nonpositive: int
    real_root_count_positive: int
    real_rooted: bool
    nonpositive_rooted: bool
    squarefree: bool = True

    def to_json(self):
        return dict(self.__dict__)


def is_real_rooted_nonpositive(p):
    """Root census of ``p`` with multiplicity: total, in (-inf, 0], in (0, inf)."""
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.is_zero():
        raise ValueError("the zero polynomial has no root report")
    chain = kernels.sturm_chain(p.integer_coeffs()) if p.degree > 0 else [[1]]
    if len(chain[-1]) == 1:
        factors = [(p, 1)] if p.degree > 0 else []
        squarefree = True
    else:
        factors = squarefree_factorization(p)
        squarefree = False
    nonpos = pos = 0
    for f, mult in factors:
        sc = _SturmChain(f.integer_coeffs())
        nonpos += mult * sc.count(-inf, 0)
        pos += mult * sc.count(0, inf)
    total = nonpos + pos
    return RootReport(
        degree=max(p.degree, 0),
        real_root_count_total=total,
        real_root_count_nonpositive=nonpos,
        real_root_count_positive=pos,
        real_rooted=total == p.degree,
        nonpositive_rooted=nonpos == p.degree,
        squarefree=squarefree,
    )


def _cauchy_bound(p):
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def _simplest_between(lo, hi):
    """Simplest rational in the closed interval [lo, hi] (Stern-Brocot descent)."""
    from math import floor

    if lo > hi:
        lo, hi = hi, lo
    fl = floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo and hi share the integer part; recurse on reciprocals of fractional parts
    inner = _simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / inner


def isolate_real_roots(p, lo=None, hi=None, width=Fraction(1, 2**20)):
    """Isolating intervals for the distinct real roots of ``p`` in ``(lo, hi]``.

    Returns a list of ``(left, right, exact)`` with ``left < root <= right``;
    ``exact`` is the root itself when a rational root was detected (the
    simplest rational in the final interval is tried), else ``None``.
    """
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.degree <= 0:
        return []
    sq = p
    factors = squarefree_factorization(p)
    if factors:
        sq = Polynomial([1])
        for f, _ in factors:
            sq = sq * f
    chain = _SturmChain(sq.integer_coeffs())
    bound = _cauchy_bound(sq)
    lo = -bound if lo is None else max(as_rational(lo), -bound)
    hi = bound if hi is None else min(as_rational(hi), bound)
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = chain.count(a, b)
        if n == 0:
            continue
        if n == 1 and b - a <= width:
            exact = None
            if sq(b) == 0:
                exact = b
            else:
                cand = _simplest_between(a, b)
                if a < cand <= b and sq(cand) == 0:
                    exact = cand
            out.append((a, b, exact))
            continue
        mid = (a + b) / 2
        stack.append((mid, b))
        stack.append((a, mid))
    out.sort()
    return out


# -- Rational generating functions --------------------------------------------

def _gf_parts(gf):
    """(P, D) with gf = P / D as Polynomials; D has constant term 1."""
    if isinstance(gf, RationalGF):
        p = Polynomial(gf.numerator)
        d = Polynomial([1])
        for _ in range(gf.pole_order):
            d = d * Polynomial([1, -gf.beta])
        return p, d
    if isinstance(gf, AsweFinite):
        if gf.gamma:
            raise ValueError("e^(gamma z) factor: transcendental input is out of scope")
        p = Polynomial([0] * gf.shift + [gf.c])
        for alpha in gf.alphas:
            p = p * Polynomial([1, alpha])
        d = Polynomial([1])
        for beta in gf.betas:
            if beta:
                d = d * Polynomial([1, -beta])
        return p, d
    raise TypeError(f"expected RationalGF or AsweFinite, got {type(gf).__name__}")


def derivative_numerator(gf):
    """Numerator of ``B'`` over ``(1 - beta z)^(m+1)``: ``P'(z)(1 - beta z) + m beta P(z)``."""
    if isinstance(gf, Polynomial):
        return gf.derivative()
    if isinstance(gf, RationalGF):
        if gf.pole_order < 1:
            raise ValueError("pole_order must be at least 1")
        p = Polynomial(gf.numerator)
        return p.derivative() * Polynomial([1, -gf.beta]) + p * (gf.pole_order * gf.beta)
    # general P / D: numerator of (P/D)' over D^2, reduced by any common factor
    p, d = _gf_parts(gf)
    num = p.derivative() * d - p * d.derivative()
    g = _poly_gcd(num, d * d) if not num.is_zero() else Polynomial([1])
    if g.degree > 0:
        num = num.divmod(g)[0]
    return num


@dataclass(frozen=True)
class TheoremSt1Verdict:
    case: str  # "Entire-LPI" | "RationalOK" | "NotApplicable"
    reason: str
    derivative_numerator: Optional[Polynomial]
    derivative_preserved: bool
    numerator_check: Optional[bool] = None
    positive_zeros: tuple = field(default=())

    def __post_init__(self):
        if self.derivative_preserved != (self.case in ("Entire-LPI", "RationalOK")):
            raise ValueError("derivative_preserved must match the case")

    def to_json(self):
        return {
            "case": self.case,
            "reason": self.reason,
            "derivative_numerator": None if self.derivative_numerator is None else self.derivative_numerator.to_json(),
            "derivative_preserved": self.derivative_preserved,
            "numerator_check": self.numerator_check,
            "positive_zeros": [
                {"interval": [format_rational(a), format_rational(b)], "exact": None if e is None else format_rational(e)}
                for a, b, e in self.positive_zeros
            ],
        }


def _positive_zeros(q):
    if q.degree <= 0:
        return ()
    return tuple(isolate_real_roots(q, lo=0))


def classify_theorem_st1(gf):
    """Decide whether multiplying coefficients by ``k`` keeps the sequence totally positive.

    Accepts a Polynomial (entire case), a RationalGF ``P/(1 - beta z)^m``, or
    a finite AsweFinite product without exponential factor.  A verdict of
    RationalOK also re-checks that the derivative numerator has only real
    nonpositive zeros (``numerator_check``).
    """
    if isinstance(gf, Polynomial):
        if any(c < 0 for c in gf.coeffs):
            raise ValueError("input coefficients must be nonnegative")
        report = is_real_rooted_nonpositive(gf)
        q = gf.derivative()
        if report.nonpositive_rooted:
            return TheoremSt1Verdict("Entire-LPI", "polynomial with only real nonpositive zeros", q, True,
                                     numerator_check=q.is_zero() or is_real_rooted_nonpositive(q).nonpositive_rooted)
        return TheoremSt1Verdict("NotApplicable", "polynomial has zeros off (-inf, 0]: not totally positive", q, False)

    p, d = _gf_parts(gf)
    if any(c < 0 for c in p.coeffs):
        raise ValueError("input coefficients must be nonnegative")
    poles = sorted({-c for c in d.coeffs[1:2]} if isinstance(gf, RationalGF) else {b for b in gf.betas if b})
    if isinstance(gf, AsweFinite):
        if not poles:
            return classify_theorem_st1(p)
        if len(poles) == 1:
            gf = RationalGF(p.coeffs or (0,), poles[0], sum(1 for b in gf.betas if b))
        else:
            q = derivative_numerator(gf)
            return TheoremSt1Verdict(
                "NotApplicable",
                f"{len(poles)} distinct poles (1/beta for beta in {[format_rational(b) for b in poles]}); "
                "the derivative has a positive zero between them",
                q,
                False,
                positive_zeros=_positive_zeros(q),
            )

    q = derivative_numerator(gf)
    report = is_real_rooted_nonpositive(p) if not p.is_zero() else None
    if report is None or not report.nonpositive_rooted:
        return TheoremSt1Verdict("NotApplicable", "numerator P has zeros off (-inf, 0]", q, False,
                                 positive_zeros=_positive_zeros(q))
    if p.degree > gf.pole_order:
        return TheoremSt1Verdict(
            "NotApplicable",
            f"deg P = {p.degree} exceeds pole order m = {gf.pole_order}",
            q,
            False,
            positive_zeros=_positive_zeros(q),
        )
    check = is_real_rooted_nonpositive(q).nonpositive_rooted and q.degree <= gf.pole_order
    return TheoremSt1Verdict(
        "RationalOK",
        f"P/(1 - beta z)^m with deg P = {p.degree} <= m = {gf.pole_order} and P nonpositive-rooted",
        q,
        True,
        numerator_check=check,
    )


def finite_multiplier_check(gammas):
    """True iff ``sum gamma_k z^k / k!`` has only real zeros, all of one sign (0 fits either)."""
    gammas = [as_rational(g) for g in gammas]
    if not gammas:
        raise ValueError("need at least one gamma")
    p = Polynomial([g / factorial(k) for k, g in enumerate(gammas)])
    if p.is_zero():
        raise ValueError("all-zero multiplier sequence")
    rep = is_real_rooted_nonpositive(p)
    if not rep.real_rooted:
        return False
    if rep.nonpositive_rooted:
        return True
    # all roots >= 0  <=>  p(-z) has all roots <= 0
    return is_real_rooted_nonpositive(p.reflect()).nonpositive_rooted


@dataclass(frozen=True)
class PowerSumReport:
    power_sums: tuple  # sum 1/x_k^j for j = 1, 2, 3 via Newton identities
    closed_forms: tuple  # a_1/a_0, (a_1^2 - 2 a_2 a_0)/a_0^2, (3 a_3 a_0^2 - 3 a_2 a_1 a_0 + a_1^3)/a_0^3
    residues: tuple

    def to_json(self):
        return {k: [format_rational(x) for x in getattr(self, k)] for k in ("power_sums", "closed_forms", "residues")}


def root_power_sum_identities(p):
    """Check the first three inverse-root power sums against their coefficient formulas.

    With roots ``-x_k`` (``x_k > 0``), ``p(z)/p(0) = prod(1 + z/x_k)`` so the
    normalized coefficients are the elementary symmetric functions of
    ``1/x_k``; Newton's identities give the power sums.
    """
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.is_zero() or p.coeffs[0] <= 0:
        raise ValueError("need p(0) > 0")
    if not is_real_rooted_nonpositive(p).nonpositive_rooted:
        raise ValueError("polynomial is not nonpositive-rooted")
    a = list(p.coeffs) + [Fraction(0)] * 4
    a0 = a[0]
    e = [Fraction(1)] + [a[k] / a0 for k in range(1, p.degree + 1)]
    e += [Fraction(0)] * 4

    sums = []
    for j in range(1, 4):
        s = (-1) ** (j - 1) * j * e[j]
        for i in range(1, j):
            s += (-1) ** (i - 1) * e[i] * sums[j - i - 1]
        sums.append(s)
    a1, a2, a3 = a[1], a[2], a[3]
    closed = (
        a1 / a0,
        (a1**2 - 2 * a2 * a0) / a0**2,
        (3 * a3 * a0**2 - 3 * a2 * a1 * a0 + a1**3) / a0**3,
    )
    return PowerSumReport(tuple(sums), closed, tuple(s - c for s, c in zip(sums, closed)))
