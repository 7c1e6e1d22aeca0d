"""Partial theta sums, the sign-alternation certificate, lemma bounds and threshold estimators.

Throughout, ``a_squared`` (written ``A`` in code) is an exact rational; the
odd powers of ``a`` and the square roots of quotients only ever appear as
:class:`~tpkit.enclosure.Interval` enclosures.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from tpkit.enclosure import Interval, isqrt_interval
from tpkit.quotients import SecondQuotients, second_quotients
from tpkit.rational import as_rational, format_rational
from tpkit.realroots import Polynomial, _SturmChain, _simplest_between, sturm_count
from tpkit.seqcore import materialize, normalize

__all__ = [
    "PrecisionConfig",
    "ThetaPoint",
    "AlternationCertificate",
    "Th3Report",
    "BoundEntry",
    "LemmaBoundsReport",
    "ThresholdReport",
    "theta_coefficients",
    "partial_sum_polynomial",
    "eval_partial_sum",
    "x0_domain_ok",
    "x0",
    "x0_residual",
    "hat_x",
    "endpoint",
    "certificate_points",
    "term_domination",
    "sign_alternation_certificate",
    "verify_th3",
    "lemma_bounds_report",
    "theta_real_root_count",
    "tail_guard",
    "estimate_constant",
    "Q_INFINITY_REFERENCE",
    "A0_SQUARED_REFERENCE",
    "LL13_ROOT_REFERENCE",
]

Q_INFINITY_REFERENCE = Fraction("3.23363666")
A0_SQUARED_REFERENCE = Fraction("3.41089186")
LL13_ROOT_REFERENCE = Fraction("1.87152")


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision for square roots; grows by ``bits_per_degree`` per unit of n."""

    bits: int = 128
    bits_per_degree: int = 4

    def __post_init__(self):
        if self.bits < 64:
            raise ValueError("precision must be at least 64 bits")

    def bits_for(self, n):
        return self.bits + self.bits_per_degree * max(n, 0)

    def to_json(self):
        return {"bits": self.bits, "bits_per_degree": self.bits_per_degree}


def _check_a2(A):
    A = as_rational(A)
    if A <= 1:
        raise ValueError("a_squared must exceed 1")
    return A


def _ones(n):
    return SecondQuotients.constant(1, max(n, 2))


def _qprod(q, lo, hi):
    """q_lo * ... * q_hi (empty product is 1)."""
    p = Fraction(1)
    for j in range(lo, hi + 1):
        p *= q.at(j)
    return p


def theta_coefficients(n, A, q=None):
    """Magnitudes ``1 / (A^{k(k-1)/2} q_2^{k-1} ... q_k)`` for k = 0..n."""
    A = _check_a2(A)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if q is None:
        q = _ones(n)
    elif n >= 2 and q.n < n:
        raise ValueError(f"quotients only reach q_{q.n}, need q_{n}")
    out = [Fraction(1)]
    step = Fraction(1)  # A^{k-1} q_2 ... q_k, ratio between consecutive magnitudes
    for k in range(1, n + 1):
        if k >= 2:
            step *= A * q.at(k)
        out.append(out[-1] / step)
    return out


def partial_sum_polynomial(n, A, q=None):
    """``S_n^q(x)`` as a polynomial in ``x``."""
    return Polynomial([(-1) ** k * c for k, c in enumerate(theta_coefficients(n, A, q))])


def eval_partial_sum(n, x, A, q=None):
    """``sum_{k<=n} (-1)^k x^k / (a^{k(k-1)} q_2^{k-1} ... q_k)``.

    Exact Fraction for rational ``x``; for an Interval ``x`` an enclosure
    built term by term.
    """
    coeffs = theta_coefficients(n, A, q)
    if not isinstance(x, Interval):
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed([(-1) ** k * c for k, c in enumerate(coeffs)]):
            acc = acc * x + c
        return acc
    lo = hi = Fraction(0)
    for k, c in enumerate(coeffs):
        t = x**k
        if k % 2:
            lo -= c * t.hi
            hi -= c * t.lo
        else:
            lo += c * t.lo
            hi += c * t.hi
    return Interval(lo, hi)


def x0_domain_ok(A):
    """``a^2 >= 1 + sqrt(5)``, decided exactly as ``(a^2 - 1)^2 >= 5``."""
    A = as_rational(A)
    return A >= 1 and (A - 1) ** 2 >= 5


def x0(A, bits=128):
    """Smallest root of ``x/a^3 + a^3/x = a^3/2``: ``4 / (1 + sqrt(1 - 16/a^6))``."""
    A = _check_a2(A)
    if not x0_domain_ok(A):
        raise ValueError(f"a_squared = {format_rational(A)} is below 1 + sqrt(5); x0 undefined")
    root = isqrt_interval(1 - 16 / A**3, bits)
    return 4 / (1 + root)


def x0_residual(A, enc):
    """Enclosure of ``x^2 - (a^6/2) x + a^6`` over ``enc`` (contains 0 for a valid x0 enclosure)."""
    A6 = as_rational(A) ** 3
    return enc**2 - enc * (A6 / 2) + A6


def hat_x(m, A, q=None, bits=128):
    """``a^{2m-3} q_2 ... q_{m-1} sqrt(q_m)``, computed as ``A^{m-2} q_2...q_{m-1} sqrt(A q_m)``."""
    A = _check_a2(A)
    if m < 3:
        raise ValueError("hat_x needs m >= 3")
    q = _ones(m) if q is None else q
    if q.n < m:
        raise ValueError(f"quotients only reach q_{q.n}, need q_{m}")
    return isqrt_interval(A * q.at(m), bits) * (A ** (m - 2) * _qprod(q, 2, m - 1))


def endpoint(n, A, q=None):
    """``a^{2n-2} q_2 ... q_n`` (rational)."""
    A = _check_a2(A)
    q = _ones(n) if q is None else q
    return A ** (n - 1) * _qprod(q, 2, n)


@dataclass(frozen=True)
class ThetaPoint:
    role: str  # "unit" | "x0" | "hat" | "endpoint"
    m: Optional[int]
    value: Interval
    expected_sign: int
    s_value: Optional[Interval] = None

    def __post_init__(self):
        if self.role not in ("unit", "x0", "hat", "endpoint"):
            raise ValueError(f"unknown role {self.role!r}")
        if self.role == "hat" and (self.m is None or self.m < 3):
            raise ValueError("hat points carry m >= 3")

    @property
    def label(self):
        return f"hat({self.m})" if self.role == "hat" else self.role

    @property
    def observed_sign(self):
        return None if self.s_value is None else self.s_value.sign()

    @property
    def sign_ok(self):
        return self.observed_sign == self.expected_sign

    def to_json(self):
        return {
            "role": self.label,
            "value": self.value.to_json(),
            "value_approx": float(self.value.mid),
            "expected_sign": self.expected_sign,
            "s_value": None if self.s_value is None else self.s_value.to_json(),
            "observed_sign": self.observed_sign,
        }


def certificate_points(n, A, q=None, bits=128):
    """The n+1 test points 1, x0, hat_3..hat_n, endpoint with their expected signs."""
    pts = [ThetaPoint("unit", None, Interval(1), 1), ThetaPoint("x0", None, x0(A, bits), -1)]
    for m in range(3, n + 1):
        pts.append(ThetaPoint("hat", m, hat_x(m, A, q, bits), (-1) ** (m - 1)))
    pts.append(ThetaPoint("endpoint", None, Interval(endpoint(n, A, q)), (-1) ** n))
    return pts


def term_domination(x, n, A, q=None):
    """Check that term k+1 is smaller than term k wherever ``x < a^{2k} q_2 ... q_{k+1}``.

    Returns ``(checked, violations, undecided)`` counts for k = 1..n-1;
    only ``x`` values certainly below the threshold are checked.
    """
    x = Interval.coerce(x)
    q = _ones(n) if q is None else q
    mags = theta_coefficients(n, A, q)
    checked = violations = undecided = 0
    for k in range(1, n):
        if not x < A**k * _qprod(q, 2, k + 1):
            continue
        checked += 1
        small = x ** (k + 1) * mags[k + 1]
        big = x**k * mags[k]
        if small.lo >= big.hi:
            violations += 1
        elif not small < big:
            undecided += 1
    return checked, violations, undecided


@dataclass(frozen=True)
class AlternationCertificate:
    n: int
    a_squared: Fraction
    q: SecondQuotients
    points: tuple
    verdict: str  # "pass" | "fail" | "inconclusive"
    cross_check_root_count: Optional[int] = None
    reason: str = ""
    bits: int = 128
    domination: tuple = (0, 0, 0)

    def __post_init__(self):
        if self.verdict not in ("pass", "fail", "inconclusive"):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == "pass":
            pts = self.points
            if len(pts) != self.n + 1:
                raise ValueError("a passing certificate needs n + 1 points")
            if not all(u.value < v.value for u, v in zip(pts, pts[1:])):
                raise ValueError("a passing certificate needs strictly increasing points")
            if not all(p.sign_ok and p.expected_sign == (-1) ** i for i, p in enumerate(pts)):
                raise ValueError("a passing certificate needs alternating definite signs")

    @property
    def cross_check_consistent(self):
        if self.cross_check_root_count is None or self.verdict != "pass":
            return None
        return self.cross_check_root_count == self.n

    def to_json(self):
        return {
            "n": self.n,
            "a_squared": format_rational(self.a_squared),
            "q": self.q.to_json()["q"][: max(self.n - 1, 0)],
            "points": [p.to_json() for p in self.points],
            "verdict": self.verdict,
            "reason": self.reason,
            "cross_check_root_count": self.cross_check_root_count,
            "cross_check_consistent": self.cross_check_consistent,
            "precision_bits": self.bits,
            "term_domination": dict(zip(("checked", "violations", "undecided"), self.domination)),
        }


def sign_alternation_certificate(n, a_squared, q=None, prec=None, cross_check=True):
    """Prove n positive zeros of ``S_n^q`` by exhibiting n+1 alternating signs.

    Below ``a^2 = 1 + sqrt(5)`` the point x0 does not exist; the result is
    then a ``fail`` verdict (with a reason), not an exception.
    """
    if n < 4:
        raise ValueError("the certificate needs n >= 4")
    A = _check_a2(a_squared)
    q = _ones(n) if q is None else q
    if q.n < n:
        raise ValueError(f"quotients only reach q_{q.n}, need q_{n}")
    prec = prec or PrecisionConfig()
    bits = prec.bits_for(n)
    count = None
    if cross_check:
        count = sturm_count(partial_sum_polynomial(n, A, q), 0, None)

    if not x0_domain_ok(A):
        return AlternationCertificate(
            n, A, q, (), "fail", count,
            reason="a_squared below 1 + sqrt(5): the point x0 is undefined", bits=bits,
        )

    pts = certificate_points(n, A, q, bits)
    for u, v in zip(pts, pts[1:]):
        if not u.value < v.value:
            raise ValueError(f"certificate points not strictly increasing at {u.label} -> {v.label}")

    evaluated = []
    dom = [0, 0, 0]
    for p in pts:
        s = eval_partial_sum(n, p.value, A, q)
        evaluated.append(ThetaPoint(p.role, p.m, p.value, p.expected_sign, s))
        for i, c in enumerate(term_domination(p.value, n, A, q)):
            dom[i] += c

    bad = [p for p in evaluated if p.observed_sign == -p.expected_sign]
    unsure = [p for p in evaluated if p.observed_sign == 0]
    if bad:
        verdict, reason = "fail", "wrong sign at " + ", ".join(p.label for p in bad)
    elif unsure:
        verdict, reason = "inconclusive", "enclosure straddles 0 at " + ", ".join(p.label for p in unsure)
    else:
        verdict, reason = "pass", f"{n} sign changes on (0, inf) for a degree-{n} polynomial"
    return AlternationCertificate(n, A, q, tuple(evaluated), verdict, count, reason, bits, tuple(dom))


@dataclass(frozen=True)
class Th3Report:
    a_squared: Fraction
    n_min: int
    n_max: int
    normalized: bool
    certificates: tuple
    hadamard_coeffs: tuple

    @property
    def verdict(self):
        verdicts = {c.verdict for c in self.certificates}
        if "fail" in verdicts:
            return "fail"
        if "inconclusive" in verdicts:
            return "inconclusive"
        return "pass"

    @property
    def cross_checks_consistent(self):
        flags = [c.cross_check_consistent for c in self.certificates]
        return all(f is not False for f in flags)

    def to_json(self):
        return {
            "a_squared": format_rational(self.a_squared),
            "n_range": [self.n_min, self.n_max],
            "normalized": self.normalized,
            "verdict": self.verdict,
            "per_n": {str(c.n): c.verdict for c in self.certificates},
            "cross_check_root_counts": {str(c.n): c.cross_check_root_count for c in self.certificates},
            "cross_checks_consistent": self.cross_checks_consistent,
            "hadamard_coeffs": [format_rational(c) for c in self.hadamard_coeffs],
            "certificates": [c.to_json() for c in self.certificates],
        }


def verify_th3(spec, a_squared, n_max, prec=None, n_min=4, cross_check=True):
    """Run the certificate for n = n_min..n_max on the quotients of ``spec``."""
    A = _check_a2(a_squared)
    if n_max < n_min or n_min < 4:
        raise ValueError("need 4 <= n_min <= n_max")
    seq = materialize(spec, n_max)
    normalized = False
    if seq.coeffs[0] != 1 or seq.coeffs[1] != 1:
        if seq.coeffs[0] <= 0 or seq.coeffs[1] <= 0:
            raise ValueError("a_0 and a_1 must be positive")
        seq = normalize(seq)
        normalized = True
    q = second_quotients(seq, n_max)
    certs = tuple(sign_alternation_certificate(n, A, q, prec, cross_check) for n in range(n_min, n_max + 1))
    mags = theta_coefficients(n_max, A, q)
    return Th3Report(A, n_min, n_max, normalized, certs, tuple(mags))


# -- lemma bounds ----------------------------------------------------------------

@dataclass(frozen=True)
class BoundEntry:
    value: Interval
    in_domain: bool
    note: str = ""

    @property
    def sign(self):
        return self.value.sign()

    def to_json(self):
        return {
            "value": self.value.to_json(),
            "approx": float(self.value.mid),
            "sign": self.sign,
            "in_domain": self.in_domain,
            "note": self.note,
        }


@dataclass(frozen=True)
class LemmaBoundsReport:
    a_squared: Fraction
    q_triple: tuple
    m_label: Optional[str]
    entries: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "a_squared": format_rational(self.a_squared),
            "q_triple": [format_rational(x) for x in self.q_triple],
            "m_label": self.m_label,
            "bounds": {k: v.to_json() for k, v in self.entries.items()},
        }


def _b14(a):
    return 1 - 2 / a + 8 / a**6 - 16 / a**8 - 8 / a**13 + 32 / a**15 - 32 / a**17


def _c2(a):
    return 1 - 2 / a + 1 / (4 * a**2) - 1 / (16 * a**5)


def lemma_bounds_report(a_squared, q_triple, m_label=None, q_head=None, bits=128):
    """Evaluate the lemma-level lower bounds at ``a_squared`` and ``(q_{m-1}, q_m, q_{m+1})``.

    The same triple doubles as ``(q_{n-1}, q_n, .)`` for the endpoint bounds.
    ``q_head = (q_2, q_3, q_4)`` adds the four-term decomposition check at x0.
    Domain violations are flagged per entry, never raised.
    """
    A = _check_a2(a_squared)
    qm1, qm, qp1 = (as_rational(x) for x in q_triple)
    a = isqrt_interval(A, bits)
    rq = isqrt_interval(qm, bits)
    s = 1 / qp1 + 1 / qm1
    in_34 = 3 < A < 4
    low_q = 1 <= qm < 4 / A
    e = {}

    e["A"] = BoundEntry(Interval(8 * (A - 2) / A**2), in_34, "8(a^2-2)/a^4; lies in (8/9, 1) for 3 < a^2 < 4")
    e["L6"] = BoundEntry(
        1 - 2 / (a * rq) + s / (A**2 * qm) - s**2 / (a**9 * qm * rq),
        True,
        "lower bound for the normalized sign at hat_x_m",
    )
    e["b4"] = BoundEntry(1 - 2 / a + s / A**2 - s**2 / a**9, low_q and A < 4, "needs 1 <= q_m < 4/a^2")
    e["b14"] = BoundEntry(_b14(a), in_34 and low_q, "needs 3 < a^2 < 4 and 1 <= q_m < 4/a^2")
    e["L10"] = BoundEntry(
        1 - 2 / (a * rq) + 1 / (A**2 * qm * qm1) - 1 / (a**9 * qm * rq * qm1**2),
        True,
        "endpoint version with (q_{n-1}, q_n) = (q_triple[0], q_triple[1])",
    )
    e["c1"] = BoundEntry(1 - 2 / a + 1 / (A**2 * qm1) - 1 / (a**9 * qm1**2), low_q, "needs 1 <= q_n < 4/a^2")
    e["c2"] = BoundEntry(_c2(a), qm1 < 4 / A, "needs q_{n-1} < 4/a^2; positive for a >= 1.87152")

    if x0_domain_ok(A):
        x = x0(A, bits)
        A5 = A**5
        e1 = x / A**2 - 2 * x**2 / A5
        e2 = 1 - 2 * x / A**2 + 2 * x**2 / A5
        e["e1"] = BoundEntry(e1, True, "x0/a^4 - 2 x0^2/a^10")
        e["e2"] = BoundEntry(e2, True, "1 - 2 x0/a^4 + 2 x0^2/a^10")
        if q_head is not None:
            q2, q3, q4 = (as_rational(v) for v in q_head)
            d2 = 1 - 1 / q2
            d3 = 1 - 2 / q2 + 1 / (q2**2 * q3)
            d4 = 1 - 3 / q2 + 2 / (q2**2 * q3) + 1 / q2**2 - 1 / (q2**3 * q3**2 * q4)
            t4 = d2 - (x / A**2) * (1 - 1 / (q2**2 * q3)) + (x**2 / A5) * (1 - 1 / (q2**3 * q3**2 * q4))
            rhs = (x**2 / A5) * d4 + e1 * d3 + e2 * d2
            e["T4"] = BoundEntry(t4, True, "a^2/x0^2 (S_4 - S_4^q) at x0")
            e["T4_minus_decomposition"] = BoundEntry(t4 - rhs, True, "T4 minus its D4/D3/Delta2 decomposition; >= 0 expected")
    else:
        e["e1"] = e["e2"] = BoundEntry(Interval(0), False, "x0 undefined below 1 + sqrt(5)")
    return LemmaBoundsReport(A, (qm1, qm, qp1), m_label, e)


# -- threshold estimation -----------------------------------------------------

def _theta_int_coeffs(A, N):
    """Integer multiple of the degree-N truncation of ``g_a(-x)``."""
    p, d = A.numerator, A.denominator
    tn = N * (N - 1) // 2
    return [(-1) ** k * d ** (k * (k - 1) // 2) * p ** (tn - k * (k - 1) // 2) for k in range(N + 1)]


def theta_real_root_count(A, N):
    """Distinct real zeros of the degree-N truncation of ``g_a(-x)``."""
    A = _check_a2(A)
    return _SturmChain(_theta_int_coeffs(A, N)).count(float("-inf"), float("inf"))


def tail_guard(A, N, prec_bits=128, span=None):
    """First omitted term vs. the largest retained term at ``x = A^j``, j = 0..span.

    ``span`` defaults to N // 2: the region holding the small zeros, whose
    collision defines the threshold.  Returns ``(ok, worst_log2_ratio)``.
    """
    A = _check_a2(A)
    span = N // 2 if span is None else span
    worst = None
    for j in range(span + 1):
        # log_A of term k at x = A^j is j k - k(k-1)/2
        top = max(j * k - k * (k - 1) // 2 for k in range(N + 1))
        omitted = j * (N + 1) - N * (N + 1) // 2
        gap = top - omitted  # term ratio is A^-gap
        worst = gap if worst is None else min(worst, gap)
    ratio = Fraction(1) / A**worst
    ok = ratio < Fraction(1, 2**prec_bits)
    log2 = -(worst * (A.numerator.bit_length() - A.denominator.bit_length()))
    return ok, log2


@dataclass(frozen=True)
class ThresholdReport:
    name: str
    bracket: tuple
    estimate: Fraction
    tolerance: Fraction
    iterations: int
    degree: Optional[int] = None
    residual: Optional[Interval] = None
    tail_guard_ok: Optional[bool] = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        lo, hi = self.bracket
        if not lo <= self.estimate <= hi:
            raise ValueError("estimate outside bracket")
        if hi - lo > 2 * self.tolerance:
            raise ValueError("bracket wider than twice the tolerance")

    @property
    def residual_contains_zero(self):
        return None if self.residual is None else self.residual.contains(0)

    def to_json(self):
        out = {
            "name": self.name,
            "bracket": [format_rational(self.bracket[0]), format_rational(self.bracket[1])],
            "bracket_approx": [float(self.bracket[0]), float(self.bracket[1])],
            "estimate": format_rational(self.estimate),
            "estimate_approx": float(self.estimate),
            "tolerance": format_rational(self.tolerance),
            "iterations": self.iterations,
        }
        if self.degree is not None:
            out["degree"] = self.degree
        if self.residual is not None:
            out["residual"] = self.residual.to_json()
            out["residual_contains_zero"] = self.residual_contains_zero
        if self.tail_guard_ok is not None:
            out["tail_guard_ok"] = self.tail_guard_ok
        out.update(self.extra)
        return out


def _margin_bracket(center, pct=5):
    return center * (100 - pct) / 100, center * (100 + pct) / 100


def _root_bisect(f, lo, hi, done):
    """Bisect on rational ``a`` for a sign change of ``f``; ``done(lo, hi)`` stops."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo, lo, 0
    if fhi == 0:
        return hi, hi, 0
    if (flo > 0) == (fhi > 0):
        raise ValueError("bracket endpoints do not straddle a root")
    it = 0
    while not done(lo, hi):
        mid = (lo + hi) / 2
        fm = f(mid)
        it += 1
        if fm == 0:
            return mid, mid, it
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi, it


def estimate_constant(name, tol, degree=40, prec_bits=128, rerun_degree=None):
    """Bisection estimate of one of the three thresholds.

    ``q_infinity`` bisects over rational ``a^2`` on real-rootedness of the
    degree-``degree`` truncation of ``g_a(-x)`` (exact Sturm counts);
    ``a0_squared`` and ``ll13_root`` bisect the closed-form bounds over
    rational ``a``.
    """
    tol = as_rational(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")

    if name == "q_infinity":
        lo, hi = _margin_bracket(Q_INFINITY_REFERENCE)
        result = _q_infinity(lo, hi, tol, degree, prec_bits)
        if rerun_degree is not None:
            again = _q_infinity(lo, hi, tol, rerun_degree, prec_bits)
            diff = abs(again.estimate - result.estimate)
            extra = dict(result.extra)
            extra["rerun"] = {
                "degree": rerun_degree,
                "bracket": [format_rational(again.bracket[0]), format_rational(again.bracket[1])],
                "estimate": format_rational(again.estimate),
                "tail_guard_ok": again.tail_guard_ok,
                "difference": format_rational(diff),
                "difference_approx": float(diff),
            }
            result = ThresholdReport(
                result.name, result.bracket, result.estimate, result.tolerance, result.iterations,
                result.degree, None, result.tail_guard_ok and again.tail_guard_ok, extra,
            )
        return result

    if name == "a0_squared":
        f, lo, hi = _b14, Fraction(18, 10), Fraction(19, 10)
        lo, hi, it = _root_bisect(f, lo, hi, lambda l, h: h * h - l * l <= 2 * tol)
        enc = f(Interval(lo, hi))
        return ThresholdReport(
            name, (lo * lo, hi * hi), (lo * lo + hi * hi) / 2, tol, it, residual=enc,
            extra={"a_bracket": [format_rational(lo), format_rational(hi)],
                   "reference": format_rational(A0_SQUARED_REFERENCE)},
        )

    if name == "ll13_root":
        f, lo, hi = _c2, Fraction(18, 10), Fraction(195, 100)
        lo, hi, it = _root_bisect(f, lo, hi, lambda l, h: h - l <= 2 * tol and h * h - l * l <= 2 * tol)
        enc = f(Interval(lo, hi))
        return ThresholdReport(
            name, (lo, hi), (lo + hi) / 2, tol, it, residual=enc,
            extra={"square_bracket": [format_rational(lo * lo), format_rational(hi * hi)],
                   "square_approx": float(((lo + hi) / 2) ** 2),
                   "reference": format_rational(LL13_ROOT_REFERENCE),
                   "theorem_constant": "3.503"},
        )

    raise ValueError(f"unknown constant {name!r}; expected q_infinity, a0_squared or ll13_root")


def _q_infinity(lo, hi, tol, N, prec_bits):
    if N < 40:
        raise ValueError("q_infinity needs truncation degree >= 40")

    def real_rooted(A):
        return theta_real_root_count(A, N) == N

    if real_rooted(lo) or not real_rooted(hi):
        raise ValueError("bracket endpoints do not straddle the real-rootedness transition")
    guard = tail_guard(lo, N, prec_bits)[0] and tail_guard(hi, N, prec_bits)[0]
    it = 0
    while hi - lo > 2 * tol:
        quarter = (hi - lo) / 4
        mid = _simplest_between(lo + quarter, hi - quarter)
        guard = guard and tail_guard(mid, N, prec_bits)[0]
        if real_rooted(mid):
            hi = mid
        else:
            lo = mid
        it += 1
    return ThresholdReport(
        "q_infinity", (lo, hi), (lo + hi) / 2, tol, it, degree=N, tail_guard_ok=guard,
        extra={"reference": format_rational(Q_INFINITY_REFERENCE)},
    )
