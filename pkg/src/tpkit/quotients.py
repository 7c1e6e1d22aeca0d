"""Second quotients and the necessary conditions built from them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from tpkit.rational import as_rational, format_rational
from tpkit.realroots import Polynomial, is_real_rooted_nonpositive
from tpkit.seqcore import materialize

__all__ = [
    "SecondQuotients",
    "NecessaryReport",
    "DReport",
    "Th1Audit",
    "SectionReport",
    "second_quotients",
    "hutchinson_holds",
    "hutchinson_sections",
    "lemma1_chain",
    "d_inequalities",
    "th1_audit",
]


@dataclass(frozen=True)
class SecondQuotients:
    """``q[0]`` is q_2; use :meth:`at` to index by n."""

    q: tuple

    def __post_init__(self):
        q = tuple(as_rational(x) for x in self.q)
        object.__setattr__(self, "q", q)
        if any(x <= 0 for x in q):
            raise ValueError("second quotients must be positive")

    @classmethod
    def constant(cls, value, n):
        """q_2 = ... = q_n = value."""
        return cls((as_rational(value),) * max(n - 1, 0))

    @property
    def n(self):
        """Largest available index."""
        return len(self.q) + 1

    def at(self, k):
        if k == 1:
            return Fraction(1)  # q_1 = 1 convention
        if not 2 <= k <= self.n:
            raise IndexError(f"q_{k} not available (have q_2..q_{self.n})")
        return self.q[k - 2]

    def to_json(self):
        return {"q": [format_rational(x) for x in self.q], "first_index": 2}


def second_quotients(seq, n_max):
    """``q_n = a_{n-1}^2 / (a_{n-2} a_n)`` for ``n = 2..n_max``."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    if n_max > seq.horizon:
        raise ValueError(f"n_max {n_max} exceeds horizon {seq.horizon}")
    a = seq.coeffs
    for k in range(n_max + 1):
        if a[k] <= 0:
            raise ValueError(f"coefficient a_{k} = {format_rational(a[k])} is not positive")
    return SecondQuotients(tuple(a[n - 1] ** 2 / (a[n - 2] * a[n]) for n in range(2, n_max + 1)))


def hutchinson_holds(q):
    return all(x >= 4 for x in q.q)


@dataclass(frozen=True)
class SectionReport:
    degree: int
    sections_checked: int
    failures: tuple  # (i, j) ranges whose section is not nonpositive-rooted

    @property
    def ok(self):
        return not self.failures


def hutchinson_sections(coeffs, degree=None):
    """Check every section ``sum_{k=i}^{j} a_k z^{k-i}`` (0 <= i < j <= degree) for real nonpositive zeros.

    Sections with ``i = 0`` are the truncations.
    """
    coeffs = [as_rational(c) for c in coeffs]
    degree = len(coeffs) - 1 if degree is None else degree
    failures = []
    checked = 0
    for i in range(degree):
        for j in range(i + 1, degree + 1):
            checked += 1
            if not is_real_rooted_nonpositive(Polynomial(coeffs[i : j + 1])).nonpositive_rooted:
                failures.append((i, j))
    return SectionReport(degree, checked, tuple(failures))


@dataclass(frozen=True)
class NecessaryReport:
    values: tuple  # v_l for l = 0, 1, ...
    first_violation: Optional[int]
    q2_at_least_2: bool

    def __post_init__(self):
        if (self.first_violation is None) != all(v >= 0 for v in self.values):
            raise ValueError("first_violation must be set iff some value is negative")

    def to_json(self):
        return {
            "values": [format_rational(v) for v in self.values],
            "first_violation": self.first_violation,
            "q2_at_least_2": self.q2_at_least_2,
        }


def lemma1_chain(q):
    """``v_l = q_{l+3} (q_{l+2} - 4) + 3`` for every l with q_{l+3} available.

    Each ``v_l >= 0`` is necessary for the l-th shifted remainder to have
    only real nonpositive zeros; ``v_0`` involves q_2 and q_3.
    """
    if len(q.q) < 2:
        raise ValueError("need at least q_2 and q_3")
    values = tuple(q.at(l + 3) * (q.at(l + 2) - 4) + 3 for l in range(q.n - 2))
    first = next((l for l, v in enumerate(values) if v < 0), None)
    return NecessaryReport(values, first, q.at(2) >= 2)


@dataclass(frozen=True)
class DReport:
    delta2: tuple  # (k, 1 - 1/q_k) for k = 2..n
    d3: Optional[Fraction]
    d4: Optional[Fraction]
    delta3: tuple  # (k, Delta_3^k) for k = 2..n-1
    q1_convention_used: bool

    @property
    def flags(self):
        return {
            "delta2": all(v >= 0 for _, v in self.delta2),
            "d3": None if self.d3 is None else self.d3 >= 0,
            "d4": None if self.d4 is None else self.d4 >= 0,
            "delta3": all(v >= 0 for _, v in self.delta3),
        }

    @property
    def all_nonnegative(self):
        return all(v is not False for v in self.flags.values())

    def to_json(self):
        fmt = lambda v: None if v is None else format_rational(v)
        return {
            "delta2": {str(k): fmt(v) for k, v in self.delta2},
            "d3": fmt(self.d3),
            "d4": fmt(self.d4),
            "delta3": {str(k): fmt(v) for k, v in self.delta3},
            "flags": self.flags,
            "q1_convention_used": self.q1_convention_used,
        }


def delta3(q, k):
    qm, qk, qp = q.at(k - 1), q.at(k), q.at(k + 1)
    return 1 - 2 / qk + (1 / qk**2) * (1 / qm + 1 / qp) - 1 / (qm * qk**2 * qp)


def d_inequalities(q):
    """Exact values of the principal-minor expressions Delta_2^k, D_3, D_4, Delta_3^k.

    Delta_3^2 reaches q_1, which is taken to be 1 (reported via
    ``q1_convention_used``).
    """
    if len(q.q) < 2:
        raise ValueError("need at least q_2 and q_3")
    q2, q3 = q.at(2), q.at(3)
    d3 = 1 - 2 / q2 + 1 / (q2**2 * q3)
    d4 = None
    if q.n >= 4:
        q4 = q.at(4)
        d4 = 1 - 3 / q2 + 2 / (q2**2 * q3) + 1 / q2**2 - 1 / (q2**3 * q3**2 * q4)
    return DReport(
        delta2=tuple((k, 1 - 1 / q.at(k)) for k in range(2, q.n + 1)),
        d3=d3,
        d4=d4,
        delta3=tuple((k, delta3(q, k)) for k in range(2, q.n)),
        q1_convention_used=True,
    )


@dataclass(frozen=True)
class Th1Audit:
    trunc_degree: int
    l_max: int
    n_max: int
    remainder_ok: tuple  # (l, nonpositive_rooted) for l = 0..l_max
    failing: tuple  # every l whose truncation failed
    min_q: Fraction
    min_q_index: int
    min_q_above_3: bool

    @property
    def first_failure(self):
        return self.failing[0] if self.failing else None

    @property
    def vacuous(self):
        return bool(self.failing)

    @property
    def label(self):
        if self.vacuous:
            return f"vacuous: remainder truncation l={self.first_failure} not real-rooted at degree {self.trunc_degree}"
        if self.min_q_above_3:
            return f"supported at degree {self.trunc_degree}"
        return f"contradicted at degree {self.trunc_degree}"

    def to_json(self):
        return {
            "trunc_degree": self.trunc_degree,
            "l_max": self.l_max,
            "n_max": self.n_max,
            "remainder_ok": {str(l): ok for l, ok in self.remainder_ok},
            "failing": list(self.failing),
            "first_failure": self.first_failure,
            "min_q": format_rational(self.min_q),
            "min_q_index": self.min_q_index,
            "min_q_above_3": self.min_q_above_3,
            "label": self.label,
        }


def th1_audit(spec, n_max, l_max, trunc_degree=24):
    """Finite-degree evidence for the q_n > 3 necessary condition.

    For each l the shifted remainder ``R_l / z^l`` is truncated at
    ``trunc_degree`` and tested for real nonpositive zeros.  Truncations
    only ever support (never prove) membership of the full series.
    """
    if n_max < 2 or l_max < 0 or trunc_degree < 1:
        raise ValueError("need n_max >= 2, l_max >= 0, trunc_degree >= 1")
    horizon = max(n_max, l_max + trunc_degree)
    seq = materialize(spec, horizon)
    q = second_quotients(seq, n_max)
    a = seq.coeffs
    results = []
    for l in range(l_max + 1):
        p = Polynomial(a[l : l + trunc_degree + 1])
        results.append((l, is_real_rooted_nonpositive(p).nonpositive_rooted))
    idx = min(range(len(q.q)), key=lambda i: (q.q[i], i))
    min_q = q.q[idx]
    return Th1Audit(
        trunc_degree=trunc_degree,
        l_max=l_max,
        n_max=n_max,
        remainder_ok=tuple(results),
        failing=tuple(l for l, ok in results if not ok),
        min_q=min_q,
        min_q_index=idx + 2,
        min_q_above_3=min_q > 3,
    )
