from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import fractions, quotient_vectors
from tpkit.enclosure import Interval
from tpkit.quotients import SecondQuotients
from tpkit.realroots import sturm_count
from tpkit.seqcore import Exponential, Explicit, Geometric, PartialTheta
from tpkit.theta import (
    AlternationCertificate,
    PrecisionConfig,
    ThresholdReport,
    certificate_points,
    endpoint,
    estimate_constant,
    eval_partial_sum,
    hat_x,
    lemma_bounds_report,
    partial_sum_polynomial,
    sign_alternation_certificate,
    tail_guard,
    term_domination,
    theta_real_root_count,
    verify_th3,
    x0,
    x0_domain_ok,
    x0_residual,
)

Q4 = SecondQuotients.constant(4, 12)


def test_eval_examples():
    assert eval_partial_sum(0, F(7, 3), 4) == 1
    assert eval_partial_sum(2, 2, 4) == 0
    assert eval_partial_sum(2, 2, 4, SecondQuotients((2,))) == F(-1, 2)
    with pytest.raises(ValueError):
        eval_partial_sum(2, 2, 1)
    with pytest.raises(ValueError):
        eval_partial_sum(4, 2, 4, SecondQuotients((2, 2)))


def test_interval_evaluation_encloses_exact():
    x = F(13, 5)
    enc = eval_partial_sum(7, Interval(x - F(1, 10**9), x + F(1, 10**9)), F(18, 5), Q4)
    assert enc.contains(eval_partial_sum(7, x, F(18, 5), Q4))


def test_x0_at_four():
    enc = x0(4, 128)
    assert enc.width < F(1, 2**120)
    s3 = sympy.sqrt(3)
    assert abs(float(enc.mid) - float(16 - 8 * s3)) < 1e-12
    assert x0_residual(4, enc).contains(0)
    assert Interval(1) < enc < Interval(4)
    # x0/a^3 + a^3/x0 = a^3/2 at a = 2
    assert (enc / 8 + 8 / enc).contains(4)


def test_x0_domain():
    assert not x0_domain_ok(3)
    assert x0_domain_ok(F(33, 10))
    with pytest.raises(ValueError):
        x0(3)


def test_hat_x_examples():
    assert hat_x(3, 4) == Interval(8)
    assert hat_x(4, 4) == Interval(32)
    assert hat_x(3, 4, Q4) == Interval(64)
    with pytest.raises(ValueError):
        hat_x(2, 4)
    with pytest.raises(ValueError):
        hat_x(5, 4, SecondQuotients((4, 4)))
    assert endpoint(4, 4) == 64


def test_certificate_n6_geometric():
    c = sign_alternation_certificate(6, F(18, 5))
    assert c.verdict == "pass" and c.cross_check_root_count == 6
    assert [p.label for p in c.points] == ["unit", "x0", "hat(3)", "hat(4)", "hat(5)", "hat(6)", "endpoint"]
    assert [p.expected_sign for p in c.points] == [1, -1, 1, -1, 1, -1, 1]


def test_certificate_hutchinson_regime():
    c = sign_alternation_certificate(6, 4, Q4)
    assert c.verdict == "pass" and c.cross_check_consistent


def test_certificate_below_threshold():
    c = sign_alternation_certificate(6, 3)
    assert c.verdict in ("fail", "inconclusive")
    # a^2 = 3 < q_inf: some truncation with n <= 40 loses real zeros
    assert any(sturm_count(partial_sum_polynomial(n, 3), 0, None) < n for n in range(4, 41))


def test_certificate_errors():
    with pytest.raises(ValueError):
        sign_alternation_certificate(3, 4)
    with pytest.raises(ValueError):
        PrecisionConfig(bits=32)
    # tiny quotients push hat_3 below x0
    with pytest.raises(ValueError):
        sign_alternation_certificate(5, F(18, 5), SecondQuotients((1, F(1, 100), 1, 1)))
    with pytest.raises(ValueError):
        AlternationCertificate(4, F(4), Q4, (), "pass")


def test_verify_th3_examples():
    r = verify_th3(Geometric(1, 1), F(18, 5), 12)
    assert r.verdict == "pass" and r.cross_checks_consistent and not r.normalized
    r = verify_th3(Exponential(), F(3503, 1000), 12)
    assert r.verdict == "pass"
    assert r.hadamard_coeffs[2] == 1 / (F(3503, 1000) * 2)
    with pytest.raises(ValueError):
        verify_th3(Explicit((1, 1, 0, 1, 1, 1)), 4, 5)


def test_verify_th3_normalizes():
    r = verify_th3(Geometric(3, 2), F(18, 5), 6)
    assert r.normalized and r.verdict == "pass"


def test_lemma_bounds_examples():
    r = lemma_bounds_report(F(18, 5), (1, 1, 1), "m")
    assert r.entries["A"].value == Interval(F(80, 81))
    assert abs(float(r.entries["L6"].value.mid) - 0.0877) < 1e-3 and r.entries["L6"].sign == 1
    r = lemma_bounds_report(4, (1, 1, 1), q_head=(1, 1, 1))
    assert r.entries["e1"].sign == 1 and r.entries["e2"].sign == 1
    assert r.entries["T4"].value.contains(0)
    r = lemma_bounds_report(3, (1, 1, 1))
    assert not r.entries["e1"].in_domain


@given(quotient_vectors(3, lo=1, hi=4))
def test_t4_decomposition_nonnegative(qh):
    r = lemma_bounds_report(F(7, 2), (1, 1, 1), q_head=qh)
    assert r.entries["T4_minus_decomposition"].value.hi >= 0


def test_a0_squared_estimate():
    r = estimate_constant("a0_squared", F(1, 10**6))
    assert abs(r.estimate - F("3.41089186")) < F(1, 10**4)
    assert r.residual_contains_zero


def test_ll13_estimate():
    r = estimate_constant("ll13_root", F(1, 10**5))
    assert abs(r.estimate - F("1.87152")) < F(1, 10**4)
    lo, hi = (F(x) for x in r.extra["square_bracket"])
    assert F("3.5025") <= lo <= hi <= F("3.5027")
    assert r.residual_contains_zero


def test_estimate_errors():
    with pytest.raises(ValueError):
        estimate_constant("pi", F(1, 10))
    with pytest.raises(ValueError):
        estimate_constant("a0_squared", 0)
    with pytest.raises(ValueError):
        estimate_constant("q_infinity", F(1, 10), degree=20)
    with pytest.raises(ValueError):
        ThresholdReport("x", (F(0), F(1)), F(1, 2), F(1, 10), 0)


def test_root_count_transition():
    assert theta_real_root_count(F(33, 10), 40) == 40
    assert theta_real_root_count(F(32, 10), 40) < 40
    assert tail_guard(F(32, 10), 40)[0]


@pytest.mark.slow
def test_q_infinity_estimate():
    r = estimate_constant("q_infinity", F(1, 10**4), degree=40, rerun_degree=60)
    assert abs(r.estimate - F("3.23363666")) < F(1, 10**3)
    assert r.extra["rerun"]["difference_approx"] <= 1e-6
    assert r.tail_guard_ok


# -- properties ------------------------------------------------------------------

_A = fractions(F(33, 10), 8, max_den=20)


@given(st.integers(0, 10), fractions(0, 50), _A)
def test_unit_quotients_reduce_to_plain_sum(n, x, A):
    assert eval_partial_sum(n, x, A, SecondQuotients.constant(1, max(n, 2))) == eval_partial_sum(n, x, A)


@given(_A, st.sampled_from([64, 128]))
def test_x0_residual_and_range(A, bits):
    enc = x0(A, bits)
    assert x0_residual(A, enc).contains(0)
    assert Interval(1) < enc < Interval(A)


@given(st.integers(4, 12), _A, quotient_vectors(11, lo=1, hi=6))
def test_certificate_points_strictly_increasing(n, A, q):
    pts = certificate_points(n, A, SecondQuotients(q))
    assert all(u.value < v.value for u, v in zip(pts, pts[1:]))


@given(st.integers(4, 10), _A, quotient_vectors(9, lo=1, hi=6))
def test_term_domination_never_violated(n, A, q):
    qs = SecondQuotients(q)
    for p in certificate_points(n, A, qs):
        _, violations, _ = term_domination(p.value, n, A, qs)
        assert violations == 0


@given(st.integers(4, 9), fractions(F(7, 2), 6, max_den=10), quotient_vectors(8, lo=1, hi=5))
def test_certificate_soundness(n, A, q):
    c = sign_alternation_certificate(n, A, SecondQuotients(q))
    if c.verdict == "pass":
        assert c.cross_check_root_count == n
