import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import quotient_vectors
from tpkit.quotients import (
    NecessaryReport,
    SecondQuotients,
    d_inequalities,
    delta3,
    hutchinson_holds,
    hutchinson_sections,
    lemma1_chain,
    second_quotients,
    th1_audit,
)
from tpkit.seqcore import CoefficientSequence, Exponential, FromQuotients, PartialTheta, materialize, ones
from tpkit.toeplitz import check_tp_window, minor


def test_second_quotient_examples():
    assert second_quotients(materialize(PartialTheta(4), 8), 8).q == (4,) * 7
    assert second_quotients(materialize(Exponential(), 4), 4).q == (2, F(3, 2), F(4, 3))
    assert second_quotients(ones(6), 6).q == (1,) * 5


def test_second_quotients_errors():
    with pytest.raises(ValueError):
        second_quotients(CoefficientSequence((1, 0, 1)), 2)
    with pytest.raises(ValueError):
        second_quotients(ones(3), 1)
    with pytest.raises(ValueError):
        second_quotients(ones(3), 4)
    with pytest.raises(ValueError):
        SecondQuotients((1, 0))


def test_indexing_and_q1_convention():
    q = SecondQuotients((2, 3, 5))
    assert q.n == 4 and q.at(2) == 2 and q.at(4) == 5 and q.at(1) == 1
    with pytest.raises(IndexError):
        q.at(5)
    assert SecondQuotients.constant(4, 5).q == (4, 4, 4, 4)
    assert q.to_json() == {"q": ["2", "3", "5"], "first_index": 2}


def test_hutchinson_examples():
    assert hutchinson_holds(SecondQuotients.constant(4, 10))
    assert not hutchinson_holds(SecondQuotients((4, F(39, 10))))
    assert not hutchinson_holds(second_quotients(materialize(Exponential(), 5), 5))


def test_hutchinson_sections_detects_failure():
    assert hutchinson_sections(materialize(FromQuotients((4,) * 7), 8).coeffs).ok
    rep = hutchinson_sections(materialize(Exponential(), 4).coeffs)
    assert (0, 2) in rep.failures  # 1 + z + z^2/2
    assert rep.sections_checked == 10


def test_lemma1_exponential():
    rep = lemma1_chain(second_quotients(materialize(Exponential(), 8), 8))
    assert rep.values[:2] == (0, F(-1, 3))
    assert rep.first_violation == 1 and rep.q2_at_least_2


@pytest.mark.parametrize("c,v", [(4, 3), (3, 0)])
def test_lemma1_constant(c, v):
    rep = lemma1_chain(SecondQuotients.constant(c, 10))
    assert rep.values == (v,) * 8 and rep.first_violation is None


def test_lemma1_errors_and_invariant():
    with pytest.raises(ValueError):
        lemma1_chain(SecondQuotients((4,)))
    with pytest.raises(ValueError):
        NecessaryReport((F(-1),), None, True)


def test_d_inequality_examples():
    r = d_inequalities(SecondQuotients.constant(1, 8))
    assert r.d3 == 0 and r.d4 == 0 and all(v == 0 for _, v in r.delta3)
    assert d_inequalities(SecondQuotients.constant(4, 4)).d3 == F(33, 64)
    r = d_inequalities(second_quotients(materialize(Exponential(), 3), 3))
    assert r.d3 == F(1, 6) and r.d4 is None and r.all_nonnegative
    assert r.to_json()["flags"]["d4"] is None
    with pytest.raises(ValueError):
        d_inequalities(SecondQuotients((2,)))


def _ll4_identities(q):
    seq = materialize(FromQuotients(q), len(q) + 1)
    qs = SecondQuotients(q)
    rep = d_inequalities(qs)
    a = seq.coeffs
    assert minor(seq, (0, 1, 2), (1, 2, 3)) == rep.d3
    assert minor(seq, (0, 1, 2, 3), (1, 2, 3, 4)) == rep.d4
    for k in range(3, 9):
        want = a[k - 1] ** 2 * a[k - 2] ** 2 / a[k - 3] * delta3(qs, k) / qs.at(k - 1)
        assert minor(seq, (0, 1, 2), (k - 1, k, k + 1)) == want
    for k in range(2, 9):
        assert minor(seq, (0, 1), (k - 1, k)) == a[k - 1] ** 2 * (1 - 1 / qs.at(k))


@given(quotient_vectors(8, lo=F(1, 3), hi=9))
def test_ll4_identities_match_toeplitz_minors(q):
    _ll4_identities(q)


def test_tp3_implies_nonnegative_d_values():
    rng = random.Random(17)
    passing = 0
    for _ in range(40):
        q = tuple(F(rng.randint(10, 60), 10) for _ in range(6))
        seq = materialize(FromQuotients(q), 7)
        if check_tp_window(seq, 3, 7).verdict != "pass":
            continue
        passing += 1
        r = d_inequalities(SecondQuotients(q))
        assert r.flags["delta2"] and r.flags["d3"] and r.flags["delta3"]
    assert passing >= 5


@given(quotient_vectors(7, lo=4, hi=12))
def test_lemma1_never_violated_in_hutchinson_regime(q):
    assert lemma1_chain(SecondQuotients(q)).first_violation is None


def test_th1_audit_examples():
    a = th1_audit(PartialTheta(4), 10, 4, trunc_degree=10)
    assert not a.vacuous and a.min_q == 4 and a.min_q_above_3
    assert a.label == "supported at degree 10"

    a = th1_audit(PartialTheta(3), 10, 2, trunc_degree=40)
    assert a.vacuous and a.label.startswith("vacuous")

    a = th1_audit(Exponential(), 6, 1, trunc_degree=6)
    assert 1 in a.failing


def test_th1_audit_contradiction_label():
    # a finite truncation can pass while some q_n = 3; the label says so
    a = th1_audit(FromQuotients((4, 4, 3, 4, 4)), 6, 0, trunc_degree=6)
    assert a.label == "contradicted at degree 6"
    assert a.min_q == 3 and a.min_q_index == 4 and not a.min_q_above_3


def test_th1_audit_bad_args():
    with pytest.raises(ValueError):
        th1_audit(PartialTheta(4), 1, 0)
