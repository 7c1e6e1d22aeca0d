from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fractions, quotient_vectors
from tpkit.quotients import second_quotients
from tpkit.rational import as_rational, format_rational, integerize
from tpkit.seqcore import (
    AsweFinite,
    CoefficientSequence,
    Derivative,
    Explicit,
    Exponential,
    FromQuotients,
    Geometric,
    Hadamard,
    PartialTheta,
    RationalGF,
    Remainder,
    derivative_weights,
    hadamard,
    materialize,
    normalize,
    ones,
    remainder,
    spec_from_json,
    spec_to_json,
)


def test_as_rational_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    assert as_rational("3.503") == F(3503, 1000)
    assert as_rational(" -2/4 ") == F(-1, 2)
    assert format_rational(F(6, 3)) == "2"


def test_integerize_minimal_denominator():
    ints, d = integerize([F(1, 2), F(1, 3), 2])
    assert d == 6 and ints == [3, 2, 12]


def test_from_quotients_by_hand():
    s = materialize(FromQuotients((4, 4)), 3)
    assert s.coeffs == (1, 1, F(1, 4), F(1, 64))


def test_from_quotients_horizon_limit():
    with pytest.raises(ValueError):
        materialize(FromQuotients((4, 4)), 4)


@pytest.mark.parametrize("bad", [dict(q=(0, 1)), dict(q=(1, -2)), dict(q=(1,), a0=0), dict(q=(1,), a1=0)])
def test_from_quotients_rejects(bad):
    with pytest.raises(ValueError):
        FromQuotients(**bad)


def test_geometric_constant():
    assert materialize(Geometric(1, 1), 4).coeffs == (1,) * 5


def test_aswe_two_poles_partial_fractions():
    # 1/((1-z)(2-z)) = sum (1 - 2^{-k-1}) z^k
    s = materialize(AsweFinite(F(1, 2), 0, (), (1, F(1, 2)), 0), 3)
    assert s.coeffs == (F(1, 2), F(3, 4), F(7, 8), F(15, 16))


def test_aswe_with_exponential_factor():
    # z e^z (1+z) = z + 2 z^2 + (3/2) z^3 + ...
    s = materialize(AsweFinite(1, 1, (1,), (), 1), 3)
    assert s.coeffs == (0, 1, 2, F(3, 2))


def test_rational_gf_binomial_series():
    # (1+z)/(1-z)^2 = sum (2k+1) z^k
    s = materialize(RationalGF((1, 1), 1, 2), 5)
    assert s.coeffs == tuple(2 * k + 1 for k in range(6))


def test_rational_gf_rejects_bad_pole_order():
    with pytest.raises(ValueError):
        RationalGF((1,), 1, 0)
    with pytest.raises(ValueError):
        RationalGF((1,), 0, 1)


def test_exponential_and_partial_theta():
    assert materialize(Exponential(), 4).coeffs == (1, 1, F(1, 2), F(1, 6), F(1, 24))
    assert materialize(PartialTheta(2), 3).coeffs == (1, 1, F(1, 2), F(1, 8))
    with pytest.raises(ValueError):
        PartialTheta(1)


def test_hadamard_examples():
    s = materialize(Exponential(), 5)
    assert hadamard(ones(5), s) == s
    assert hadamard(materialize(PartialTheta(2), 6), materialize(PartialTheta(2), 6)).coeffs == materialize(
        PartialTheta(4), 6
    ).coeffs
    assert hadamard(materialize(Geometric(1, F(1, 2)), 3), ones(3)).coeffs == (1, F(1, 2), F(1, 4), F(1, 8))
    with pytest.raises(ValueError):
        hadamard(ones(3), ones(4))


def test_remainder_keeps_absolute_indexing():
    s = CoefficientSequence((1, 1, F(1, 2), F(1, 6)))
    assert remainder(s, 0) == s
    assert remainder(s, 2).coeffs == (0, 0, F(1, 2), F(1, 6))
    with pytest.raises(ValueError):
        remainder(s, 4)


def test_derivative_weights_examples():
    assert derivative_weights(CoefficientSequence((1, 1, 1))).coeffs == (0, 1, 2)
    c = materialize(AsweFinite(F(1, 2), 0, (), (1, F(1, 2)), 0), 3)
    assert derivative_weights(c).coeffs == (0, F(3, 4), F(7, 4), F(45, 16))
    assert derivative_weights(CoefficientSequence((0, 0, 0))).coeffs == (0, 0, 0)


def test_normalize_examples():
    assert normalize(ones(4)) == ones(4)
    g = normalize(CoefficientSequence((2, 4, 4)))
    assert g.coeffs == (1, 1, F(1, 2))
    assert second_quotients(CoefficientSequence((2, 4, 4)), 2).q == second_quotients(g, 2).q == (2,)
    with pytest.raises(ValueError):
        normalize(CoefficientSequence((0, 1, 1)))


def test_composite_specs_materialize():
    spec = Derivative(Remainder(Hadamard(Exponential(), Geometric(1, 2)), 1))
    s = materialize(spec, 4)
    # k * 2^k / k! for k >= 1
    assert s.coeffs == (0, 2, 4, 4, F(8, 3))


def test_at_and_horizon():
    s = ones(3)
    assert s.at(-1) == 0 and s.at(3) == 1
    with pytest.raises(IndexError):
        s.at(4)


SPECS = [
    Explicit((1, F(1, 2))),
    FromQuotients((4, 4)),
    RationalGF((1, 2, 1), 1, 2),
    AsweFinite(1, 0, (), (1, F(1, 2)), 0),
    PartialTheta(4),
    Exponential(),
    Geometric(1, F(1, 2)),
    Hadamard(Exponential(), PartialTheta(3)),
    Remainder(Exponential(), 2),
    Derivative(Geometric(1, 1)),
]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: type(s).__name__)
def test_json_round_trip(spec):
    assert spec_from_json(spec_to_json(spec)) == spec


def test_json_examples_parse():
    assert spec_from_json('{"type":"explicit","coeffs":["1","1/2"]}') == Explicit((1, F(1, 2)))
    assert spec_from_json({"type": "rational_gf", "numerator": ["1", "2", "1"], "beta": "1", "pole_order": 2}) == (
        RationalGF((1, 2, 1), 1, 2)
    )
    with pytest.raises(ValueError):
        spec_from_json({"type": "nope"})
    with pytest.raises(ValueError):
        spec_from_json({"type": "geometric", "c": "1"})


# -- properties ------------------------------------------------------------------

@given(quotient_vectors(6, lo=F(1, 4), hi=10), fractions(F(1, 4), 4), fractions(F(1, 4), 4))
def test_quotient_round_trip(q, a0, a1):
    s = materialize(FromQuotients(q, a0, a1), len(q) + 1)
    assert second_quotients(s, len(q) + 1).q == q


@given(quotient_vectors(5, lo=F(1, 2), hi=8), fractions(F(1, 3), 5), fractions(F(1, 3), 5))
def test_normalize_idempotent_and_preserves_quotients(q, a0, a1):
    s = materialize(FromQuotients(q, a0, a1), 6)
    g = normalize(s)
    assert g.coeffs[:2] == (1, 1)
    assert normalize(g) == g
    assert second_quotients(g, 6).q == second_quotients(s, 6).q


@given(st.lists(fractions(0, 5), min_size=6, max_size=6), st.lists(fractions(0, 5), min_size=6, max_size=6),
       st.lists(fractions(0, 5), min_size=6, max_size=6))
def test_hadamard_commutative_associative(x, y, z):
    a, b, c = (CoefficientSequence(tuple(v)) for v in (x, y, z))
    assert hadamard(a, b) == hadamard(b, a)
    assert hadamard(hadamard(a, b), c) == hadamard(a, hadamard(b, c))
    assert hadamard(ones(5), a) == a


@given(fractions(F(11, 10), 6), fractions(F(11, 10), 6))
def test_partial_theta_product_law(p, r):
    left = hadamard(materialize(PartialTheta(p), 8), materialize(PartialTheta(r), 8))
    assert left == materialize(PartialTheta(p * r), 8)


@given(st.integers(0, 6), st.integers(0, 6))
def test_remainder_composition(l1, l2):
    s = materialize(Exponential(), 6)
    assert remainder(remainder(s, l1), l2) == remainder(s, max(l1, l2))
