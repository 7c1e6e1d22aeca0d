from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fractions
from tpkit.enclosure import Interval, isqrt_interval, round_down, round_up, sqrt_bounds


def test_sqrt_exact_squares():
    assert sqrt_bounds(F(9, 4), 64) == (F(3, 2), F(3, 2))
    assert sqrt_bounds(0, 64) == (0, 0)
    with pytest.raises(ValueError):
        sqrt_bounds(-1, 64)


@pytest.mark.parametrize("bits", [64, 128, 200])
def test_sqrt_two_width(bits):
    lo, hi = sqrt_bounds(2, bits)
    assert lo * lo < 2 < hi * hi
    assert hi - lo <= F(1, 2**bits)


@given(fractions(F(1, 1000), 10**6, max_den=1000), st.sampled_from([64, 100, 160]))
def test_sqrt_bounds_bracket(x, bits):
    lo, hi = sqrt_bounds(x, bits)
    assert lo * lo <= x <= hi * hi
    # relative width about 2^-bits even for tiny inputs
    assert (hi - lo) <= max(hi, 1) * F(4, 2**bits)


@given(fractions(-50, 50, max_den=10**6), st.integers(8, 80))
def test_rounding_is_directed(x, bits):
    assert round_down(x, bits) <= x <= round_up(x, bits)
    assert round_down(x, bits).denominator & (round_down(x, bits).denominator - 1) == 0


def test_interval_arithmetic_examples():
    a, b = Interval(1, 2), Interval(-3, 1)
    assert a + b == Interval(-2, 3)
    assert a - b == Interval(0, 5)
    assert a * b == Interval(-6, 2)
    assert b**2 == Interval(0, 9)
    assert b**3 == Interval(-27, 1)
    assert Interval(-3, -1) ** 2 == Interval(1, 9)
    assert 1 / a == Interval(F(1, 2), 1)
    assert (2 - a) == Interval(0, 1)
    with pytest.raises(ZeroDivisionError):
        a / b
    with pytest.raises(ValueError):
        Interval(2, 1)


def test_sign_and_ordering():
    assert Interval(F(1, 10), 1).sign() == 1
    assert Interval(-1, 0).sign() == 0
    assert Interval(-2, -1).sign() == -1
    assert Interval(1, 2) < Interval(3, 4)
    assert not Interval(1, 3) < Interval(2, 4)
    assert Interval(F(1, 3)).to_json() == ["1/3", "1/3"]


def test_sqrt_interval():
    r = isqrt_interval(Interval(2, 3), 80)
    assert r.lo ** 2 <= 2 and r.hi ** 2 >= 3
    assert isqrt_interval(F(4), 80) == Interval(2)


_iv = st.tuples(fractions(-20, 20), fractions(0, 5)).map(lambda t: Interval(t[0], t[0] + t[1]))


@given(_iv, _iv, st.data())
def test_inclusion_property(x, y, data):
    # any choice of points gives a result inside the interval result
    s, t = data.draw(fractions(0, 1)), data.draw(fractions(0, 1))
    u, v = x.lo + s * x.width, y.lo + t * y.width
    assert (x + y).contains(u + v)
    assert (x - y).contains(u - v)
    assert (x * y).contains(u * v)
    assert (x**3).contains(u**3)
    assert (y**2).contains(v**2)
    if y.sign():
        assert (x / y).contains(u / v)


@given(_iv, st.integers(16, 64))
def test_rounded_contains_original(x, bits):
    r = x.rounded(bits)
    assert r.lo <= x.lo and r.hi >= x.hi
