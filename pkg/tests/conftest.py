from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

# deterministic property tests: the same examples on every run
settings.register_profile(
    "tpkit",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("tpkit")


def fractions(lo, hi, max_den=12):
    return st.fractions(min_value=Fraction(lo), max_value=Fraction(hi), max_denominator=max_den)


def quotient_vectors(n, lo=1, hi=10):
    return st.lists(fractions(lo, hi), min_size=n, max_size=n).map(tuple)
