from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from wspaces.seqcore import DualVec, PrimalVec, geometric, reciprocal

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

RATIOS = [Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 3), Fraction(2, 3), Fraction(3, 4)]


@st.composite
def rationals(draw, bound=8):
    return Fraction(draw(st.integers(-bound, bound)), draw(st.integers(1, bound)))


@st.composite
def dualvecs(draw, kinds=("zero", "geom", "recip"), max_prefix=4):
    prefix = tuple(draw(st.lists(rationals(), max_size=max_prefix)))
    kind = draw(st.sampled_from(kinds))
    if kind == "geom":
        first = draw(rationals().filter(bool))
        return geometric(first, draw(st.sampled_from(RATIOS)), prefix)
    if kind == "recip":
        return reciprocal(draw(rationals().filter(bool)), 0, prefix)
    return DualVec(prefix)


@st.composite
def unit_ball(draw, kinds=("zero", "geom", "recip"), strict=False):
    """alpha with |alpha| <= 1 (or < 1)."""
    f = draw(dualvecs(kinds))
    n = f.l1_norm()
    if n == 0:
        return f
    target = draw(st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)] + ([] if strict else [Fraction(1)])))
    return f.scale(target / n)


@st.composite
def primalvecs(draw, max_prefix=5):
    return PrimalVec(tuple(draw(st.lists(rationals(), max_size=max_prefix))), draw(rationals()))


def partial_sum(f, n):
    return sum((f.entry(i) for i in range(1, n + 1)), Fraction(0))


@pytest.fixture
def geom_half():
    return geometric(Fraction(1, 2), Fraction(1, 2))
