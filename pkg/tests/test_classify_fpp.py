from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from wspaces.classify_fpp import SPlusVec, has_fixed_point, l1_distance, remark52_report, shift_splus
from wspaces.errors import NotInSPlus, WitnessInvalid
from wspaces.seqcore import DualVec, PrimalVec, geometric, reciprocal, unit
from wspaces.walpha import classify

GEOM = geometric(F(1, 2), F(1, 2))


@st.composite
def splus(draw):
    prefix = draw(st.lists(st.integers(0, 6), max_size=4))
    kind = draw(st.sampled_from(["zero", "geom", "recip"]))
    if kind == "geom":
        v = geometric(draw(st.integers(1, 4)), draw(st.sampled_from([F(1, 2), F(1, 3), F(3, 4)])), tuple(prefix))
    elif kind == "recip":
        v = reciprocal(draw(st.integers(1, 4)), 0, tuple(prefix))
    else:
        v = DualVec(tuple(prefix) or (1,))
        if v.l1_norm() == 0:
            v = unit(1)
    return SPlusVec(v.scale(1 / v.l1_norm()))


def test_splus_validation():
    with pytest.raises(NotInSPlus):
        SPlusVec(DualVec((F(1, 2),)))
    with pytest.raises(NotInSPlus):
        SPlusVec(DualVec((F(3, 2), F(-1, 2))))
    with pytest.raises(NotInSPlus):
        SPlusVec(geometric(F(3, 2), F(-1, 2)))


def test_shift_examples():
    e1 = SPlusVec(unit(1))
    assert shift_splus(e1).vec == unit(2)
    assert l1_distance(shift_splus(e1), e1) == 2
    t = shift_splus(SPlusVec(GEOM))
    assert t.vec.entry(1) == 0 and t.vec.l1_norm() == 1


@given(splus(), splus())
@settings(max_examples=100)
def test_shift_isometry(x, y):
    assert l1_distance(shift_splus(x), shift_splus(y)) == l1_distance(x, y)


@given(splus())
@settings(max_examples=300)
def test_no_fixed_point(x):
    assert not has_fixed_point(x)
    assert shift_splus(x).vec.entry(1) == 0


def test_norm_attainment_report():
    r = remark52_report(GEOM, PrimalVec((), 1))
    assert r.ii == "verified" and r.in_A and classify(GEOM).in_A
    r = remark52_report(geometric(F(-1, 2), F(-1, 2)))
    assert r.ii == "unverified" and not r.in_A
    r = remark52_report(DualVec())
    assert r.ii == "refuted" and not r.norm_one
    for bad in (PrimalVec((), 0), PrimalVec((2,), 2), PrimalVec((1,), 0)):
        with pytest.raises(WitnessInvalid):
            remark52_report(GEOM, bad)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=5).filter(lambda v: any(v)))
def test_norm_attainment_consistent_with_classify(entries):
    alpha = DualVec(tuple(entries))
    alpha = alpha.scale(1 / alpha.l1_norm())
    # x = sgn(alpha) on the support, 0 off it, limit alpha(x) = 1
    head = tuple(F((v > 0) - (v < 0)) for v in alpha.prefix)
    witness = PrimalVec(head, 1)
    try:
        r = remark52_report(alpha, witness)
    except WitnessInvalid:
        return
    assert r.ii == "verified" and classify(alpha).in_A
