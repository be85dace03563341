import itertools
from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from conftest import rationals, unit_ball
from wspaces.errors import DomainError
from wspaces.sampling import random_members
from wspaces.seqcore import DualVec, PrimalVec, geometric, unit
from wspaces.walpha import (
    FAILS, NO, STABLE, UNDECIDED, YES, WAlphaSpace, almost_isometric_r, bm_distance_c, classify, contains_c,
    fpp_verdict, isometric_equiv, membership, projection_constant_bound, rstar,
)

GEOM = geometric(F(1, 2), F(1, 2))
ALT = geometric(F(-1, 2), F(-1, 2))  # ((-1/2)^n)


def test_membership_examples():
    assert membership(DualVec(), PrimalVec((1, F(1, 2)), 0))
    assert membership(GEOM, PrimalVec((), 1))
    assert not membership(unit(1, F(1, 2)), PrimalVec((1,), 1))


def test_space_rejects_large_alpha():
    with pytest.raises(DomainError):
        WAlphaSpace(DualVec((1, 1)))


def test_rstar_examples():
    assert rstar(GEOM) == 1
    assert rstar(DualVec()) == 0
    assert rstar(DualVec((F(1, 2), F(1, 2)))) == 1


def display_value(entries, norm):
    """Independent evaluation of the bound with sympy for finite support."""
    a = [sp.Rational(str(abs(v))) for v in entries]
    D = 1 + sp.Rational(str(norm))
    return 1 + 1 / (1 / D + sum(x / (D - 2 * x) for x in a))


def test_projection_constant_examples():
    assert projection_constant_bound(DualVec()).value == 2
    assert projection_constant_bound(DualVec((F(1, 2),))).value == F(8, 5)
    assert sp.Rational(8, 5) == display_value([F(1, 2)], F(1, 2))
    assert projection_constant_bound(unit(1)).value == 1
    assert projection_constant_bound(unit(3, -1)).value == 1


@given(unit_ball(kinds=("zero",), strict=True))
def test_projection_constant_matches_oracle_finite(alpha):
    got = projection_constant_bound(alpha).value
    assert sp.Rational(str(got)) == display_value(alpha.prefix, alpha.l1_norm())


@given(unit_ball(kinds=("geom", "recip")), st.integers(0, 30))
def test_projection_constant_bracket_encloses_truncations(alpha, depth):
    b = projection_constant_bound(alpha, depth)
    assert 1 <= b.lo <= b.hi <= 2
    deeper = projection_constant_bound(alpha, depth + 20)
    assert b.lo <= deeper.lo <= deeper.hi <= b.hi


def test_distance_examples():
    assert bm_distance_c(F(1, 2)) == F(5, 3)
    assert bm_distance_c(1) == 1
    assert bm_distance_c(0) == 3
    for bad in (F(-1, 10), F(11, 10)):
        with pytest.raises(DomainError):
            bm_distance_c(bad)


def test_distance_monotone():
    pts = [F(i, 99) for i in range(100)]
    vals = [bm_distance_c(p) for p in pts]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert all(1 <= v <= 3 for v in vals)


def flips_and_perms_equal(a, b):
    """Oracle: search signed permutations of the joint support."""
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    for perm in itertools.permutations(range(n)):
        if all(abs(a[perm[i]]) == abs(b[i]) for i in range(n)):
            return True
    return False


def test_isometric_equiv_examples():
    assert isometric_equiv(DualVec((F(1, 2), F(-1, 2))), DualVec((F(1, 2), F(1, 2)))) == YES
    assert flips_and_perms_equal((F(1, 2), F(-1, 2)), (F(1, 2), F(1, 2)))
    assert isometric_equiv(DualVec((F(1, 2),)), DualVec((F(1, 3),))) == NO
    assert isometric_equiv(GEOM, geometric(F(1, 2), F(-1, 2))) == UNDECIDED


@given(st.lists(rationals(3), min_size=1, max_size=4), st.lists(rationals(3), min_size=1, max_size=4))
def test_isometric_equiv_finite_matches_search(a, b):
    got = isometric_equiv(DualVec(tuple(a)), DualVec(tuple(b)))
    assert got == (YES if flips_and_perms_equal([v for v in a if v], [v for v in b if v]) else NO)


def test_isometric_equiv_same_tail():
    a = geometric(F(1, 8), F(1, 2), (F(1, 4), F(-1, 2)))
    b = geometric(F(1, 8), F(1, 2), (F(1, 2), F(1, 4)))
    assert isometric_equiv(a, b) == YES


def test_contains_c_examples():
    assert contains_c(DualVec((F(1, 2), F(1, 2))))
    assert not contains_c(GEOM)
    assert not contains_c(DualVec((F(1, 2),)))


def test_fpp_examples():
    v = fpp_verdict(GEOM, F(1, 3))
    assert v.verdict == FAILS and v.r_needed == F(5, 7)
    assert bm_distance_c(F(5, 7)) == F(4, 3)
    assert fpp_verdict(DualVec((F(1, 2),))).verdict == STABLE
    assert fpp_verdict(ALT).verdict == FAILS


@given(st.fractions(min_value=F(1, 100), max_value=3, max_denominator=100))
def test_almost_isometric_r_is_least(eps):
    r = almost_isometric_r(eps)
    assert bm_distance_c(r) <= 1 + eps
    if r > 0:
        assert bm_distance_c(r - F(1, 10**6)) > 1 + eps


def test_classify_examples():
    c = classify(DualVec((F(1, 2), F(1, 2))))
    assert (c.in_A, c.in_M, c.in_C, c.in_G) == (True, False, False, NO)
    c = classify(unit(1, F(1, 2)))
    assert c.in_M and not c.in_C0 and not c.in_A
    c = classify(geometric(F(1, 2), F(-1, 2)))
    assert not c.in_A and c.in_G == NO
    for n in (1, 4):
        for s in (1, -1):
            assert classify(unit(n, s)).in_C
    assert classify(DualVec()).in_C0
    c = classify(GEOM)
    assert c.in_A and not c.in_C
    assert not classify(GEOM.scale(-1)).in_A


@given(unit_ball())
def test_classify_lattice(alpha):
    c = classify(alpha)
    if c.in_C:
        assert c.in_A and c.in_M
    if c.in_C0:
        assert c.in_A0 and c.in_M
    if c.in_A:
        assert c.in_A0
    if c.in_M:
        assert c.in_G == YES
    if not alpha.negatives_finite:
        assert not c.in_A and c.in_G == NO


@given(unit_ball())
def test_contains_c_implies_failure(alpha):
    if contains_c(alpha):
        assert fpp_verdict(alpha).verdict == FAILS
    assert rstar(alpha) == alpha.l1_norm()


@given(unit_ball(), st.integers(0, 10**6), rationals(), rationals())
def test_members_form_subspace(alpha, seed, a, b):
    x, y = random_members(alpha, 2, seed)
    assert membership(alpha, x) and membership(alpha, y)
    assert membership(alpha, x.scale(a) + y.scale(b))
