from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from wspaces.embeddings import embed_general
from wspaces.errors import NormTooLarge, NotAMember, NotUnitNorm, PreconditionViolated
from wspaces.models import (
    ALL_ONES, Member, RowFunctional, build_model, catalog, condition_P_obstruction, condition_P_witness_check,
    condition_S_check, cor41_witness_check, example_4_2, example_6_7, example_6_8, example_9_3, model_membership,
    model_rstar, remark_6_4,
)
from wspaces.seqcore import DualVec, PrimalVec, geometric, pairing, reciprocal, unit

ZERO = Member()


def geometric_sum(first, ratio):
    return first / (1 - ratio)


def test_build_and_norm_guard():
    m = build_model(RowFunctional(DualVec(), geometric(F(1, 2), F(1, 2))), RowFunctional(geometric(F(1, 2), F(1, 2))))
    assert model_rstar(m) == 1
    example_6_8()
    with pytest.raises(NormTooLarge):
        build_model(RowFunctional(DualVec((1,) * 10)), RowFunctional())


def test_membership_examples():
    m = example_4_2()
    assert model_membership(m, ALL_ONES)
    assert model_membership(m, ZERO)
    f = Member(PrimalVec((), 1), PrimalVec((), 0))
    # row-1 limit is x1*(f) = 0 (recorded 1); row-2 limit is x2*(f) = 1 (recorded 0)
    assert m.x1(f) == 0 and m.x2(f) == 1
    assert not model_membership(m, Member(PrimalVec((1,), 0), PrimalVec((), 1)))


def random_model_member(m, head1, head2):
    """Solve the 2x2 system for the two limits given heads of both rows."""
    from sympy import Matrix, Rational

    def pair_head(x, row, head):
        return sum((x.rows()[row].entry(i) * v for i, v in enumerate(head, 1)), F(0))

    def tail(x, row, n):
        return x.rows()[row].signed_tail_from(n + 1)

    n1, n2 = len(head1), len(head2)
    a = [[tail(m.x1, 0, n1), tail(m.x1, 1, n2)], [tail(m.x2, 0, n1), tail(m.x2, 1, n2)]]
    rhs = [pair_head(m.x1, 0, head1) + pair_head(m.x1, 1, head2), pair_head(m.x2, 0, head1) + pair_head(m.x2, 1, head2)]
    M = Matrix([[Rational(str(1 - a[0][0])), Rational(str(-a[0][1]))], [Rational(str(-a[1][0])), Rational(str(1 - a[1][1]))]])
    if M.det() == 0:
        return None
    sol = M.solve(Matrix([Rational(str(v)) for v in rhs]))
    l1, l2 = (F(int(v.p), int(v.q)) for v in sol)
    return Member(PrimalVec(tuple(head1), l1), PrimalVec(tuple(head2), l2))


@given(st.sampled_from(["example-4.2", "example-6.8", "remark-6.4", "example-9.3(1/4,1/2)"]),
       st.lists(rationals(), max_size=4), st.lists(rationals(), max_size=4), rationals(), rationals())
def test_members_form_subspace(name, h1, h2, a, b):
    m = catalog(name)
    f = random_model_member(m, h1, h2)
    g = random_model_member(m, h2, h1)
    if f is None or g is None:
        return
    assert model_membership(m, f) and model_membership(m, g)
    combo = Member(f.row1.scale(a) + g.row1.scale(b), f.row2.scale(a) + g.row2.scale(b))
    assert model_membership(m, combo)
    for x in (unit(1), unit(3), m.x1.row1):
        assert abs(pairing(x, f.row1)) <= x.l1_norm() * f.sup_norm()


def test_rstar_values():
    assert model_rstar(example_4_2()) == 1
    assert model_rstar(example_6_7()) == 1
    assert model_rstar(example_6_8()) == max(geometric_sum(F(1, 2), F(1, 2)), geometric_sum(F(1, 3), F(1, 3)))
    m = remark_6_4()
    assert model_rstar(m) == 1 and m.x2.norm() == 0
    assert (m.x1.row1.l1_norm(), m.x1.row2.l1_norm()) == (F(2, 3), F(1, 3))
    assert model_rstar(example_9_3(F(1, 4), F(1, 2))) == F(1, 2)


def test_condition_S():
    assert condition_S_check(example_6_8(), 1)
    assert condition_S_check(example_6_8(), 2)
    assert not condition_S_check(example_6_7(), 1)
    assert not condition_S_check(example_4_2(), 1)


def test_condition_P():
    assert condition_P_witness_check(example_6_7(), ALL_ONES, 1)
    assert condition_P_witness_check(example_6_7(), ALL_ONES, 2)
    m = example_6_8()
    # x1*(all-ones) = sum (-1/2)^j = -1/3, so all-ones violates the row-1 constraint
    assert m.x1(ALL_ONES) == geometric_sum(F(-1, 2), F(-1, 2)) == F(-1, 3)
    with pytest.raises(NotAMember):
        condition_P_witness_check(m, ALL_ONES, 1)
    assert condition_P_obstruction(m, 1) and condition_P_obstruction(m, 2)
    assert not condition_P_obstruction(example_6_7(), 1)
    for model in (example_4_2(), m):
        with pytest.raises(NotUnitNorm):
            condition_P_witness_check(model, ZERO, 1)


def test_cor41():
    rep = cor41_witness_check(example_4_2(), ALL_ONES, 1)
    assert rep.cluster_identified and rep.disjoint and rep.attains and rep.all_hold
    rep = cor41_witness_check(example_4_2(), ZERO, 1)
    assert not rep.attains
    with pytest.raises(NotAMember):
        cor41_witness_check(example_6_8(), ALL_ONES, 1)


def test_flattened_cluster_refuses_norm_one():
    flat = remark_6_4().x1.flatten()
    assert flat.l1_norm() == model_rstar(remark_6_4()) == 1
    for beta in (geometric(F(1, 2), F(1, 2)), reciprocal(-1), unit(2)):
        with pytest.raises(PreconditionViolated):
            embed_general(beta, flat)
    embed_general(geometric(F(1, 4), F(1, 2)), flat)


def test_catalog():
    assert catalog("example-9.3").name == "example-9.3(1/4,1/2)"
    assert model_rstar(catalog("example-9.3(1/3, 2/3)")) == F(2, 3)
    with pytest.raises(KeyError):
        catalog("example-1.1")
