from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conftest import unit_ball
from wspaces.cubic import RepresentingMatrix, check_recursion, determinant, is_member, limit_condition_check
from wspaces.errors import DegenerateTail, PreconditionViolated
from wspaces.seqcore import DualVec, geometric, reciprocal, unit

GEOM = geometric(F(1, 2), F(1, 2))
ALPHAS = [
    GEOM,
    geometric(F(-1, 2), F(-1, 2)),
    DualVec((F(1, 2), F(-1, 4), F(1, 8))),
    reciprocal(F(1, 2)).scale(F(1, 1)),
    DualVec(),
]


def sympy_delta(mat, k, m):
    rows = mat.window(k, m)
    return sp.Matrix([[sp.Rational(v.numerator, v.denominator) for v in r] for r in rows]).det()


def test_a_examples():
    mat = RepresentingMatrix(GEOM)
    # A(2) = 1/2, so a(1, 1) = (1/2) / (1/2)
    assert mat.a(1, 1) == 1
    assert mat.a(1, 2) == F(2, 3)
    assert RepresentingMatrix(DualVec()).a(2, 3) == 0
    with pytest.raises(IndexError):
        mat.a(3, 2)


def test_degenerate_tail():
    mat = RepresentingMatrix(DualVec((0, 0, 1)))
    with pytest.raises(DegenerateTail):
        mat.a(1, 2)
    assert mat.a(1, 3) == 0


@pytest.mark.parametrize("alpha", ALPHAS)
def test_delta_against_sympy(alpha):
    mat = RepresentingMatrix(alpha)
    for k in range(1, 5):
        for m in range(1, 7):
            assert mat.delta_direct(k, m) == sympy_delta(mat, k, m)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_delta_recursive_and_expansion(alpha):
    mat = RepresentingMatrix(alpha)
    for k in range(1, 9):
        assert mat.delta_recursive(k, 1) == mat.a(k, k)
        for m in range(1, 9):
            assert mat.delta_recursive(k, m) == mat.delta_direct(k, m)
        coeffs = mat.expand_in_basis(k, k + 8)
        for j in range(k + 1, k + 9):
            assert coeffs[j - 1] == mat.delta_recursive(k, j - k)


@given(unit_ball().filter(lambda a: a.signed_tail_from(1) != 1 or a == DualVec()), st.integers(1, 4), st.integers(1, 5))
@settings(max_examples=40)
def test_delta_property(alpha, k, m):
    mat = RepresentingMatrix(alpha)
    try:
        direct = mat.delta_direct(k, m)
    except DegenerateTail:
        return
    assert mat.delta_recursive(k, m) == direct


def test_expansion_reconstructs_vector():
    mat = RepresentingMatrix(GEOM)
    for k in range(1, 5):
        n = k + 6
        coeffs = mat.expand_in_basis(k, n)
        vec = None
        for i, c in enumerate(coeffs, 1):
            term = mat.basis_vector(i, n).scale(c)
            vec = term if vec is None else vec + term
        assert vec == mat.basis_vector(k, k)


def test_determinant_helper():
    assert determinant([[2, 1], [1, 1]]) == 1
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0
    assert determinant([]) == 1


def test_invariants_to_32():
    mat = RepresentingMatrix(GEOM)
    for n in range(1, 33):
        assert mat.row_sum(n) <= 1
        for i in range(1, n + 1):
            assert is_member(mat, mat.basis_vector(i, n))
            assert check_recursion(mat, i, n)
            assert mat.a(i, n) - GEOM.entry(i) == mat.residual(i, n)


@given(unit_ball(strict=True), st.integers(1, 12))
@settings(max_examples=40)
def test_invariants_property(alpha, n):
    mat = RepresentingMatrix(alpha)
    assert mat.row_sum(n) <= 1
    for i in range(1, n + 1):
        assert is_member(mat, mat.basis_vector(i, n))
        assert check_recursion(mat, i, n)


def test_limit_condition_geometric():
    mat = RepresentingMatrix(GEOM)
    for k in range(1, 5):
        rep = limit_condition_check(mat, k, F(1, 100))
        assert rep.passed and rep.residual <= F(1, 100)
        assert rep.N < rep.M < rep.n


def test_limit_condition_preconditions():
    with pytest.raises(PreconditionViolated):
        limit_condition_check(RepresentingMatrix(DualVec((F(1, 2),))), 1, F(1, 100))
    with pytest.raises(PreconditionViolated):
        limit_condition_check(RepresentingMatrix(GEOM), 1, 0)


def test_limit_condition_unit_functional():
    assert limit_condition_check(RepresentingMatrix(unit(1)), 1, F(1, 10)).passed
    # A(2) = 1 leaves a(1, 1) undefined
    with pytest.raises(DegenerateTail):
        limit_condition_check(RepresentingMatrix(unit(2)), 1, F(1, 10))


def test_limit_condition_finite_support_is_stationary():
    mat = RepresentingMatrix(DualVec((F(1, 2), F(1, 2))))
    rep = limit_condition_check(mat, 1, F(1, 100))
    assert rep.residual == 0
    assert len({mat.delta_recursive(1, n) for n in range(2, 12)}) == 1


def test_window_two_expansion():
    mat = RepresentingMatrix(DualVec((F(1, 3), F(-1, 4), F(1, 5))))
    for k in (1, 2):
        assert mat.delta_direct(k, 2) == mat.a(k, k) * mat.a(k + 1, k + 1) + mat.a(k, k + 1)
        assert mat.expand_in_basis(k, k + 1)[k] == mat.a(k, k)
