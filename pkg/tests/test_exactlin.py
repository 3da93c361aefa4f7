from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from twolevel.exactlin import (
    Subspace, affine_dim, dot, format_rational, independent_indices, inverse,
    is_zero, matvec, nullspace, parse_rational, primitive_integer, project_hyperplane,
    project_span, rank, solve_affine, sub, transpose,
)

from conftest import F

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def vectors(d):
    return st.tuples(*[rationals] * d)


def matrices(rows, cols):
    return st.lists(vectors(cols), min_size=rows, max_size=rows)


def test_rank_examples():
    assert rank([F(1, 0, 0), F(0, 1, 0), F(0, 0, 1)]) == 3
    assert rank([F(0, 0), F(0, 0)]) == 0
    assert rank([F(1, 1), F(2, 2)]) == 1
    assert rank([]) == 0


@given(st.integers(1, 5).flatmap(lambda c: st.integers(1, 5).flatmap(lambda r: matrices(r, c))))
def test_rank_matches_sympy(M):
    assert rank(M) == sympy.Matrix(M).rank()


@given(matrices(3, 3), st.integers(-3, 3).filter(bool))
def test_rank_invariant_under_row_scaling(M, s):
    assert rank(M) == rank([tuple(s * c for c in row) for row in M])


def test_independent_indices_is_first_greedy():
    assert independent_indices([F(1, 1), F(2, 2), F(0, 1), F(1, 0)]) == [0, 2]


def test_solve_affine_examples():
    part, null = solve_affine([F(1, 0, 0), F(0, 1, 0), F(0, 0, 1)], F(0, 1, 1))
    assert part == F(0, 1, 1) and null == []
    part, _ = solve_affine([F(1, 0), F(1, 1)], F(1, 0))
    assert part == F(1, -1)
    assert solve_affine([F(1), F(2)], F(1, 1)) is None


@given(matrices(3, 3), vectors(3))
def test_solve_round_trip(M, x):
    t = matvec(M, x)
    sol = solve_affine(M, t)
    assert sol is not None
    part, null = sol
    assert matvec(M, part) == t
    for n in null:
        assert is_zero(matvec(M, n))


def test_project_hyperplane_examples():
    assert project_hyperplane(F(1, 2, 3), F(0, 0, 1)) == F(1, 2, 0)
    assert project_hyperplane(F(1, -1), F(1, 1)) == F(1, -1)
    assert project_hyperplane(F(1, 0), F(1, 1)) == (Fraction(1, 2), Fraction(-1, 2))


def test_project_span_examples():
    assert project_span(F(3, 4), Subspace(2, (F(1, 0),))) == F(3, 0)
    assert project_span(F(2, 2), Subspace(2, (F(1, 1),))) == F(2, 2)
    assert project_span(F(1, 0), Subspace(2, (F(1, 1),))) == (Fraction(1, 2), Fraction(1, 2))


@given(vectors(4), vectors(4).filter(lambda n: not is_zero(n)))
def test_hyperplane_projection_idempotent_and_orthogonal(x, n):
    p = project_hyperplane(x, n)
    assert project_hyperplane(p, n) == p
    assert dot(p, n) == 0


@given(vectors(4), matrices(2, 4))
def test_span_projection_residual_orthogonal(x, gens):
    basis = tuple(gens[i] for i in independent_indices(gens))
    S = Subspace(4, basis)
    p = project_span(x, S)
    assert project_span(p, S) == p
    r = sub(x, p)
    assert all(dot(r, b) == 0 for b in basis)


def test_subspace_rejects_dependent_basis():
    with pytest.raises(ValueError):
        Subspace(2, (F(1, 1), F(2, 2)))


def test_orthogonal_complement():
    S = Subspace(3, (F(1, 1, 0),))
    C = S.orthogonal_complement()
    assert C.dim == 2
    assert all(dot(c, F(1, 1, 0)) == 0 for c in C.basis)
    assert S.contains(F(2, 2, 0)) and not S.contains(F(1, 0, 0))


def test_nullspace_and_inverse():
    N = nullspace([F(1, 1, 1)], 3)
    assert len(N) == 2 and all(dot(n, F(1, 1, 1)) == 0 for n in N)
    M = [F(2, 1), F(1, 1)]
    Minv = inverse(M)
    assert [matvec(M, c) for c in transpose(Minv)] == [F(1, 0), F(0, 1)]


def test_affine_dim_examples():
    assert affine_dim([F(5, 5)]) == 0
    assert affine_dim([F(0, 0), F(1, 0), F(0, 1)]) == 2
    assert affine_dim([F(0, 0), F(1, 1), F(2, 2)]) == 1
    with pytest.raises(ValueError):
        affine_dim([])


def test_rational_text_round_trip():
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(6, 3)) == "2"
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(2) == 2
    with pytest.raises((TypeError, ValueError)):
        parse_rational(0.5)
    with pytest.raises((TypeError, ValueError)):
        parse_rational(True)


def test_primitive_integer():
    assert primitive_integer(F("1/2", "-1/3")) == (3, -2)
