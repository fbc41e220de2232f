import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from parcoh.linalg import (
    GF,
    QQ,
    DimensionMismatch,
    FieldMismatch,
    Mat,
    Residue,
    SubspaceBasis,
    field_from_name,
    independent_subset,
    kernel_basis,
    quotient_presentation,
    solve_linear,
)

F3, F5 = GF(3), GF(5)


def test_rationals_are_reduced():
    x = QQ(Fraction(6, -4))
    assert (x.numerator, x.denominator) == (-3, 2)
    assert QQ.format(QQ(0)) == "0/1"


def test_residues_are_canonical():
    assert Residue(-1, 5).value == 4
    assert F5(Fraction(1, 2)) == F5(3)
    assert F5.format(F5(7)) == "2 mod 5"
    assert F5("3 mod 5") == F5(3)


def test_field_mixing_rejected():
    with pytest.raises(FieldMismatch):
        F3(1) + F5(1)
    with pytest.raises(FieldMismatch):
        F5(1) * Fraction(1, 2)
    with pytest.raises(TypeError):
        QQ(0.5)
    with pytest.raises(FieldMismatch):
        Mat(1, 1, (F5(1),), QQ)


def test_field_names():
    assert field_from_name("Q") is QQ
    assert field_from_name("F7").p == 7
    for bad in ("F4", "F1", "R", "F"):
        with pytest.raises(ValueError):
            field_from_name(bad)


def test_solve_identity():
    x = solve_linear(Mat.identity(QQ, 2), Mat.column(QQ, [3, Fraction(1, 2)]))
    assert x.entries == (3, Fraction(1, 2))


def test_solve_singular_system_mod_three():
    # [[1,2],[2,1]] is singular mod 3 (det = -3) and b = (1,1) is off its
    # image; an exhaustive search over F3^2 agrees that nothing solves it.
    A = Mat.from_rows(F3, [[1, 2], [2, 1]])
    b = Mat.column(F3, [1, 1])
    assert solve_linear(A, b) is None
    hits = [v for v in itertools.product(range(3), repeat=2)
            if ((v[0] + 2 * v[1]) % 3, (2 * v[0] + v[1]) % 3) == (1, 1)]
    assert hits == []
    # the candidate (1, 0) substitutes to (1, 2)
    assert (A @ Mat.column(F3, [1, 0])).entries == (F3(1), F3(2))


def test_solve_inconsistent():
    assert solve_linear(Mat.from_rows(QQ, [[1, 1], [1, 1]]), Mat.column(QQ, [1, 2])) is None


def test_kernel_examples():
    assert kernel_basis(Mat.identity(QQ, 2)) == []
    assert len(kernel_basis(Mat.zeros(QQ, 2, 2))) == 2
    (k,) = kernel_basis(Mat.from_rows(QQ, [[1, 2], [2, 4]]))
    a, b = k.entries
    assert a * -1 == b * 2  # proportional to (2, -1)


def test_quotient_examples():
    Q3 = quotient_presentation(3, [], QQ)
    assert Q3.dim == 3 and Q3.project == Mat.identity(QQ, 3)
    Q1 = quotient_presentation(2, [(QQ(1), QQ(-1))], QQ)
    assert Q1.dim == 1
    assert Q1.project_vector((QQ(1), QQ(-1))) == (0,)
    assert Q1.project_vector((QQ(1), QQ(0))) == Q1.project_vector((QQ(0), QQ(1)))
    assert quotient_presentation(2, [(QQ(1), QQ(0)), (QQ(0), QQ(1))], QQ).dim == 0
    with pytest.raises(DimensionMismatch):
        quotient_presentation(2, [(QQ(1),)], QQ)


def test_subspace_coordinates():
    S = SubspaceBasis([(QQ(1), QQ(1), QQ(0)), (QQ(0), QQ(1), QQ(1))], QQ)
    assert S.coords((QQ(1), QQ(2), QQ(1))) == (1, 1)
    assert S.coords((QQ(1), QQ(0), QQ(0))) is None
    with pytest.raises(ValueError):
        SubspaceBasis([(QQ(1), QQ(0)), (QQ(2), QQ(0))], QQ)


small = st.integers(min_value=-3, max_value=3)


def matrices(field, max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    ).map(lambda rows: Mat.from_rows(field, rows))


@given(matrices(QQ), st.lists(small, min_size=4, max_size=4))
def test_solve_is_a_solution_or_none_over_q(A, rhs):
    b = Mat.column(QQ, rhs[: A.rows] + [0] * (A.rows - len(rhs[: A.rows])))
    x = solve_linear(A, b)
    if x is not None:
        assert A @ x == b
    else:
        # inconsistency: augmenting raises the rank
        aug = Mat.from_rows(QQ, [list(A.row(i)) + [b.entries[i]] for i in range(A.rows)])
        assert aug.rank() == A.rank() + 1


@given(matrices(F3, 3), st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_solve_against_exhaustive_search_mod_three(A, rhs):
    b = Mat.column(F3, rhs[: A.rows])
    found = [v for v in itertools.product(range(3), repeat=A.cols)
             if A @ Mat.column(F3, v) == b]
    x = solve_linear(A, b)
    assert (x is None) == (not found)
    if x is not None:
        assert A @ x == b


@given(matrices(F5))
def test_rank_nullity(A):
    ker = kernel_basis(A)
    assert len(ker) + A.rank() == A.cols
    for k in ker:
        assert (A @ k).is_zero()
    assert len(independent_subset([k.entries for k in ker], F5)) == len(ker)


@given(st.integers(1, 4), st.lists(st.lists(small, min_size=4, max_size=4), max_size=4))
def test_quotient_kills_relations(n, rels):
    rels = [tuple(QQ(x) for x in r[:n]) for r in rels]
    Qs = quotient_presentation(n, rels, QQ)
    rank = len(independent_subset(rels, QQ))
    assert Qs.dim == n - rank
    for r in rels:
        assert not any(Qs.project_vector(r))
    for i in range(Qs.dim):
        e = QQ.unit_vector(Qs.dim, i)
        assert Qs.project_vector(Qs.lift_vector(e)) == e
