from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pchcert.linalg import (DependentBasis, Echelon, ImageNotInKernel, NoSolution, NotInKernel,
                            SparseRatMatrix, format_rational, kernel_basis, kernel_basis_sparse,
                            parse_rational, quotient_space, rank, rank_mod_p, solve_exact)

small_rational = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=6, max_cols=6, density=0.5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = [[draw(small_rational) if draw(st.floats(0, 1)) < density else Fraction(0) for _ in range(c)]
            for _ in range(r)]
    return SparseRatMatrix.from_dense(rows)


def sympy_rank(M):
    return sympy.Matrix(M.to_dense()).rank()


def mul(M, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in M.to_dense()]


def test_rank_example():
    M = SparseRatMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, -1]])
    assert rank(M, verify=True) == 2
    (k,) = kernel_basis(M)
    assert k == (1, -1, 1) or k == (-1, 1, -1)


def test_kernel_of_rank_one():
    M = SparseRatMatrix.from_dense([[1, 2, 3], [2, 4, 6]])
    ks = kernel_basis(M)
    assert len(ks) == 2
    assert all(not any(mul(M, k)) for k in ks)


def test_identity_and_zero():
    assert rank(SparseRatMatrix.identity(5)) == 5
    assert kernel_basis(SparseRatMatrix.identity(3)) == []
    Z = SparseRatMatrix(3, 4, {})
    assert rank(Z) == 0 and len(kernel_basis(Z)) == 4


def test_solve_example():
    M = SparseRatMatrix.from_dense([[1, 1]])
    sol = solve_exact(M, [2])
    assert mul(M, sol.particular) == [2]
    assert len(sol.homogeneous) == 1
    (h,) = sol.homogeneous
    assert h[0] == -h[1] != 0


def test_solve_inconsistent():
    M = SparseRatMatrix.from_dense([[1, 1], [1, 1]])
    with pytest.raises(NoSolution):
        solve_exact(M, [1, 2])


def test_solve_rejects_bad_rhs_length():
    with pytest.raises(ValueError):
        solve_exact(SparseRatMatrix.identity(2), [1, 2, 3])


def test_quotient_example():
    q = quotient_space([[1, 0, 0], [0, 1, 0]], [[1, 1, 0]])
    assert q.quotient_dim == 1
    assert q.coords([1, 1, 0]) == (0,)
    assert q.coords([1, 0, 0]) != (0,)
    with pytest.raises(NotInKernel):
        q.coords([0, 0, 1])


def test_quotient_errors():
    with pytest.raises(ImageNotInKernel):
        quotient_space([[1, 0, 0]], [[0, 0, 1]])
    with pytest.raises(DependentBasis):
        quotient_space([[1, 0], [2, 0]], [])


def test_rationals_roundtrip():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-4, 2)) == "-2"
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational(" -7 ") == -7


def test_matrix_bounds_and_zero_entries():
    M = SparseRatMatrix(2, 2, {(0, 0): Fraction(0), (1, 1): Fraction(3)})
    assert M.nnz() == 1
    with pytest.raises(IndexError):
        SparseRatMatrix(2, 2, {(2, 0): Fraction(1)})


def test_echelon_tags_recover_coordinates():
    ech = Echelon()
    ech.add({0: 2, 1: 1}, tag={0: 1})
    ech.add({0: 1, 2: 3}, tag={1: 1})
    work, _, coords = ech.reduce({0: 3, 1: 1, 2: 3})  # = b0 + b1
    assert not work
    assert coords == {0: 1, 1: 1}


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_sympy_and_modular(M):
    r = rank(M)
    assert r == sympy_rank(M)
    assert r == rank_mod_p(M, seed=0)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity(M):
    ks = kernel_basis(M)
    assert rank(M) + len(ks) == M.cols
    for k in ks:
        assert not any(mul(M, k))
    assert [dict(sorted(v.items())) for v in kernel_basis_sparse(M)] == \
        [{i: x for i, x in enumerate(k) if x} for k in ks]


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_consistent_rhs(M, data):
    x = [data.draw(small_rational) for _ in range(M.cols)]
    b = mul(M, x)
    sol = solve_exact(M, b)
    assert mul(M, sol.particular) == b
    assert len(sol.homogeneous) == M.cols - rank(M)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_transpose_rank(M):
    assert rank(M) == rank(M.transpose())


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_json_roundtrip(M):
    assert SparseRatMatrix.from_json(M.to_json()) == M


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=4, max_cols=5), matrices(max_rows=5, max_cols=4))
def test_matmul_matches_sympy(A, B):
    if A.cols != B.rows:
        return
    assert (A @ B).to_dense() == (sympy.Matrix(A.to_dense()) * sympy.Matrix(B.to_dense())).tolist()


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=5, max_cols=6))
def test_quotient_dimension_formula(M):
    # kernel of M modulo the span of a couple of kernel vectors
    ks = kernel_basis(M)
    image = [tuple(a + b for a, b in zip(ks[0], ks[-1]))] if ks else []
    q = quotient_space(ks, image, ambient_dim=M.cols)
    img_rank = rank(SparseRatMatrix.from_dense(image)) if image else 0
    assert q.quotient_dim == len(ks) - img_rank
    for v in image:
        assert not any(q.coords(v))
