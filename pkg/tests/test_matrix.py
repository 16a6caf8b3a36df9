from fractions import Fraction

import pytest

from eigenwedge import (
    IndexSubset,
    Matrix,
    RankError,
    ShapeError,
    SizeError,
    ZeroMatrixError,
    det,
    det_laplace,
    inverse,
    kernel_basis,
    rank,
    rank1_factor,
    submatrix_det,
)
from eigenwedge.suite import random_int_matrix

from conftest import mat

A2 = mat([[1, 2], [3, 4]])


def test_submatrix_det_examples():
    full = IndexSubset((1, 2), 2)
    assert submatrix_det(A2, full, full) == -2
    assert submatrix_det(A2, IndexSubset((1,), 2), IndexSubset((2,), 2)) == 2
    I3 = Matrix.identity(3)
    for rows in [(1, 2), (1, 3), (2, 3)]:
        s = IndexSubset(rows, 3)
        assert submatrix_det(I3, s, s) == 1


def test_laplace_examples():
    assert det_laplace(Matrix.identity(4)) == 1
    assert det_laplace(A2) == -2
    assert det_laplace(Matrix.diag([1, 2, 3])) == 6


def test_laplace_size_limit():
    with pytest.raises(SizeError):
        det_laplace(Matrix.identity(9))


def test_det_agrees_with_laplace(rng):
    for _ in range(60):
        n = rng.randint(0, 6)
        A = random_int_matrix(rng, n)
        assert det(A) == det_laplace(A)
        assert abs(det(A.to_mode("float")) - complex(det_laplace(A))) <= 1e-9 * max(1, abs(complex(det(A))))


def test_det_of_empty_matrix_is_one():
    assert det(Matrix.zeros(0, 0)) == 1


def test_det_requires_square():
    with pytest.raises(ShapeError):
        det(mat([[1, 2, 3], [4, 5, 6]]))


def test_kernel_basis_examples():
    K = kernel_basis(Matrix.diag([0, 0, 3]))
    assert K.shape == (3, 2)
    assert rank(K) == 2
    assert all(K[2, j] == 0 for j in range(2))
    assert kernel_basis(Matrix.identity(3)).shape == (3, 0)
    K = kernel_basis(mat([[0, 1], [0, 1]]))
    assert K.shape == (2, 1) and K[1, 0] == 0 and K[0, 0] != 0


def test_kernel_basis_float_is_annihilated(rng):
    A = random_int_matrix(rng, 4, 2) @ random_int_matrix(rng, 2, 4)
    K = kernel_basis(A.to_mode("float"))
    assert K.ncols == 4 - rank(A)
    assert (A.to_mode("float") @ K).max_abs() < 1e-10


def test_rank1_factor_examples():
    M = mat([[2, 4], [1, 2]])
    x, y = rank1_factor(M)
    assert x @ y.T == M
    assert x[0, 0] / x[1, 0] == 2
    E = Matrix.zeros(3, 3)
    E11 = E + mat([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    x, y = rank1_factor(E11)
    assert x @ y.T == E11
    with pytest.raises(RankError):
        rank1_factor(Matrix.identity(2))
    with pytest.raises(ZeroMatrixError):
        rank1_factor(Matrix.zeros(2, 2))


def test_inverse_exact():
    Ai = inverse(A2)
    assert A2 @ Ai == Matrix.identity(2)
    assert Ai[0, 0] == -2 and Ai[1, 0] == Fraction(3, 2)


def test_matrix_is_immutable_value():
    B = A2.shift(1)
    assert A2 == mat([[1, 2], [3, 4]])
    assert B == mat([[0, 2], [3, 3]])
    assert hash(A2) == hash(mat([[1, 2], [3, 4]])) if hasattr(Matrix, "__hash__") and Matrix.__hash__ else True


def test_mode_mismatch_is_reported():
    with pytest.raises(ShapeError):
        A2 @ Matrix.identity(3)
