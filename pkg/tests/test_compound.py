import pytest

from eigenwedge import (
    DomainError,
    Matrix,
    adjugate_by_conjugation,
    adjugate_trace,
    complement_sign_matrix,
    compound,
    delta_matrix,
    det,
    det_laplace,
    det_sum,
    higher_adjugate,
)
from eigenwedge.suite import random_int_matrix

from conftest import mat

A2 = mat([[1, 2], [3, 4]])


def test_compound_examples():
    assert compound(Matrix.identity(3), 2) == Matrix.identity(3)
    assert compound(Matrix.diag([1, 2, 3]), 2) == Matrix.diag([2, 3, 6])
    assert compound(A2, 2) == mat([[-2]])
    assert compound(A2, 0) == mat([[1]])


def test_compound_rectangular():
    A = mat([[1, 2, 3], [4, 5, 6]])
    assert compound(A, 2) == mat([[-3, -6, -3]])
    with pytest.raises(DomainError):
        compound(A, 3)


def test_adjugate_examples():
    assert higher_adjugate(A2, 1) == mat([[4, -2], [-3, 1]])
    assert higher_adjugate(Matrix.diag([1, 2, 3]), 2) == Matrix.diag([3, 2, 1])
    assert higher_adjugate(Matrix.diag([0, 0, 3]), 1) == Matrix.zeros(3, 3)
    assert higher_adjugate(A2, 0) == mat([[-2]])
    assert higher_adjugate(A2, 2) == mat([[1]])
    with pytest.raises(DomainError):
        higher_adjugate(A2, 3)


def test_classical_adjugate_inverse(rng):
    for _ in range(20):
        A = random_int_matrix(rng, rng.randint(1, 5))
        assert A @ higher_adjugate(A, 1) == Matrix.identity(A.nrows).scale(det(A))


def test_product_law_uses_first_power_of_det(rng):
    # C_k(A) adj_k(A) is det(A) I, checked against the brute-force determinant
    for _ in range(40):
        n = rng.randint(1, 5)
        A = random_int_matrix(rng, n)
        d = det_laplace(A)
        for k in range(n + 1):
            C, M = compound(A, k), higher_adjugate(A, k)
            N = C.nrows
            assert C @ M == Matrix.identity(N).scale(d)
            assert M @ C == Matrix.identity(N).scale(d)


def test_det_power_k_form_fails():
    A = mat([[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    C, M = compound(A, 2), higher_adjugate(A, 2)
    assert C @ M != Matrix.identity(3).scale(det(A) ** 2)


def test_adjugate_trace_is_principal_minor_sum(rng):
    for _ in range(20):
        n = rng.randint(1, 5)
        A = random_int_matrix(rng, n)
        for k in range(n + 1):
            assert adjugate_trace(A, k) == higher_adjugate(A, k).trace()


def test_delta_examples():
    assert delta_matrix(2) == mat([[0, -1], [1, 0]])
    assert delta_matrix(1) == mat([[-1]])
    for n in range(1, 7):
        D = delta_matrix(n)
        assert D @ D.T == Matrix.identity(n)


def test_conjugation_form(rng):
    for _ in range(30):
        n = rng.randint(1, 5)
        A = random_int_matrix(rng, n)
        for k in range(1, n):
            assert adjugate_by_conjugation(A, k) == higher_adjugate(A, k)


def test_sign_matrix_matches_delta_at_the_ends(rng):
    for n in range(2, 6):
        D = delta_matrix(n)
        assert complement_sign_matrix(n, 1) == compound(D, 1)
        H, C = complement_sign_matrix(n, n - 1), compound(D, n - 1)
        assert H == C or H == C.scale(-1)


def test_literal_delta_conjugation_fails_in_the_middle():
    A = mat([[1, 2, 0, 1], [0, 1, 3, 2], [1, 0, 1, 0], [2, 1, 0, 1]])
    D2 = compound(delta_matrix(4), 2)
    assert D2 @ compound(A.T, 2) @ D2.T != higher_adjugate(A, 2)


def test_det_sum_examples():
    I2 = Matrix.identity(2)
    assert det_sum(I2, I2) == 4
    assert det_sum(I2, A2) == 4
    assert det_sum(A2, Matrix.zeros(2, 2)) == -2


def test_det_sum_random(rng):
    for _ in range(30):
        n = rng.randint(1, 5)
        A, B = random_int_matrix(rng, n), random_int_matrix(rng, n)
        assert det_sum(A, B) == det(A + B)
