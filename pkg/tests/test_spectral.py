import cmath
from fractions import Fraction
from math import factorial

import pytest

from eigenwedge import (
    CharPoly,
    DomainError,
    Matrix,
    RankError,
    aberth_roots,
    charpoly_faddeev,
    charpoly_via_adjugates,
    cluster_multiplicities,
    geometric_multiplicity,
    jacobi_derivative,
    poly_derivative_eval,
    rank,
    rational_roots,
    spectrum,
)
from eigenwedge.spectral import is_algebraically_simple
from eigenwedge.suite import jordan_embedded, planted_spectrum, random_int_matrix

from conftest import mat

A2 = mat([[1, 2], [3, 4]])
D123 = Matrix.diag([1, 2, 3])


def coeffs(p):
    return list(p.coeffs)


def test_charpoly_examples():
    assert coeffs(charpoly_via_adjugates(A2)) == [-2, -5, 1]
    assert coeffs(charpoly_via_adjugates(D123)) == [6, -11, 6, -1]
    assert coeffs(charpoly_via_adjugates(Matrix.zeros(3, 3))) == [0, 0, 0, -1]
    assert coeffs(charpoly_faddeev(Matrix.identity(3))) == [1, -3, 3, -1]
    assert coeffs(charpoly_faddeev(D123)) == [6, -11, 6, -1]


def test_charpoly_routes_agree(rng):
    for _ in range(40):
        A = random_int_matrix(rng, rng.randint(1, 6))
        assert charpoly_via_adjugates(A).coeffs == charpoly_faddeev(A).coeffs


def test_jacobi_examples():
    assert jacobi_derivative(D123, 0, 1) == -11
    assert jacobi_derivative(D123, 0, 2) == 12
    for n in range(1, 5):
        A = Matrix.diag(list(range(1, n + 1)))
        assert jacobi_derivative(A, 7, n) == (-1) ** n * factorial(n)


def test_poly_derivative_examples():
    p = charpoly_via_adjugates(A2)
    assert poly_derivative_eval(p, 1, 1) == -3
    assert poly_derivative_eval(p, 0, 2) == -8
    assert poly_derivative_eval(p, 3, 5) == 0


def test_jacobi_matches_polynomial(rng):
    for _ in range(25):
        n = rng.randint(1, 5)
        A = random_int_matrix(rng, n)
        p = charpoly_faddeev(A)
        lam = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        for j in range(1, n + 1):
            assert jacobi_derivative(A, lam, j) == poly_derivative_eval(p, j, lam)


def test_jacobi_range():
    with pytest.raises(DomainError):
        jacobi_derivative(A2, 0, 3)


def test_aberth_examples():
    roots = sorted(aberth_roots(CharPoly((2, -3, 1), "float")), key=lambda z: z.real)
    assert abs(roots[0] - 1) < 1e-12 and abs(roots[1] - 2) < 1e-12
    roots = aberth_roots(charpoly_faddeev(Matrix.identity(3)).to_mode("float"))
    assert len(roots) == 3 and all(abs(z - 1) < 1e-4 for z in roots)
    (root,) = aberth_roots(CharPoly((3, -2), "float"))
    assert abs(root - 1.5) < 1e-15


def test_aberth_complex_roots():
    p = CharPoly((1, 0, 1), "float")
    roots = sorted(aberth_roots(p), key=lambda z: z.imag)
    assert abs(roots[0] + 1j) < 1e-12 and abs(roots[1] - 1j) < 1e-12


def test_aberth_roots_of_unity():
    p = CharPoly((-1, 0, 0, 0, 0, 1), "float")
    for z in aberth_roots(p):
        assert abs(z**5 - 1) < 1e-12


def _entries(A):
    out = spectrum(A)
    return sorted(
        ((complex(e.eigenvalue).real, e.algebraic_multiplicity, e.geometric_multiplicity) for e in out),
    )


def test_spectrum_examples():
    for mode in ("exact", "float"):
        A = Matrix.diag([2, 2, 5], mode)
        got = [(round(x, 9), a, g) for x, a, g in _entries(A)]
        assert got == [(2.0, 2, 2), (5.0, 1, 1)]
        got = [(round(x, 6), a, g) for x, a, g in _entries(mat([[1, 1], [0, 1]], mode))]
        assert got == [(1.0, 2, 1)]
        got = [(round(x, 9), a, g) for x, a, g in _entries(Matrix.diag([1, 2], mode))]
        assert got == [(1.0, 1, 1), (2.0, 1, 1)]


def test_cluster_multiplicities_direct():
    A = Matrix.diag([2, 2, 5], "float")
    roots = aberth_roots(charpoly_faddeev(A))
    out = sorted(cluster_multiplicities(roots, A), key=lambda e: e.eigenvalue.real)
    assert [(e.algebraic_multiplicity, e.geometric_multiplicity) for e in out] == [(2, 2), (1, 1)]
    assert abs(out[0].eigenvalue - 2) < 1e-12


def test_high_multiplicity_cluster_is_refined(rng):
    A, _ = None, None
    A = planted_spectrum(rng, 6, 5, 3).to_mode("float")
    out = spectrum(A)
    big = max(out, key=lambda e: e.algebraic_multiplicity)
    assert big.algebraic_multiplicity == 5
    assert abs(big.eigenvalue - 3) < 1e-8


def test_geometric_multiplicity_examples():
    assert geometric_multiplicity(Matrix.diag([2, 2, 5]), 2) == 2
    assert geometric_multiplicity(mat([[1, 1], [0, 1]]), 1) == 1
    assert geometric_multiplicity(Matrix.identity(3).scale(4), 4) == 3
    with pytest.raises(DomainError):
        geometric_multiplicity(Matrix.diag([2, 2, 5]), 3)


def test_geometric_multiplicity_matches_kernel(rng):
    for _ in range(40):
        n = rng.randint(2, 6)
        k = rng.randint(1, n - 1)
        lam = rng.randint(-3, 3)
        A = planted_spectrum(rng, n, k, lam)
        assert geometric_multiplicity(A, lam) == n - rank(A.shift(lam)) == k
        B = jordan_embedded(rng, n, rng.randint(2, n), lam)
        assert geometric_multiplicity(B, lam) == n - rank(B.shift(lam))


def test_algebraic_simplicity():
    assert is_algebraically_simple(Matrix.diag([1, 2]), 1)
    assert not is_algebraically_simple(mat([[1, 1], [0, 1]]), 1)
    assert not is_algebraically_simple(Matrix.diag([2, 2, 5]), 2)


def test_rational_roots():
    p = charpoly_faddeev(mat([[0, 1, 0], [0, 0, 1], [Fraction(1, 2), Fraction(-1, 2), 1]]))
    found = {complex(r): m for r, m in rational_roots(p)}
    assert found == {1: 1}
    got = {complex(r): m for r, m in rational_roots(charpoly_faddeev(Matrix.diag([2, 2, 5])))}
    assert got == {2: 2, 5: 1}


def _multiplicities(A):
    return sorted((round(complex(e.eigenvalue).real, 6), e.algebraic_multiplicity, e.geometric_multiplicity)
                  for e in spectrum(A.to_mode("float")))


def test_noisy_coefficients_keep_triple_root_together():
    A = mat([[-303, 114, 38, 836], [8, -2, -1, -22], [0, 0, 1, 0], [-112, 42, 14, 309]])
    assert _multiplicities(A) == [(1.0, 3, 3), (2.0, 1, 1)]


def test_fivefold_root_clusters():
    A = Matrix.diag([-3] * 6)
    A = A + mat([[0] * 6, [0, 0, 0, 6, 0, 0], [0] * 6, [0, 0, 0, 6, 0, 0], [0] * 6, [0] * 6])
    assert _multiplicities(A) == [(-3.0, 5, 5), (3.0, 1, 1)]


def test_distinct_roots_are_not_merged_at_a_critical_point():
    # P'(c) vanishes between the simple roots 2 and 4; they must stay apart
    A = Matrix.diag([1, 1, 1, 2, 4, -3])
    assert _multiplicities(A) == [(-3.0, 1, 1), (1.0, 3, 3), (2.0, 1, 1), (4.0, 1, 1)]


def test_matrix_polish_sharpens_simple_root():
    from eigenwedge.spectral import polish_on_matrix

    A = mat(
        [[-933, -284, -92, 1466, 984], [-8, -11, 0, 14, 4], [-62, -12, -7, 96, 70],
         [-492, -156, -48, 774, 516], [-156, -40, -16, 244, 168]]
    )
    z = polish_on_matrix(A, -1.9999999993256319, 1, 0.5)
    assert abs(z + 2) < 1e-11
    assert geometric_multiplicity(A.to_mode("float"), z) == 1
    z = polish_on_matrix(A, -2.9999999997384155, 2, 0.5)
    assert abs(z + 3) < 1e-11
