from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kirchhoff_hessian.exact_linalg import (
    ExactMatrix,
    IntPolynomial,
    Spectrum,
    char_poly,
    determinant,
    rank,
    rational_roots,
    select_independent_rows,
    verify_spectrum,
)
from kirchhoff_hessian.graphs import complete, laplacian
from kirchhoff_hessian.kirchhoff import hessian_at_ones

from conftest import sympy_charpoly_coeffs, sympy_matrix

I = ExactMatrix.identity
J = ExactMatrix.ones


def leibniz_det(m):
    n = m.rows
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i, p in enumerate(perm):
            term *= m[i, p]
        total += term
    return total


rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)
ints = st.integers(-9, 9)


@st.composite
def square(draw, elements=ints, max_n=6):
    n = draw(st.integers(1, max_n))
    return ExactMatrix([[draw(elements) for _ in range(n)] for _ in range(n)])


@st.composite
def rectangular(draw, elements=ints):
    r = draw(st.integers(1, 6))
    c = draw(st.integers(1, 6))
    return ExactMatrix([[draw(elements) for _ in range(c)] for _ in range(r)])


class TestDeterminant:
    def test_examples(self):
        assert determinant(I(3)) == 1
        assert determinant(J(3) + I(3)) == 4
        assert determinant(hessian_at_ones(complete(4))) == -4096

    def test_non_square(self):
        with pytest.raises(ValueError):
            determinant(ExactMatrix([[1, 2, 3]]))

    def test_integral_result_type(self):
        assert isinstance(determinant(ExactMatrix([[2, 1], [1, 3]])), int)

    def test_needs_pivoting(self):
        m = ExactMatrix([[0, 1, 2], [1, 0, 3], [4, -3, 8]])
        assert determinant(m) == leibniz_det(m) == -2

    @given(square(max_n=5))
    def test_vs_leibniz(self, m):
        assert determinant(m) == leibniz_det(m)

    @settings(max_examples=50)
    @given(square(elements=rationals, max_n=5))
    def test_rational_vs_sympy(self, m):
        assert Fraction(determinant(m)) == Fraction(str(sympy_matrix(m).det()))

    @settings(max_examples=40)
    @given(square(max_n=4), square(max_n=4))
    def test_block_diagonal_product(self, a, b):
        za = ExactMatrix.zeros(a.rows, b.cols)
        zb = ExactMatrix.zeros(b.rows, a.cols)
        m = ExactMatrix.block([[a, za], [zb, b]])
        assert determinant(m) == determinant(a) * determinant(b)


class TestRank:
    def test_examples(self):
        assert rank(J(3)) == 1
        assert rank(I(4)) == 4
        assert rank(laplacian(complete(4))) == 3
        assert rank(ExactMatrix.zeros(2, 3)) == 0

    @settings(max_examples=80)
    @given(rectangular())
    def test_vs_sympy(self, m):
        assert rank(m) == sympy_matrix(m).rank()

    @settings(max_examples=40)
    @given(rectangular(elements=rationals))
    def test_rational_vs_sympy(self, m):
        assert rank(m) == sympy_matrix(m).rank()

    @settings(max_examples=40)
    @given(rectangular(elements=st.integers(-1, 1)))
    def test_independent_rows(self, m):
        keep = select_independent_rows(m)
        assert len(keep) == rank(m)
        assert rank(m.submatrix(keep, range(m.cols))) == len(keep)
        rev = select_independent_rows(m, range(m.rows - 1, -1, -1))
        assert len(rev) == len(keep)


class TestCharPoly:
    def test_examples(self):
        t1 = IntPolynomial([-1, 1])
        assert char_poly(I(2)) == t1 * t1
        assert char_poly(J(2)) == IntPolynomial([0, 1]) * IntPolynomial([-2, 1])
        want = IntPolynomial([-2, 1]) * IntPolynomial([1, 1]) ** 2
        assert char_poly(J(3) - I(3)) == want

    def test_non_square(self):
        with pytest.raises(ValueError):
            char_poly(ExactMatrix([[1, 2]]))

    @settings(max_examples=80)
    @given(square())
    def test_vs_sympy(self, m):
        assert list(char_poly(m).coefficients) == sympy_charpoly_coeffs(m)

    @settings(max_examples=40)
    @given(square(elements=rationals, max_n=5))
    def test_rational_vs_sympy(self, m):
        assert list(char_poly(m).coefficients) == sympy_charpoly_coeffs(m)

    @given(square())
    def test_constant_term_is_signed_det(self, m):
        p = char_poly(m)
        assert p.degree == m.rows and p.leading == 1
        assert determinant(m) == (-1) ** m.rows * p(0)

    def test_hessenberg_zero_subdiagonal(self):
        # block upper triangular input exercises the no-pivot branch
        m = ExactMatrix([[1, 2, 3, 4], [0, 5, 6, 7], [0, 0, 8, 9], [0, 0, 0, 1]])
        assert char_poly(m) == IntPolynomial.from_roots([1, 5, 8, 1])


class TestPolynomial:
    def test_arith(self):
        p = IntPolynomial([1, 2, 1])
        q = IntPolynomial([1, 1])
        assert p.divmod(q) == (q, IntPolynomial())
        assert p.gcd(q * IntPolynomial([3, 1])) == q
        assert p.derivative() == IntPolynomial([2, 2])
        assert p(Fraction(1, 2)) == Fraction(9, 4)
        assert IntPolynomial([0, 0]).is_zero()

    def test_rational_roots(self):
        p = IntPolynomial.from_roots([Fraction(3, 2), Fraction(3, 2), -4, 0]) * IntPolynomial([2, 0, 1])
        pairs, residual = rational_roots(p)
        assert dict(pairs) == {Fraction(3, 2): 2, -4: 1, 0: 1}
        assert residual == IntPolynomial([2, 0, 1])

    def test_rational_roots_large(self):
        roots = [-2 * 7**3, -(7**4), 2 * 5 * 7**4]
        pairs, residual = rational_roots(IntPolynomial.from_roots(roots + roots[:1] * 3))
        assert dict(pairs) == {roots[0]: 4, roots[1]: 1, roots[2]: 1}
        assert residual == IntPolynomial([1])


class TestSpectrum:
    def test_canonical(self):
        s = Spectrum([(-4, 2), (24, 1), (-6, 2), (-4, 1), (Fraction(-2, 3), 0)])
        assert s.pairs == ((24, 1), (-4, 3), (-6, 2))
        assert s.dim == 6
        assert s.product() == -55296
        assert s.trace() == 0
        assert s.inertia() == (1, 5, 0)

    def test_verify_examples(self):
        H = hessian_at_ones(complete(4))
        rep = verify_spectrum(H, Spectrum([(16, 1), (-4, 3), (-2, 2)]))
        assert rep.char_poly_match and rep.diagonalizable
        assert rep.inertia == (1, 5, 0)
        rep = verify_spectrum(I(2), Spectrum([(1, 2)]))
        assert rep.ok and rep.inertia == (2, 0, 0)

    def test_verify_wrong_claim(self):
        H = hessian_at_ones(complete(4))
        rep = verify_spectrum(H, Spectrum([(16, 1), (-4, 2), (-2, 3)]))
        assert not rep.char_poly_match and rep.inertia is None

    def test_verify_detects_jordan_block(self):
        rep = verify_spectrum(ExactMatrix([[1, 1], [0, 1]]), Spectrum([(1, 2)]))
        assert rep.char_poly_match and not rep.diagonalizable

    def test_multiplicity_mismatch(self):
        with pytest.raises(ValueError):
            verify_spectrum(I(3), Spectrum([(1, 2)]))


def test_matrix_basics():
    m = ExactMatrix([[1, Fraction(1, 2)], [Fraction(1, 2), 3]], symmetric=True)
    assert m.is_symmetric() and not m.is_integral()
    assert (m @ I(2)) == m
    assert m.T == m
    assert m.trace() == 4
    assert (2 * m).is_integral()
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3, 4]], symmetric=True)
    with pytest.raises(TypeError):
        ExactMatrix([[1.5]])
