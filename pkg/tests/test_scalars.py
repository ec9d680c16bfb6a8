from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given

from diracsym.clifford import gamma
from diracsym.scalars import (
    ExactComplex,
    ExactMatrix,
    I_UNIT,
    ONE,
    SingularMatrixError,
    ZERO,
    as_exact,
    exact_rank,
    matrix_inverse,
    matrix_max_abs_diff,
    matrix_product,
    matrix_star_family,
)

from strategies import exact_complex, exact_matrices


def test_complex_arithmetic():
    a = ExactComplex(Fraction(1, 2), 3)
    b = ExactComplex(-2, Fraction(1, 3))
    assert a * b == ExactComplex(-2, Fraction(-35, 6))
    assert (a / b) * b == a
    assert I_UNIT * I_UNIT == -ONE
    assert as_exact(2 + 3j) == ExactComplex(2, 3)


def test_complex_serialization():
    assert str(ExactComplex(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4 i"
    assert str(ExactComplex(0, 1)) == "1 i"
    assert str(ExactComplex(5, 0)) == "5"


def test_float_input_is_not_silently_rounded():
    with pytest.raises((TypeError, ValueError)):
        as_exact(0.1)


@given(exact_complex, exact_complex)
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


def test_product_examples():
    g0 = gamma(0)
    assert matrix_product(g0, g0) == ExactMatrix.identity(4)
    sx = ExactMatrix([[0, 1], [1, 0]])
    sy = ExactMatrix([[0, -1j], [1j, 0]])
    sz = ExactMatrix([[1, 0], [0, -1]])
    assert matrix_product(sx, sy) == sz.scale(I_UNIT)


def test_mixed_towers_rejected():
    with pytest.raises(TypeError):
        matrix_product(gamma(0), np.eye(4))


def test_dimension_restriction():
    with pytest.raises(ValueError):
        ExactMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_star_family_examples():
    assert matrix_star_family(gamma(2), "conjugate") == -gamma(2)
    assert matrix_star_family(ExactMatrix.identity(4), "transpose") == ExactMatrix.identity(4)
    assert matrix_star_family(gamma(1), "adjoint") == -gamma(1)
    with pytest.raises(ValueError):
        matrix_star_family(gamma(1), "inverse")


def test_inverse_examples():
    assert matrix_inverse(gamma(5)) == gamma(5)
    assert matrix_inverse(ExactMatrix.identity(4)) == ExactMatrix.identity(4)
    assert matrix_inverse(gamma(0).scale(I_UNIT)) == gamma(0).scale(-I_UNIT)


def test_singular_matrix():
    with pytest.raises(SingularMatrixError):
        matrix_inverse(ExactMatrix.zeros(4))
    with pytest.raises(SingularMatrixError):
        matrix_inverse(ExactMatrix([[1, 2], [2, 4]]))


def test_max_abs_diff_examples():
    m = np.arange(16, dtype=complex).reshape(4, 4)
    assert matrix_max_abs_diff(m, m) == 0
    assert matrix_max_abs_diff(np.eye(4), 2 * np.eye(4)) == 1
    assert matrix_max_abs_diff(gamma(0).to_numpy(), gamma(0)) == 0
    with pytest.raises(ValueError):
        matrix_max_abs_diff(np.eye(4), np.eye(2))
    with pytest.raises(ValueError):
        matrix_max_abs_diff(np.full((2, 2), np.nan), np.eye(2))


@given(exact_matrices(), exact_matrices(), exact_matrices())
def test_associativity(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)


@given(exact_matrices())
def test_adjoint_is_conjugate_transpose(a):
    assert a.adjoint() == a.conjugate().transpose()


@given(exact_matrices())
def test_inverse_property(a):
    assume(exact_rank(list(a.rows)) == 4)
    assert a @ matrix_inverse(a) == ExactMatrix.identity(4)
    assert matrix_inverse(a) @ a == ExactMatrix.identity(4)


@given(exact_matrices(2))
def test_float_conversion_of_gaussian_rationals(a):
    # float rounding of non-dyadic fractions stays far below any tolerance
    assert matrix_max_abs_diff(a.to_numpy(), a) == 0


def test_rank():
    assert exact_rank([[ONE, ZERO], [ZERO, ONE]]) == 2
    assert exact_rank([[ONE, I_UNIT], [I_UNIT, -ONE]]) == 1
    assert exact_rank([]) == 0
