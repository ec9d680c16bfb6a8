"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from diracsym.scalars import ExactComplex, ExactMatrix

small_fraction = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))
exact_complex = st.builds(ExactComplex, small_fraction, small_fraction)


def exact_matrices(dim: int = 4):
    return st.lists(
        st.lists(exact_complex, min_size=dim, max_size=dim), min_size=dim, max_size=dim
    ).map(ExactMatrix)
