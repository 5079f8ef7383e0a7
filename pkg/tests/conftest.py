"""Shared helpers: literal matrix construction and hypothesis strategies."""

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from blockginv.matrices import Matrix
from blockginv.scalars import GaussianRational, parse_scalar

settings.register_profile(
    "suite",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def mat(rows):
    """Build a Matrix from lists of scalar strings or integers."""
    return Matrix.from_rows([
        [parse_scalar(x) if isinstance(x, str) else GaussianRational(x)
         for x in row]
        for row in rows
    ])


_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def scalars():
    return st.builds(GaussianRational, _fractions, _fractions)


def nonzero_scalars():
    return scalars().filter(bool)


def square_matrices(min_n=1, max_n=3):
    def build(n):
        return st.lists(
            st.lists(scalars(), min_size=n, max_size=n),
            min_size=n, max_size=n,
        ).map(Matrix.from_rows)
    return st.integers(min_n, max_n).flatmap(build)


def rect_matrices(max_dim=3):
    def build(dims):
        rows, cols = dims
        return st.lists(
            st.lists(scalars(), min_size=cols, max_size=cols),
            min_size=rows, max_size=rows,
        ).map(Matrix.from_rows)
    return st.tuples(
        st.integers(1, max_dim), st.integers(1, max_dim)
    ).flatmap(build)
