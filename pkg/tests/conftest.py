import numpy as np
import pytest
from hypothesis import strategies as st

from schlicht import TaylorSeries


def complex_list(min_size=3, max_size=10, bound=1.0):
    """Lists of complex numbers with |re|, |im| <= bound."""
    part = st.floats(-bound, bound, allow_nan=False, allow_infinity=False)
    return st.lists(st.tuples(part, part), min_size=min_size, max_size=max_size) \
        .map(lambda lst: [complex(a, b) for a, b in lst])


def series_strategy(order=12, bound=1.0):
    """Random series at a fixed order with bounded coefficients."""
    return complex_list(min_size=2, max_size=order + 1, bound=bound) \
        .map(lambda c: TaylorSeries(c, order))


def anchored_series(order=12, bound=0.5, c0=1.0):
    """Series with a pinned constant term and bounded higher coefficients."""
    return complex_list(min_size=1, max_size=order, bound=bound) \
        .map(lambda c: TaylorSeries([c0] + c, order))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
