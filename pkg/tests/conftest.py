import numpy as np
import pytest
from hypothesis import strategies as st

from normspace import FiniteMetric, validate_metric


@pytest.fixture
def rng():
    return np.random.Generator(np.random.MT19937(20240601))


@pytest.fixture
def equilateral():
    return validate_metric(np.ones((3, 3)) - np.eye(3))


@pytest.fixture
def line3():
    return validate_metric([[0, 1, 2], [1, 0, 1], [2, 1, 0]])


@pytest.fixture
def star():
    return validate_metric([[0, 1, 1, 1], [1, 0, 2, 2], [1, 2, 0, 2], [1, 2, 2, 0]])


@st.composite
def banded_metrics(draw, n=None):
    """Metrics with every distance in [1, 2]: the triangle inequality is automatic."""
    n = draw(st.integers(3, 7)) if n is None else n
    vals = draw(st.lists(st.floats(1.0, 2.0), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return FiniteMetric.from_vector(n, vals)


@st.composite
def metric_triples(draw):
    n = draw(st.integers(3, 7))
    return tuple(draw(banded_metrics(n)) for _ in range(3))
