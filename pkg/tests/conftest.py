import numpy as np
import pytest
from hypothesis import strategies as st

from qbayes.core import density_from_bloch


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def bloch(x, y, z):
    return density_from_bloch([x, y, z])


@st.composite
def bloch_vectors(draw, max_norm=1.0):
    """Points of the closed ball of radius ``max_norm`` (direction x radius draws)."""
    v = np.array([draw(st.floats(-1, 1)) for _ in range(3)])
    n = np.linalg.norm(v)
    if n < 1e-9:
        return np.zeros(3)
    r = draw(st.floats(0, max_norm))
    return v / n * r


@st.composite
def unit_axes(draw):
    v = np.array([draw(st.floats(-1, 1)) for _ in range(3)])
    n = np.linalg.norm(v)
    if n < 1e-3:
        return np.array([0.0, 0.0, 1.0])
    return v / n
