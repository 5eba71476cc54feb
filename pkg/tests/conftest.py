import numpy as np
import pytest
from hypothesis import strategies as st

from isoperim.fourier import FourierCoeffs, random_band_limited


@st.composite
def band_limited(draw, max_degree=8, max_amplitude=1.0):
    """Random real boundary data with ``sup|u| <= amplitude``."""
    seed = draw(st.integers(0, 2**32 - 1))
    n_max = draw(st.integers(1, max_degree))
    amplitude = draw(st.floats(0.05, max_amplitude))
    return random_band_limited(np.random.default_rng(seed), n_max, amplitude)


@pytest.fixture
def cos_theta():
    return FourierCoeffs.from_modes({1: 0.5, -1: 0.5})


@pytest.fixture(scope="session")
def random_boundaries():
    """The fixed set of 20 random band-limited data used by the acceptance checks."""
    rng = np.random.default_rng(20240601)
    return [random_band_limited(rng, int(rng.integers(1, 9)), float(rng.uniform(0.1, 1.0))) for _ in range(20)]
