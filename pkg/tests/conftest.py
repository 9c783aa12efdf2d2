from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from dirac_kahler import Spinor4


def rand_spinor(rng: np.random.Generator, scale: float = 1.0) -> Spinor4:
    return Spinor4(scale * (rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)))


def rand_complex(rng: np.random.Generator) -> complex:
    return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))


def linear_fit_r2(x, y) -> tuple[float, float]:
    """Slope and R^2 of a least-squares line through (x, y)."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    slope, intercept = np.polyfit(x, y, 1)
    ss_res = np.sum((y - (slope * x + intercept)) ** 2)
    ss_tot = np.sum((y - y.mean()) ** 2)
    return float(slope), float(1 - ss_res / ss_tot)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)
spinors = st.lists(complexes, min_size=4, max_size=4).map(Spinor4)
