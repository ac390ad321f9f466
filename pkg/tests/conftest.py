import numpy as np
import pytest

from huefit.colors import RgbColor, srgb_to_lab
from huefit.graphs import LabeledPointSet
from huefit.names import default_name_matrix


@pytest.fixture(scope="session")
def nm():
    return default_name_matrix()


@pytest.fixture(scope="session")
def white():
    return srgb_to_lab(RgbColor(255, 255, 255))


def cluster_set(m: int, seed: int, points_per_class: int = 25,
                sigma: float = 18.0) -> LabeledPointSet:
    """Gaussian blobs on a 400x400 canvas, one blob per class."""
    rng = np.random.default_rng(seed)
    centers = rng.uniform(50.0, 350.0, (m, 2))
    pts = np.vstack([rng.normal(c, sigma, (points_per_class, 2))
                     for c in centers])
    labels = np.repeat(np.arange(m), points_per_class)
    return LabeledPointSet(points=pts, labels=labels, m=m)


@pytest.fixture
def clusters():
    return cluster_set
