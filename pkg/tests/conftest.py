import numpy as np
import pytest

from wisardkit.dataset import Dataset
from wisardkit.encoding import FeatureVector


def make_separable_dataset(seed=123, d=2048, n_pos=63, n_neg=15, noise=0.1):
    """Two classes near +u and -u for a fixed random sign pattern u.

    With noise well below the unit margin, every positive binarizes to the
    same bit pattern and every negative to its complement, so any WiSARD
    configuration classifies the dataset perfectly.
    """
    rng = np.random.default_rng(seed)
    u = rng.choice([-1.0, 1.0], size=d)
    samples = [
        FeatureVector(id=f"pos{i:03d}", label=1, values=u + noise * rng.standard_normal(d))
        for i in range(n_pos)
    ]
    samples += [
        FeatureVector(id=f"neg{i:03d}", label=0, values=-u + noise * rng.standard_normal(d))
        for i in range(n_neg)
    ]
    return Dataset(samples=tuple(samples))


def random_patterns(rng, count, length):
    return rng.integers(0, 2, size=(count, length)).astype(np.uint8)


@pytest.fixture
def separable_small():
    """63/15 class counts at a small dimension; fast to cross-validate."""
    return make_separable_dataset(seed=9, d=32)
