import numpy as np
import pytest

from hearthledger import from_samples


def random_distribution(rng, n_min=2, n_max=1000, uniform_weights=False):
    """Incomes in (0, 1e6): a mix of uniform and lognormal shapes, with weights."""
    n = int(rng.integers(n_min, n_max + 1))
    if rng.random() < 0.5:
        y = rng.uniform(1.0, 1e6, n)
    else:
        y = np.clip(rng.lognormal(np.log(2e4), rng.uniform(0.2, 1.5), n), 1.0, 1e6 - 1)
    if uniform_weights:
        w = np.ones(n)
    elif rng.random() < 0.5:
        w = rng.integers(1, 50, n).astype(float)
    else:
        w = rng.uniform(0.01, 1.0, n)
    return from_samples(y, w)


@pytest.fixture
def rng():
    return np.random.default_rng(20141102)
