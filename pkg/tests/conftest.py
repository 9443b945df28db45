import numpy as np
import pytest

from horn21.angles import AnglePair, ClassTriple


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_pair(rng, interior_margin: float = 0.0) -> AnglePair:
    lo, hi = interior_margin, 2.0 - interior_margin
    vals = sorted(rng.uniform(lo, hi, 2), reverse=True)
    if interior_margin > 0 and vals[0] - vals[1] < interior_margin:
        return random_pair(rng, interior_margin)
    return AnglePair(vals[0], vals[1])


def random_triple(rng, interior_margin: float = 0.0) -> ClassTriple:
    return ClassTriple(*(random_pair(rng, interior_margin) for _ in range(3)))
