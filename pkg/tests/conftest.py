"""Shared fixtures."""

import numpy as np
import pytest

from tfa.domain import SearchConfig


@pytest.fixture
def rng(request):
    """PCG64 generator seeded from the test name, so every test draws its own stream."""
    seed = sum(ord(char) * (index + 1) for index, char in enumerate(request.node.name))
    return np.random.default_rng(seed)


@pytest.fixture
def random_complex(rng):
    def draw(*shape):
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

    return draw


@pytest.fixture
def small_search():
    return SearchConfig(trials=8, ascent_steps=50, seed=42)
