"""Shared fixtures for the Fourier learner tests."""

import numpy as np
import pytest

from src.domain import Dataset, FitConfig, SampleRole
from src.synth import SynthSpec, generate


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def benchmark_dataset():
    """The published benchmark: 512 noisy samples on [-25, 25], seed 0."""
    return generate(SynthSpec())


@pytest.fixture
def small_config():
    return FitConfig(m=3, max_iter=30, sigma_min=1e-6)


def make_roles(n, pattern=(SampleRole.TRAIN, SampleRole.TRAIN, SampleRole.VALIDATION, SampleRole.TEST)):
    """Cycle `pattern` over n samples."""
    return tuple(pattern[i % len(pattern)] for i in range(n))


@pytest.fixture
def smooth_dataset():
    """64 samples of a smooth function with a fixed, interleaved role pattern."""
    x = np.linspace(0.0, 10.0, 64)
    y = np.sin(0.6 * x) + 0.3 * np.cos(0.2 * x)
    return Dataset(x, y, make_roles(64))
