"""
Synthetic benchmark data for the Fourier learner.

The benchmark response is

    u(x) = (cos(0.1x²) + sin(8x) - sin(1 + 0.1x²) - cos(1 + 8x)) · exp(-0.01x²)

sampled at equidistant points (both interval endpoints included) with
additive Gaussian noise. Noise comes from `numpy.random.default_rng(seed)`
(PCG64 bit generator, `normal` sampler), so equal seeds give equal data.
"""

from dataclasses import dataclass
from typing import Union
import numpy as np

from ..domain.errors import ConfigError
from ..domain.types import Dataset

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class SynthSpec:
    """
    Benchmark sampling parameters (defaults: the published setup).

    Parameters
    ----------
    n_points : int
        Number of samples (>= 2).
    x_min, x_max : float
        Interval, x_min < x_max; both ends are sampled.
    noise_mean, noise_std : float
        Gaussian noise parameters (noise_std >= 0).
    seed : int
        Seed of the noise stream.
    """

    n_points: int = 512
    x_min: float = -25.0
    x_max: float = 25.0
    noise_mean: float = 0.0
    noise_std: float = 0.1
    seed: int = 0


def validate_synth_spec(spec: SynthSpec) -> SynthSpec:
    """Return `spec` unchanged if valid, else raise ConfigError naming the field."""
    if spec.n_points < 2:
        raise ConfigError("n_points", f"must be >= 2, got {spec.n_points!r}")
    if not (np.isfinite(spec.x_min) and np.isfinite(spec.x_max)) or not spec.x_min < spec.x_max:
        raise ConfigError("x_min", f"need finite x_min < x_max, got [{spec.x_min!r}, {spec.x_max!r}]")
    if not spec.noise_std >= 0:
        raise ConfigError("noise_std", f"must be non-negative, got {spec.noise_std!r}")
    return spec


def benchmark_function(x: ArrayLike) -> ArrayLike:
    """Noise-free benchmark response u(x); accepts scalars or arrays."""
    x = np.asarray(x, dtype=np.float64)
    q = 0.1 * x**2
    bracket = np.cos(q) + np.sin(8 * x) - np.sin(1 + q) - np.cos(1 + 8 * x)
    out = bracket * np.exp(-0.01 * x**2)
    return float(out) if out.ndim == 0 else out


def generate(spec: SynthSpec = SynthSpec(), *, verbose: bool = False) -> Dataset:
    """
    Sample the benchmark with seeded Gaussian noise.

    Parameters
    ----------
    spec : SynthSpec, optional
        Sampling parameters (default: the published benchmark).
    verbose : bool, optional
        If True, print a one-line summary.

    Returns
    -------
    Dataset
        `n_points` samples with unassigned roles.
    """

    validate_synth_spec(spec)

    x = np.linspace(spec.x_min, spec.x_max, spec.n_points)
    if spec.noise_std == 0:
        noise = np.full(spec.n_points, float(spec.noise_mean))
    else:
        rng = np.random.default_rng(spec.seed)
        noise = rng.normal(spec.noise_mean, spec.noise_std, spec.n_points)

    dataset = Dataset(x, benchmark_function(x) + noise)

    if verbose:
        print(
            f"🎲 Benchmark: {spec.n_points} points on [{spec.x_min:g}, {spec.x_max:g}], "
            f"noise N({spec.noise_mean:g}, {spec.noise_std:g}²), seed={spec.seed}"
        )
    return dataset
