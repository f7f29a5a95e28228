"""
Low-pass filtering in the frequency domain and its spatial-domain twin.

The passband is indexed in integer bins: half-width `h` keeps every bin j
with min(j, M - j) <= h, so both boundary bins are kept and h = 0 keeps
only DC. Although the filter is sometimes described as "bandpass", the
retained band is centred on zero frequency.

`dirichlet_smooth` computes the same result as a circular convolution with
the Dirichlet kernel (the discrete counterpart of the sinc kernel) and is
used only as an oracle.
"""

from typing import Sequence
import numpy as np

from ..domain.errors import SpectralError
from ..domain.types import Spectrum


def is_full_band(m: int, h_bins: int) -> bool:
    """True when half-width `h_bins` keeps every one of the `m` bins."""
    return 2 * h_bins + 1 >= m


def passband_mask(m: int, h_bins: int) -> np.ndarray:
    """Boolean mask of the bins kept by a half-width `h_bins` filter."""
    j = np.arange(m)
    return np.minimum(j, m - j) <= h_bins


def lowpass(spectrum: Spectrum, h_bins: int) -> Spectrum:
    """
    Zero every bin outside the closed passband [-h_bins, h_bins].

    Parameters
    ----------
    spectrum : Spectrum
        Input coefficients.
    h_bins : int
        Non-negative passband half-width in bins.

    Returns
    -------
    Spectrum
        Filtered copy; kept bins are bit-identical to the input, so the
        filter is exactly idempotent and preserves conjugate symmetry.
    """

    if h_bins < 0:
        raise ValueError(f"h_bins must be non-negative, got {h_bins}")

    c = spectrum.coefficients
    kept = np.where(passband_mask(c.size, h_bins), c, 0.0)
    return Spectrum(kept, bin_spacing=spectrum.bin_spacing)


def dirichlet_kernel(m: int, h_bins: int) -> np.ndarray:
    """
    Dirichlet kernel D(t) = (1/M)·sin(π(2h+1)t/M) / sin(πt/M), D(0) = (2h+1)/M.

    Valid while the passband does not cover every bin (2h + 1 <= M).
    """

    t = np.arange(m)
    width = 2 * h_bins + 1
    num = np.sin(np.pi * width * t / m)
    den = np.sin(np.pi * t / m)
    kernel = np.empty(m)
    kernel[0] = width / m
    kernel[1:] = num[1:] / (m * den[1:])
    return kernel


def dirichlet_smooth(signal: Sequence[float], h_bins: int) -> np.ndarray:
    """
    Circular convolution of `signal` with the Dirichlet kernel.

    Parameters
    ----------
    signal : sequence of float
        M real samples.
    h_bins : int
        Non-negative passband half-width in bins.

    Returns
    -------
    numpy.ndarray
        (signal ⊛ D)[i] = Σ_t signal[t]·D((i - t) mod M). Equals the input
        when the passband covers every bin.
    """

    s = np.asarray(signal, dtype=np.float64).ravel()
    if s.size == 0:
        raise SpectralError("cannot smooth an empty signal")
    if h_bins < 0:
        raise ValueError(f"h_bins must be non-negative, got {h_bins}")

    m = s.size
    if is_full_band(m, h_bins):
        return s.copy()

    kernel = dirichlet_kernel(m, h_bins)
    lags = (np.arange(m)[:, None] - np.arange(m)[None, :]) % m
    return kernel[lags] @ s
