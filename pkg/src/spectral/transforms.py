"""
Forward and inverse discrete Fourier transforms.

Conventions: the forward transform is unnormalised,

    c[j] = sum_t s[t] * exp(-2πi·j·t/M),

and the inverse carries the 1/M factor. Power-of-two lengths go through an
iterative radix-2 decimation-in-time FFT (bit-reversal permutation followed
by log2(M) butterfly stages, each vectorised over all blocks); any other
length falls back to direct O(M²) summation.
"""

from typing import Optional, Sequence
import numpy as np

from ..domain.errors import SpectralError
from ..domain.types import Spectrum, is_power_of_two

# Largest |imag| / max(1, max|real|) tolerated when discarding the
# imaginary part of an inverse transform.
IMAG_RESIDUE_TOLERANCE = 1e-8


# ----------------------------------------------------------------------
# Radix-2 machinery
# ----------------------------------------------------------------------

def _bit_reverse_indices(n: int) -> np.ndarray:
    """Bit-reversal permutation for power-of-two `n`."""
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.intp)
    rev = np.zeros(n, dtype=np.intp)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx = idx >> 1
    return rev


def _radix2_fft(x: np.ndarray) -> np.ndarray:
    """Iterative radix-2 DIT FFT of a complex power-of-two-length vector."""
    n = x.size
    out = x[_bit_reverse_indices(n)].astype(np.complex128)

    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / size)

        # View the buffer as (n / size) independent butterfly blocks.
        blocks = out.reshape(-1, size)
        upper = blocks[:, :half].copy()
        lower = blocks[:, half:] * twiddle
        blocks[:, :half] = upper + lower
        blocks[:, half:] = upper - lower

        size *= 2
    return out


def _direct_dft(x: np.ndarray) -> np.ndarray:
    """O(M²) evaluation of the DFT definition."""
    n = x.size
    t = np.arange(n)
    kernel = np.exp(-2j * np.pi * np.outer(t, t) / n)
    return kernel @ x.astype(np.complex128)


def _forward(x: np.ndarray) -> np.ndarray:
    return _radix2_fft(x) if is_power_of_two(x.size) else _direct_dft(x)


# ----------------------------------------------------------------------
# Public transforms
# ----------------------------------------------------------------------

def dft(signal: Sequence[float], window_width: Optional[float] = None) -> Spectrum:
    """
    Discrete Fourier transform of a real signal.

    Parameters
    ----------
    signal : sequence of float
        M real samples, M >= 1.
    window_width : float or None, optional
        Spatial width L of the sampled window; sets the bin spacing 1/L.
        Defaults to M (unit sample spacing).

    Returns
    -------
    Spectrum
        The M unnormalised coefficients.

    Raises
    ------
    SpectralError
        If `signal` is empty.
    """

    x = np.asarray(signal, dtype=np.float64).ravel()
    if x.size == 0:
        raise SpectralError("cannot transform an empty signal")

    width = float(x.size) if window_width is None else float(window_width)
    return Spectrum(_forward(x.astype(np.complex128)), bin_spacing=1.0 / width)


def idft(spectrum: Spectrum) -> np.ndarray:
    """
    Inverse transform back to a real signal.

    Parameters
    ----------
    spectrum : Spectrum
        Coefficients, expected conjugate-symmetric.

    Returns
    -------
    numpy.ndarray
        Real part of (1/M)·Σ_j c[j]·exp(+2πi·j·t/M).

    Raises
    ------
    SpectralError
        If the discarded imaginary part exceeds
        1e-8 · max(1, max|real|), i.e. the spectrum was not the transform
        of a real signal.
    """

    c = spectrum.coefficients
    if c.size == 0:
        raise SpectralError("cannot invert an empty spectrum")

    # Inverse through the forward kernel: ifft(c) = conj(fft(conj(c))) / M.
    out = np.conj(_forward(np.conj(c))) / c.size

    residue = float(np.max(np.abs(out.imag)))
    scale = max(1.0, float(np.max(np.abs(out.real))))
    if residue >= IMAG_RESIDUE_TOLERANCE * scale:
        raise SpectralError(
            f"inverse transform has imaginary residue {residue:.3g} "
            f"(limit {IMAG_RESIDUE_TOLERANCE * scale:.3g}); spectrum is not conjugate-symmetric"
        )
    return out.real.copy()
