from .transforms import dft, idft
from .filters import dirichlet_kernel, dirichlet_smooth, is_full_band, lowpass, passband_mask
