from .fourier_trainer import TrainerState, fit, h_bins_at, should_stop, step
from .calibrate import CalibrationReport, CalibrationRow, DEFAULT_CANDIDATES, calibrate_delta_bins
