from .errors import (
    ConfigError,
    DatasetError,
    FourierLearnError,
    GridCollisionError,
    MetricError,
    ParseError,
    SpectralError,
)
from .fit_config import CALIBRATED_DELTA_BINS, FitConfig, validate_config
from .types import (
    Dataset,
    FitResult,
    GridSignal,
    IterationRecord,
    Prediction,
    Sample,
    SampleRole,
    Snapshot,
    Spectrum,
    Termination,
    is_power_of_two,
)
