from .domain import (
    CALIBRATED_DELTA_BINS,
    ConfigError,
    Dataset,
    DatasetError,
    FitConfig,
    FitResult,
    FourierLearnError,
    GridCollisionError,
    MetricError,
    ParseError,
    SampleRole,
    SpectralError,
    Termination,
    validate_config,
)
from .spectral import dft, idft, lowpass, dirichlet_smooth
from .pipeline.build_grid import prepare_signal, random_split, to_uniform_grid, mirror_extend, restrict
from .metrics.scores import r2, window_std
from .trainer.fourier_trainer import fit
from .trainer.calibrate import calibrate_delta_bins
from .synth.generate_benchmark_data import SynthSpec, generate
from .cli.dataset_io import (
    read_dataset_csv,
    write_dataset_csv,
    write_predictions_csv,
    write_snapshots_csv,
    write_trace_json,
)
from .cli.commands import main
