"""
Iteration engine of the Fourier learner.

Each iteration filters the whole extended signal with the current passband,
then clamps TRAIN nodes back to their true responses:

    filtered = idft(lowpass(dft(ŷ⁽ⁿ⁾), h(n)))
    ŷ⁽ⁿ⁺¹⁾  = y on TRAIN nodes, filtered elsewhere

A passband covering every bin is applied as the exact identity.

The passband half-width h(n) = h0 + delta_bins·floor(n/m) is constant over
blocks of m iterations. At every block boundary the population standard
deviation of the monitored R² over the block is compared with σ_min.

The fit is a sequential, deterministic state machine; independent fits share
no state and may run concurrently.
"""

# ----------------------------------------------------------------------
# Imports
# ----------------------------------------------------------------------

from dataclasses import dataclass
from typing import List, Optional, Tuple
import logging
import numpy as np

from ..domain.fit_config import FitConfig, validate_config
from ..domain.types import (
    Dataset,
    FitResult,
    GridSignal,
    IterationRecord,
    Prediction,
    SampleRole,
    Snapshot,
    Termination,
)
from ..metrics.scores import MetricWindow, r2_or_none, window_std
from ..pipeline.build_grid import prepare_signal, restrict
from ..spectral.filters import is_full_band, lowpass
from ..spectral.transforms import dft, idft

log = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# State
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TrainerState:
    """
    Loop state between iterations.

    Parameters
    ----------
    n : int
        Index of the next iteration to run (= iterations completed).
    signal : GridSignal
        Mirror-extended working signal ŷ⁽ⁿ⁾.
    trace : tuple of IterationRecord
        One record per completed iteration.
    window : MetricWindow
        Monitored scores of the current block.
    """

    n: int
    signal: GridSignal
    trace: Tuple[IterationRecord, ...]
    window: MetricWindow

    @classmethod
    def initial(cls, signal: GridSignal, config: FitConfig) -> "TrainerState":
        return cls(0, signal, (), MetricWindow(config.m))


# ----------------------------------------------------------------------
# Schedule
# ----------------------------------------------------------------------

def h_bins_at(n: int, config: FitConfig) -> int:
    """Passband half-width used by iteration `n`: h0 + delta_bins·floor(n/m)."""
    if n < 0:
        raise ValueError(f"iteration index must be non-negative, got {n}")
    return config.h0 + config.delta_bins * (n // config.m)


# ----------------------------------------------------------------------
# Scoring helpers
# ----------------------------------------------------------------------

def _first_half(size: int) -> np.ndarray:
    mask = np.zeros(size, dtype=bool)
    mask[: size // 2] = True
    return mask


def _role_r2(signal: GridSignal, role: SampleRole, estimates: np.ndarray, half: np.ndarray) -> Optional[float]:
    """R² of `estimates` on the unmirrored nodes of `role` (None when undefined)."""
    mask = signal.mask(role) & half
    return r2_or_none(signal.truths[mask], estimates[mask])


# ----------------------------------------------------------------------
# One iteration
# ----------------------------------------------------------------------

def step(state: TrainerState, config: FitConfig) -> TrainerState:
    """
    Run one filter-and-clamp iteration.

    Parameters
    ----------
    state : TrainerState
        Current state.
    config : FitConfig
        Validated configuration.

    Returns
    -------
    TrainerState
        Next state with one more trace record.

    Raises
    ------
    SpectralError
        If the inverse transform is not real (propagated from `idft`).
    """

    signal = state.signal
    n = state.n
    h = h_bins_at(n, config)

    # ------------------------------------------------------------------
    # Step 1: Filter the whole extended signal
    # ------------------------------------------------------------------
    if is_full_band(len(signal), h):
        filtered = signal.values.copy()
    else:
        spectrum = dft(signal.values, window_width=signal.window_width)
        filtered = idft(lowpass(spectrum, h))

    # ------------------------------------------------------------------
    # Step 2: Clamp TRAIN nodes to their truths
    # ------------------------------------------------------------------
    train = signal.mask(SampleRole.TRAIN)
    values = np.where(train, signal.truths, filtered)
    next_signal = signal.with_values(values)

    # ------------------------------------------------------------------
    # Step 3: Score every role on the unmirrored half
    # ------------------------------------------------------------------
    half = _first_half(len(signal))
    r2_train = _role_r2(signal, SampleRole.TRAIN, values, half)
    r2_val = _role_r2(signal, SampleRole.VALIDATION, values, half)
    r2_test = _role_r2(signal, SampleRole.TEST, values, half)
    r2_train_filtered = _role_r2(signal, SampleRole.TRAIN, filtered, half)

    # Validation drives convergence; without it, the smooth model's fit to
    # the training set is the only score not pinned by the clamp.
    monitored = r2_val if r2_val is not None else r2_train_filtered
    block = n // config.m
    window = state.window if monitored is None else state.window.push(monitored, block)

    sigma = None
    if n % config.m == config.m - 1 and window.block == block and window.is_complete:
        sigma = window_std(window)

    record = IterationRecord(
        n=n,
        h_bins=h,
        r2_train=r2_train,
        r2_val=r2_val,
        r2_test=r2_test,
        r2_train_filtered=r2_train_filtered,
        sigma_window=sigma,
    )
    log.debug(
        "iter %d h=%d r2_train=%s r2_val=%s r2_test=%s sigma=%s",
        n, h, r2_train, r2_val, r2_test, sigma,
    )

    return TrainerState(n + 1, next_signal, state.trace + (record,), window)


# ----------------------------------------------------------------------
# Stopping rule
# ----------------------------------------------------------------------

def should_stop(state: TrainerState, config: FitConfig) -> Optional[Termination]:
    """
    Decide whether the loop ends after the last completed iteration.

    Returns
    -------
    Termination or None
        CONVERGED when that iteration closed a block whose monitored scores
        have std < sigma_min; otherwise MAX_ITER_REACHED at the iteration cap;
        otherwise BANDWIDTH_EXHAUSTED when the next filter would keep every
        bin (the state is then a fixed point); otherwise None.
    """

    if not state.trace:
        return None

    n = state.trace[-1].n
    block = n // config.m
    window = state.window

    if (
        n % config.m == config.m - 1
        and window.block == block
        and window.is_complete
        and window_std(window) < config.sigma_min
    ):
        return Termination.CONVERGED
    if n + 1 >= config.max_iter:
        return Termination.MAX_ITER_REACHED
    if is_full_band(len(state.signal), h_bins_at(n + 1, config)):
        return Termination.BANDWIDTH_EXHAUSTED
    return None


# ----------------------------------------------------------------------
# End-to-end fit
# ----------------------------------------------------------------------

def _predictions(dataset: Dataset, grid: GridSignal) -> Tuple[Prediction, ...]:
    """Map unmirrored grid estimates back to the dataset samples (ascending x)."""
    rows: List[Prediction] = []
    for node in np.argsort(grid.sample_index, kind="stable"):
        idx = int(grid.sample_index[node])
        role = grid.roles[node]
        if idx < 0 or role is SampleRole.AUGMENTED:
            continue
        rows.append(
            Prediction(
                x=float(dataset.x[idx]),
                y_true=float(dataset.y[idx]),
                y_pred=float(grid.values[node]),
                role=role,
            )
        )
    return tuple(rows)


def _wants_snapshot(config: FitConfig, n: int, done: bool) -> bool:
    return config.snapshot_every > 0 and (n % config.snapshot_every == 0 or done)


def fit(dataset: Dataset, config: Optional[FitConfig] = None, *, verbose: bool = False) -> FitResult:
    """
    Train and evaluate the iterative Fourier-filtering model.

    Parameters
    ----------
    dataset : Dataset
        Samples; roles are drawn with `random_split` when unassigned.
    config : FitConfig or None, optional
        Configuration (default: `FitConfig()`).
    verbose : bool, optional
        If True, print stage summaries and the outcome.

    Returns
    -------
    FitResult
        Final predictions, the per-iteration trace and the termination reason.

    Notes
    -----
    - Stages: split -> uniform grid -> mirror -> initial condition ->
      step loop until `should_stop` -> restrict.
    - Identical (dataset, config) pairs give identical results.
    """

    # ------------------------------------------------------------------
    # Step 1: Validate and build the extended initial signal
    # ------------------------------------------------------------------
    config = validate_config(config or FitConfig())
    prepared = prepare_signal(dataset, config, verbose=verbose)
    state = TrainerState.initial(prepared.extended, config)

    snapshots: List[Snapshot] = []
    if config.snapshot_every:
        snapshots.append(Snapshot(-1, None, restrict(state.signal).values))

    # ------------------------------------------------------------------
    # Step 2: Iterate until a stopping reason fires
    # ------------------------------------------------------------------
    termination: Optional[Termination] = None
    while termination is None:
        state = step(state, config)
        termination = should_stop(state, config)
        last = state.trace[-1]
        if _wants_snapshot(config, last.n, termination is not None):
            snapshots.append(Snapshot(last.n, last.h_bins, restrict(state.signal).values))

    # ------------------------------------------------------------------
    # Step 3: Restrict to the original window and collect outputs
    # ------------------------------------------------------------------
    final = restrict(state.signal)
    result = FitResult(
        predictions=_predictions(prepared.dataset, final),
        trace=state.trace,
        termination=termination,
        config=config,
        grid_nodes=final.nodes,
        window_width=state.signal.window_width,
        snapshots=tuple(snapshots),
    )

    if verbose:
        last = result.final_record
        print(
            f"✅ Fit finished: {termination.value} at iteration {last.n} "
            f"(h_bins={last.h_bins}, R² val={last.r2_val}, test={last.r2_test})"
        )

    return result
