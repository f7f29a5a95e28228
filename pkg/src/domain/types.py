"""
Core data types for the Fourier learner.

This module holds the immutable containers every stage passes around:
- `SampleRole` tags each sample as train / validation / test / augmented,
- `Dataset` is the sorted, validated sample table the user supplies,
- `GridSignal` is the uniform working signal the trainer filters,
- `Spectrum` is its frequency-domain counterpart,
- `IterationRecord`, `Snapshot` and `FitResult` carry what a fit produced.

Arrays stored on these objects are copied on construction and flagged
read-only, so instances can be shared freely between threads.
"""

# ----------------------------------------------------------------------
# Imports
# ----------------------------------------------------------------------

from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, NamedTuple, Optional, Sequence, Tuple
import numpy as np
import pandas as pd

from .errors import DatasetError
from .fit_config import FitConfig


# ----------------------------------------------------------------------
# Helpers
# ----------------------------------------------------------------------

def is_power_of_two(n: int) -> bool:
    """Return True when `n` is a positive integer power of two."""
    return n >= 1 and (n & (n - 1)) == 0


def _frozen(values: Iterable, dtype) -> np.ndarray:
    """Copy `values` into a 1-D read-only array of the given dtype."""
    arr = np.array(values, dtype=dtype).ravel()
    arr.setflags(write=False)
    return arr


def _optional_float(value: float) -> Optional[float]:
    """Map NaN to None so absent responses read naturally."""
    return None if np.isnan(value) else float(value)


# ----------------------------------------------------------------------
# Roles
# ----------------------------------------------------------------------

class SampleRole(str, Enum):
    """Role of a sample in the unified train / evaluate procedure."""

    TRAIN = "train"
    VALIDATION = "val"
    TEST = "test"
    AUGMENTED = "augmented"

    @classmethod
    def parse(cls, text: str) -> "SampleRole":
        """
        Parse a role from its text form (case-insensitive).

        Accepts `train`, `val` / `validation`, `test` and `augmented`.
        """

        key = str(text).strip().lower()
        if key == "validation":
            key = "val"
        try:
            return cls(key)
        except ValueError as e:
            raise ValueError(
                f"unknown role {text!r} (expected train, val, test or augmented)"
            ) from e


class Termination(str, Enum):
    """Why a fit stopped."""

    CONVERGED = "CONVERGED"
    MAX_ITER_REACHED = "MAX_ITER_REACHED"
    BANDWIDTH_EXHAUSTED = "BANDWIDTH_EXHAUSTED"


# ----------------------------------------------------------------------
# Dataset
# ----------------------------------------------------------------------

class Sample(NamedTuple):
    """One dataset row; `y` is None for augmented samples."""

    x: float
    y: Optional[float]
    role: Optional[SampleRole]


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Sorted predictor/response samples with an optional role per sample.

    Parameters
    ----------
    x : array-like of float
        Predictor values in problem units. Sorted on construction.
    y : array-like of float
        True responses; NaN marks an absent response (augmented samples only).
    roles : sequence of SampleRole or None, optional
        One role per sample, aligned with `x` *before* sorting. None means the
        roles are not assigned yet (e.g. freshly synthesized data).

    Raises
    ------
    DatasetError
        If any invariant fails: mismatched lengths, non-finite or duplicate
        predictors, missing responses, responses on augmented samples, or no
        TRAIN sample once roles are assigned.
    """

    x: np.ndarray
    y: np.ndarray
    roles: Optional[Tuple[SampleRole, ...]] = None

    def __post_init__(self) -> None:

        # ------------------------------------------------------------------
        # Step 1: Coerce to float64 and check shapes
        # ------------------------------------------------------------------
        x = np.array(self.x, dtype=np.float64).ravel()
        y = np.array(self.y, dtype=np.float64).ravel()

        if x.size == 0:
            raise DatasetError("dataset must contain at least one sample")
        if x.size != y.size:
            raise DatasetError(f"x has {x.size} values but y has {y.size}")
        if not np.all(np.isfinite(x)):
            raise DatasetError("predictor values must be finite")

        roles = None
        if self.roles is not None:
            roles = [r if isinstance(r, SampleRole) else SampleRole.parse(r) for r in self.roles]
            if len(roles) != x.size:
                raise DatasetError(f"{len(roles)} roles given for {x.size} samples")

        # ------------------------------------------------------------------
        # Step 2: Sort by x, keeping (x, y, role) rows together
        # ------------------------------------------------------------------
        order = np.argsort(x, kind="stable")
        x, y = x[order], y[order]
        if roles is not None:
            roles = [roles[i] for i in order]

        dupes = np.flatnonzero(np.diff(x) == 0)
        if dupes.size:
            raise DatasetError(f"duplicate predictor value x={x[dupes[0]]!r}")

        # ------------------------------------------------------------------
        # Step 3: Response presence must agree with the roles
        # ------------------------------------------------------------------
        present = np.isfinite(y)
        if roles is None:
            if not present.all():
                bad = x[~present][0]
                raise DatasetError(f"missing response at x={bad!r} (roles unassigned)")
        else:
            augmented = np.array([r is SampleRole.AUGMENTED for r in roles])
            if np.any(augmented & present):
                bad = x[augmented & present][0]
                raise DatasetError(f"augmented sample at x={bad!r} carries a response")
            if np.any(~augmented & ~present):
                bad = x[~augmented & ~present][0]
                raise DatasetError(f"missing response at x={bad!r}")
            if SampleRole.TRAIN not in roles:
                raise DatasetError("dataset has no TRAIN sample")

        object.__setattr__(self, "x", _frozen(x, np.float64))
        object.__setattr__(self, "y", _frozen(y, np.float64))
        object.__setattr__(self, "roles", tuple(roles) if roles is not None else None)

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return int(self.x.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y, equal_nan=True)
            and self.roles == other.roles
        )

    @property
    def has_roles(self) -> bool:
        return self.roles is not None

    @property
    def samples(self) -> Tuple[Sample, ...]:
        """Rows as `(x, y, role)` tuples in ascending x order."""
        roles = self.roles or (None,) * len(self)
        return tuple(
            Sample(float(xi), _optional_float(yi), r) for xi, yi, r in zip(self.x, self.y, roles)
        )

    def with_roles(self, roles: Sequence[SampleRole]) -> "Dataset":
        """Return a copy with `roles` assigned in the current (sorted) order."""
        return Dataset(self.x, self.y, tuple(roles))

    def role_counts(self) -> Dict[SampleRole, int]:
        """Count samples per role (empty dict when roles are unassigned)."""
        if self.roles is None:
            return {}
        return {role: self.roles.count(role) for role in SampleRole if role in self.roles}

    def to_frame(self) -> pd.DataFrame:
        """Tabular view with columns `x`, `y` and, when assigned, `role`."""
        df = pd.DataFrame({"x": self.x, "y": self.y})
        if self.roles is not None:
            df["role"] = [r.value for r in self.roles]
        return df

    @classmethod
    def from_frame(cls, df: pd.DataFrame) -> "Dataset":
        """Build a dataset from a frame with `x`, `y` and an optional `role` column."""
        missing = {"x", "y"} - set(df.columns)
        if missing:
            raise DatasetError(f"frame is missing column(s): {sorted(missing)}")
        roles = None
        if "role" in df.columns:
            roles = tuple(SampleRole.parse(r) for r in df["role"])
        return cls(df["x"].to_numpy(), df["y"].to_numpy(), roles)


# ----------------------------------------------------------------------
# Uniform working signal
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GridSignal:
    """
    Uniformly spaced working signal (current response estimates).

    Parameters
    ----------
    origin : float
        Predictor value of node 0.
    dx : float
        Grid spacing in predictor units (> 0).
    values : array-like of float
        Current estimates ŷ per node.
    roles : sequence of SampleRole
        Role per node.
    truths : array-like of float
        True response per node; NaN where absent (AUGMENTED nodes).
    sample_index : array-like of int or None, optional
        Index into the source dataset of the sample held by each node, -1
        for nodes without one. Defaults to all -1.

    Notes
    -----
    - The node count M must be a power of two (radix-2 transform path).
    - The spatial window width is L = M·dx.
    """

    origin: float
    dx: float
    values: np.ndarray
    roles: Tuple[SampleRole, ...]
    truths: np.ndarray
    sample_index: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        values = _frozen(self.values, np.float64)
        truths = _frozen(self.truths, np.float64)
        roles = tuple(self.roles)
        index = (
            _frozen(self.sample_index, np.int64)
            if self.sample_index is not None
            else _frozen(np.full(values.size, -1), np.int64)
        )

        if not (values.size == truths.size == len(roles) == index.size):
            raise DatasetError(
                f"grid arrays differ in length: values={values.size}, "
                f"roles={len(roles)}, truths={truths.size}, sample_index={index.size}"
            )
        if not is_power_of_two(values.size):
            raise DatasetError(f"grid length {values.size} is not a power of two")
        if not (np.isfinite(self.dx) and self.dx > 0):
            raise DatasetError(f"grid spacing must be positive, got dx={self.dx!r}")

        augmented = np.array([r is SampleRole.AUGMENTED for r in roles])
        if np.any(np.isfinite(truths[augmented])):
            raise DatasetError("augmented grid nodes must not carry a truth")
        if not np.all(np.isfinite(truths[~augmented])):
            raise DatasetError("every non-augmented grid node needs a truth")

        object.__setattr__(self, "origin", float(self.origin))
        object.__setattr__(self, "dx", float(self.dx))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "roles", roles)
        object.__setattr__(self, "truths", truths)
        object.__setattr__(self, "sample_index", index)

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def size(self) -> int:
        return len(self)

    @property
    def window_width(self) -> float:
        """Spatial window width L = M·dx."""
        return self.size * self.dx

    @property
    def nodes(self) -> np.ndarray:
        """Predictor value of every node."""
        return self.origin + self.dx * np.arange(self.size)

    @cached_property
    def _role_codes(self) -> np.ndarray:
        return np.array([r.value for r in self.roles])

    def mask(self, role: SampleRole) -> np.ndarray:
        """Boolean mask of nodes carrying `role`."""
        return self._role_codes == role.value

    def with_values(self, values: np.ndarray) -> "GridSignal":
        """Copy with new estimates; roles, truths and geometry are unchanged."""
        return replace(self, values=values)


# ----------------------------------------------------------------------
# Spectrum
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Complex DFT coefficients of a signal.

    Parameters
    ----------
    coefficients : array-like of complex
        Bin j holds frequency j·bin_spacing (bins above M/2 are the negative
        frequencies).
    bin_spacing : float
        Frequency step δf = 1/L.
    """

    coefficients: np.ndarray
    bin_spacing: float

    def __post_init__(self) -> None:
        coeffs = _frozen(self.coefficients, np.complex128)
        if coeffs.size == 0:
            raise DatasetError("spectrum must hold at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "bin_spacing", float(self.bin_spacing))

    def __len__(self) -> int:
        return int(self.coefficients.size)

    @property
    def frequencies(self) -> np.ndarray:
        """Signed frequency of every bin."""
        m = len(self)
        j = np.arange(m)
        return np.where(j <= m // 2, j, j - m) * self.bin_spacing

    def is_conjugate_symmetric(self, rtol: float = 1e-9) -> bool:
        """True when c[j] = conj(c[M-j]) within `rtol` of the largest magnitude."""
        c = self.coefficients
        mirrored = np.conj(np.roll(c[::-1], 1))
        scale = max(float(np.max(np.abs(c))), np.finfo(float).tiny)
        return bool(np.max(np.abs(c - mirrored)) <= rtol * scale)


# ----------------------------------------------------------------------
# Fit outputs
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class IterationRecord:
    """
    Scores after one filter-and-clamp iteration.

    `r2_train` is measured on the clamped signal (1 by construction when
    defined); `r2_train_filtered` is measured on the filter output before
    clamping and tracks how well the smooth model explains the training set.
    Scores are None when the role is empty or its truths have no variance.
    """

    n: int
    h_bins: int
    r2_train: Optional[float]
    r2_val: Optional[float]
    r2_test: Optional[float]
    r2_train_filtered: Optional[float] = None
    sigma_window: Optional[float] = None


class Prediction(NamedTuple):
    x: float
    y_true: Optional[float]
    y_pred: float
    role: SampleRole


@dataclass(frozen=True, eq=False)
class Snapshot:
    """Model estimates over the unmirrored grid after iteration `n` (-1: initial condition)."""

    n: int
    h_bins: Optional[int]
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(self.values, np.float64))


@dataclass(frozen=True, eq=False)
class FitResult:
    """
    Everything a fit produced.

    Parameters
    ----------
    predictions : tuple of Prediction
        One entry per non-augmented dataset sample, ascending x.
    trace : tuple of IterationRecord
        One record per completed iteration.
    termination : Termination
        Reason the loop stopped.
    config : FitConfig
        Effective (validated) configuration.
    grid_nodes : numpy.ndarray
        Predictor value of every unmirrored grid node.
    window_width : float
        Width L of the mirror-extended window (sets δf = 1/L).
    snapshots : tuple of Snapshot, optional
        Intermediate model states, when requested.
    """

    predictions: Tuple[Prediction, ...]
    trace: Tuple[IterationRecord, ...]
    termination: Termination
    config: FitConfig
    grid_nodes: np.ndarray
    window_width: float
    snapshots: Tuple[Snapshot, ...] = field(default=())

    @property
    def grid_size(self) -> int:
        return int(self.grid_nodes.size)

    @property
    def final_record(self) -> Optional[IterationRecord]:
        return self.trace[-1] if self.trace else None

    @property
    def final_iteration(self) -> Optional[int]:
        return self.trace[-1].n if self.trace else None

    def predictions_frame(self) -> pd.DataFrame:
        """Predictions as a frame with columns `x, y_true, y_pred, role`."""
        return pd.DataFrame(
            {
                "x": [p.x for p in self.predictions],
                "y_true": [np.nan if p.y_true is None else p.y_true for p in self.predictions],
                "y_pred": [p.y_pred for p in self.predictions],
                "role": [p.role.value for p in self.predictions],
            }
        )

    def trace_frame(self) -> pd.DataFrame:
        """Iteration trace, one row per record."""
        columns = ["n", "h_bins", "r2_train", "r2_val", "r2_test", "r2_train_filtered", "sigma_window"]
        rows = [[getattr(r, c) for c in columns] for r in self.trace]
        return pd.DataFrame(rows, columns=columns)

    def snapshots_frame(self) -> pd.DataFrame:
        """Snapshots in long format: `n, h_bins, x, y_pred`."""
        frames = [
            pd.DataFrame({"n": s.n, "h_bins": s.h_bins, "x": self.grid_nodes, "y_pred": s.values})
            for s in self.snapshots
        ]
        if not frames:
            return pd.DataFrame(columns=["n", "h_bins", "x", "y_pred"])
        return pd.concat(frames, ignore_index=True)
