"""
Scores used to monitor and stop the iterative learner.

- `r2` is the coefficient of determination, 1 - RSS/TSS.
- `MetricWindow` collects the monitored R² values of one bandwidth block,
  and `window_std` is their population standard deviation, the quantity
  compared against σ_min at each block boundary.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple
import numpy as np

from ..domain.errors import MetricError


def r2(truth: Sequence[float], prediction: Sequence[float]) -> float:
    """
    Coefficient of determination.

    Parameters
    ----------
    truth : sequence of float
        Observed responses (non-empty, not all equal).
    prediction : sequence of float
        Predicted responses, same length.

    Returns
    -------
    float
        1 - Σ(y - ŷ)² / Σ(y - ȳ)². 1 is a perfect fit, 0 matches the mean
        predictor; poor non-linear fits can go negative.

    Raises
    ------
    MetricError
        Length mismatch, empty input, or zero-variance truth.
    """

    y = np.asarray(truth, dtype=np.float64).ravel()
    y_hat = np.asarray(prediction, dtype=np.float64).ravel()

    if y.size != y_hat.size:
        raise MetricError(f"truth has {y.size} values but prediction has {y_hat.size}")
    if y.size == 0:
        raise MetricError("R² needs at least one value")

    # Sum of squared residuals and total sum of squares.
    rss = np.sum((y - y_hat) ** 2)
    tss = np.sum((y - np.mean(y)) ** 2)
    if tss == 0:
        raise MetricError("R² is undefined for truth with zero variance")

    return float(1.0 - rss / tss)


def r2_or_none(truth: Sequence[float], prediction: Sequence[float]) -> Optional[float]:
    """`r2`, or None where the score is undefined (empty role, constant truth)."""
    try:
        return r2(truth, prediction)
    except MetricError:
        return None


@dataclass(frozen=True)
class MetricWindow:
    """
    Monitored scores of a single bandwidth block.

    Parameters
    ----------
    m : int
        Block size.
    block : int
        Index k of the block the values belong to (-1 before the first push).
    values : tuple of float
        At most `m` scores, oldest first.
    """

    m: int
    block: int = -1
    values: Tuple[float, ...] = ()

    def push(self, value: float, block: int) -> "MetricWindow":
        """Append `value` for `block`, starting afresh when the block changes."""
        kept = self.values if block == self.block else ()
        return MetricWindow(self.m, block, (kept + (float(value),))[-self.m:])

    @property
    def is_complete(self) -> bool:
        return len(self.values) == self.m


def window_std(window: MetricWindow) -> float:
    """
    Population standard deviation sqrt(Σ(v - mean)² / m) of a full block.

    Raises
    ------
    MetricError
        If the window does not yet hold `m` values.
    """

    if not window.is_complete:
        raise MetricError(f"window holds {len(window.values)} of {window.m} values")
    return float(np.std(np.asarray(window.values), ddof=0))
