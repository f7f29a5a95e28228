"""
Sweep of the passband step `delta_bins`.

The literal schedule widens the passband by one bin per block, which on a
long mirrored window is far too slow to reach the content of a
fast-oscillating signal within a realistic iteration budget. This sweep
fits each candidate step and picks the one with the best held-out R² among
those that stop CONVERGED or MAX_ITER_REACHED at or above a target. A step
that runs out of bandwidth is never selected.
"""

from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Iterable, Optional, Tuple
import pandas as pd

from ..domain.fit_config import FitConfig, validate_config
from ..domain.types import Dataset, Termination
from .fourier_trainer import fit

DEFAULT_CANDIDATES: Tuple[int, ...] = (1, 2, 4, 8, 16, 32)
ACCEPTED_TERMINATIONS = (Termination.CONVERGED, Termination.MAX_ITER_REACHED)


@dataclass(frozen=True)
class CalibrationRow:
    """Outcome of one candidate step."""

    delta_bins: int
    termination: Termination
    final_iteration: int
    r2_val: Optional[float]
    r2_test: Optional[float]

    @property
    def score(self) -> Optional[float]:
        """Held-out score used for selection: test R², else validation R²."""
        return self.r2_test if self.r2_test is not None else self.r2_val


@dataclass(frozen=True)
class CalibrationReport:
    rows: Tuple[CalibrationRow, ...]
    target_r2: float
    selected: Optional[int]

    def to_frame(self) -> pd.DataFrame:
        df = pd.DataFrame([asdict(r) for r in self.rows])
        if not df.empty:
            df["termination"] = [r.termination.value for r in self.rows]
            df["selected"] = df["delta_bins"] == self.selected
        return df

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target_r2": self.target_r2,
            "selected": self.selected,
            "candidates": [
                {**asdict(r), "termination": r.termination.value} for r in self.rows
            ],
        }


def calibrate_delta_bins(
    dataset: Dataset,
    config: Optional[FitConfig] = None,
    candidates: Iterable[int] = DEFAULT_CANDIDATES,
    target_r2: float = 0.90,
    *,
    verbose: bool = False,
) -> CalibrationReport:
    """
    Fit every candidate `delta_bins` and select the best-scoring acceptable one.

    Parameters
    ----------
    dataset : Dataset
        Data to calibrate on (roles drawn from `config` when unassigned).
    config : FitConfig or None, optional
        Base configuration; its `delta_bins` is overridden per candidate.
    candidates : iterable of int, optional
        Steps to try (default: 1, 2, 4, 8, 16, 32).
    target_r2 : float, optional
        Minimum held-out R² at termination (default: 0.90).
    verbose : bool, optional
        If True, print one line per candidate.

    Returns
    -------
    CalibrationReport
        One row per candidate (ascending), and the selected step: the
        best-scoring one that terminated CONVERGED or MAX_ITER_REACHED with
        score >= `target_r2` (ties go to the smaller step), or None.
    """

    base = validate_config(config or FitConfig())
    rows = []

    for delta in sorted(set(candidates)):
        result = fit(dataset, replace(base, delta_bins=delta))
        last = result.final_record
        row = CalibrationRow(
            delta_bins=delta,
            termination=result.termination,
            final_iteration=last.n,
            r2_val=last.r2_val,
            r2_test=last.r2_test,
        )
        rows.append(row)
        if verbose:
            print(
                f"  delta_bins={delta:>3}: {row.termination.value:<19} "
                f"n={row.final_iteration:<3} score={row.score}"
            )

    acceptable = [
        r
        for r in rows
        if r.termination in ACCEPTED_TERMINATIONS and r.score is not None and r.score >= target_r2
    ]
    selected = max(acceptable, key=lambda r: (r.score, -r.delta_bins)).delta_bins if acceptable else None
    return CalibrationReport(tuple(rows), float(target_r2), selected)
