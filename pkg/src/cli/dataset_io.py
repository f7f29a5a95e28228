"""
File formats of the Fourier learner.

Input dataset CSV
    UTF-8, header `x,y` with an optional third column `role`
    (train / val / test / augmented), LF or CRLF line endings. Augmented rows
    leave `y` empty; every other row needs a finite `y`.

Predictions CSV
    Header `x,y_true,y_pred,role`, one row per non-augmented sample.

Trace JSON
    Object with `config`, `termination`, `final_iteration`, `grid_size`,
    `window_width` and `iterations` (one object per iteration, null for
    absent scores).

Floats are written with 17 significant digits, so reading a written file
reproduces the values exactly.
"""

# ----------------------------------------------------------------------
# Imports
# ----------------------------------------------------------------------

from pathlib import Path
from typing import Any, Dict, Optional, Union
import json
import re
import numpy as np
import pandas as pd

from ..domain.errors import DatasetError, ParseError
from ..domain.types import Dataset, FitResult, SampleRole

PathLike = Union[str, Path]

FLOAT_FORMAT = "%.17g"


# ----------------------------------------------------------------------
# Helpers
# ----------------------------------------------------------------------

def _ensure_parent(path: Path) -> None:
    """Create the parent folder of `path` if needed."""
    path.parent.mkdir(parents=True, exist_ok=True)


def _line_from_message(message: str) -> Optional[int]:
    match = re.search(r"line (\d+)", message)
    return int(match.group(1)) if match else None


def _read_csv(path: Path) -> pd.DataFrame:
    """
    Read a CSV as raw strings with friendly errors.

    Parameters
    ----------
    path : pathlib.Path
        CSV file location.

    Returns
    -------
    pandas.DataFrame
        All cells as stripped strings; blank lines kept as empty rows so
        that frame index i is file line i + 2.

    Raises
    ------
    FileNotFoundError
        If the file does not exist.
    ParseError
        If the file is empty, not UTF-8, or structurally malformed.
    """

    try:
        df = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            encoding="utf-8",
        )

    except FileNotFoundError as e:
        raise FileNotFoundError(
            f"Could not find '{path.name}' in {path.parent.resolve()}"
        ) from e

    except pd.errors.EmptyDataError as e:
        raise ParseError(f"Data file '{path.name}' is empty", line=1) from e

    except pd.errors.ParserError as e:
        raise ParseError(
            f"Data file '{path.name}' appears malformed: {e}", line=_line_from_message(str(e))
        ) from e

    except UnicodeDecodeError as e:
        raise ParseError(f"Data file '{path.name}' is not valid UTF-8") from e

    df.columns = [str(c).strip() for c in df.columns]
    # Blank lines and short rows come back as NaN.
    return df.fillna("").apply(lambda col: col.str.strip())


def _cell_to_float(cell: str) -> float:
    try:
        return float(cell)
    except ValueError:
        return np.nan


def _parse_floats(raw: pd.Series, column: str, allow_empty: np.ndarray) -> np.ndarray:
    """Convert a string column to float64, naming the file line of the first bad cell."""
    # float() parses 17-digit decimals exactly.
    values = raw.map(_cell_to_float).to_numpy(dtype=np.float64)
    empty = (raw == "").to_numpy()
    bad = ~np.isfinite(values) & ~(empty & allow_empty)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise ParseError(
            f"cannot parse {column}={raw.iloc[i]!r} as a finite number", line=int(raw.index[i]) + 2
        )
    return np.where(empty, np.nan, values)


# ----------------------------------------------------------------------
# Dataset CSV
# ----------------------------------------------------------------------

def read_dataset_csv(path: PathLike, *, verbose: bool = False) -> Dataset:
    """
    Load a dataset CSV.

    Parameters
    ----------
    path : str or pathlib.Path
        Input file.
    verbose : bool, optional
        If True, print the loaded shape.

    Returns
    -------
    Dataset
        Sorted dataset; roles assigned only when the file has a `role` column.

    Raises
    ------
    FileNotFoundError
        Missing file.
    ParseError
        Bad header, unparsable cell (with its line number) or a dataset
        invariant violation (duplicate x, no TRAIN row, ...).
    """

    path = Path(path)
    df = _read_csv(path)

    # ------------------------------------------------------------------
    # Step 1: Header
    # ------------------------------------------------------------------
    columns = list(df.columns)
    if columns[:2] != ["x", "y"] or len(columns) > 3 or (len(columns) == 3 and columns[2] != "role"):
        raise ParseError(f"expected header 'x,y' or 'x,y,role', got {','.join(columns)!r}", line=1)

    # Drop blank lines; the index still maps to file lines.
    df = df[(df != "").any(axis=1)]
    if df.empty:
        raise ParseError(f"Data file '{path.name}' has no data rows", line=2)

    # ------------------------------------------------------------------
    # Step 2: Roles (optional)
    # ------------------------------------------------------------------
    roles = None
    augmented = np.zeros(len(df), dtype=bool)
    if "role" in df.columns:
        roles = []
        for line_index, text in zip(df.index, df["role"]):
            try:
                roles.append(SampleRole.parse(text))
            except ValueError as e:
                raise ParseError(str(e), line=int(line_index) + 2) from e
        augmented = np.array([r is SampleRole.AUGMENTED for r in roles])

    # ------------------------------------------------------------------
    # Step 3: Numbers
    # ------------------------------------------------------------------
    x = _parse_floats(df["x"], "x", np.zeros(len(df), dtype=bool))
    y = _parse_floats(df["y"], "y", augmented)

    try:
        dataset = Dataset(x, y, roles)
    except DatasetError as e:
        raise ParseError(f"Data file '{path.name}': {e}") from e

    if verbose:
        print(f"📄 Loaded dataset [{path.name}]: {len(dataset)} rows")
    return dataset


def write_dataset_csv(dataset: Dataset, path: PathLike) -> Path:
    """Write `dataset` as CSV (`x,y[,role]`) and return the path."""
    path = Path(path)
    _ensure_parent(path)
    dataset.to_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


# ----------------------------------------------------------------------
# Fit outputs
# ----------------------------------------------------------------------

def write_predictions_csv(result: FitResult, path: PathLike) -> Path:
    """Write `x,y_true,y_pred,role` rows and return the path."""
    path = Path(path)
    _ensure_parent(path)
    result.predictions_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def write_snapshots_csv(result: FitResult, path: PathLike) -> Path:
    """Write model snapshots (`n,h_bins,x,y_pred`, long format) and return the path."""
    path = Path(path)
    _ensure_parent(path)
    result.snapshots_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def trace_payload(result: FitResult) -> Dict[str, Any]:
    """JSON-ready trace: effective config, outcome and per-iteration scores."""
    return {
        "config": result.config.to_dict(),
        "termination": result.termination.value,
        "final_iteration": result.final_iteration,
        "grid_size": result.grid_size,
        "window_width": result.window_width,
        "iterations": [
            {
                "n": r.n,
                "h_bins": r.h_bins,
                "r2_train": r.r2_train,
                "r2_val": r.r2_val,
                "r2_test": r.r2_test,
                "r2_train_filtered": r.r2_train_filtered,
                "sigma_window": r.sigma_window,
            }
            for r in result.trace
        ],
    }


def write_json(payload: Dict[str, Any], path: PathLike) -> Path:
    """Write `payload` as indented JSON (shortest round-trip float repr) and return the path."""
    path = Path(path)
    _ensure_parent(path)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def write_trace_json(result: FitResult, path: PathLike) -> Path:
    return write_json(trace_payload(result), path)
