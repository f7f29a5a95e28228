"""
Exception types raised across the Fourier learner.

Every error derives from `FourierLearnError` so callers (the CLI in
particular) can separate library failures from programming errors, and
from the matching builtin (`ValueError`, `ArithmeticError`) so plain
`except ValueError` handlers keep working.
"""

from typing import Optional, Tuple


class FourierLearnError(Exception):
    """Base class for all library errors."""


class ConfigError(FourierLearnError, ValueError):
    """
    Invalid configuration value.

    Parameters
    ----------
    field : str
        Name of the offending configuration field.
    message : str
        Human-readable description of the violation.
    """

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        super().__init__(f"{field}: {message}")


class DatasetError(FourierLearnError, ValueError):
    """A dataset or grid violates one of its construction invariants."""


class GridCollisionError(DatasetError):
    """
    Two samples map to the same uniform-grid node.

    Parameters
    ----------
    pair : tuple[float, float]
        The colliding predictor values.
    node : int
        Index of the contested grid node.
    """

    def __init__(self, pair: Tuple[float, float], node: int) -> None:
        self.pair = pair
        self.node = node
        super().__init__(
            f"samples x={pair[0]!r} and x={pair[1]!r} both map to grid node {node}; "
            "choose a larger grid size"
        )


class MetricError(FourierLearnError, ValueError):
    """A score is undefined for the given inputs."""


class SpectralError(FourierLearnError, ArithmeticError):
    """Transform failure: empty input or non-real inverse."""


class ParseError(FourierLearnError, ValueError):
    """
    Malformed input file.

    Parameters
    ----------
    message : str
        Description of the problem.
    line : int or None, optional
        1-based line number in the source file, when known.
    """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
