"""
Dataset -> working signal for the Fourier learner.

This module contains the stages that turn a raw Dataset into the periodic,
uniformly sampled signal the trainer filters:
- random role assignment (train / validation / test),
- nearest-node placement on a power-of-two uniform grid, with empty nodes
  added as AUGMENTED,
- mirror extension so the periodic continuation implied by the DFT has no
  jump at the window edge,
- and the initial condition (truths on TRAIN nodes, zero elsewhere).

Every stage is a pure function returning new immutable objects.
"""

# ----------------------------------------------------------------------
# Imports
# ----------------------------------------------------------------------

from typing import List, NamedTuple, Sequence
import math
import numpy as np

from ..domain.errors import ConfigError, DatasetError, GridCollisionError
from ..domain.fit_config import FRACTION_TOLERANCE, FitConfig
from ..domain.types import Dataset, GridSignal, SampleRole, is_power_of_two


# ----------------------------------------------------------------------
# Helpers
# ----------------------------------------------------------------------

def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def smallest_grid_size(n_samples: int) -> int:
    """Smallest power of two >= `n_samples`."""
    if n_samples < 1:
        raise ValueError(f"n_samples must be positive, got {n_samples}")
    return 1 << (n_samples - 1).bit_length()


# ----------------------------------------------------------------------
# Step 1: Role assignment
# ----------------------------------------------------------------------

def random_split(
    n_samples: int,
    fractions: Sequence[float],
    seed: int,
) -> List[SampleRole]:
    """
    Randomly assign TRAIN / VALIDATION / TEST roles.

    Parameters
    ----------
    n_samples : int
        Number of samples (> 0).
    fractions : (float, float, float)
        Train, validation and test fractions summing to 1.
    seed : int
        Seed of the permutation; equal seeds give equal role lists.

    Returns
    -------
    list of SampleRole
        Role of sample i at position i.

    Notes
    -----
    - Counts: round-half-up(n·train) TRAIN, then round-half-up(n·val)
      VALIDATION (capped at what is left), the remainder TEST.
    - The samples receiving each role are the leading entries of a
      `numpy.random.default_rng(seed)` permutation.
    """

    if n_samples < 1:
        raise ValueError(f"n_samples must be positive, got {n_samples}")
    train, val, test = fractions
    if abs(train + val + test - 1.0) > FRACTION_TOLERANCE:
        raise ConfigError("fractions", f"must sum to 1, got {train + val + test!r}")

    n_train = min(_round_half_up(n_samples * train), n_samples)
    n_val = min(_round_half_up(n_samples * val), n_samples - n_train)
    if n_train == 0:
        raise ConfigError(
            "train_frac", f"{train!r} of {n_samples} samples rounds to zero TRAIN samples"
        )

    order = np.random.default_rng(seed).permutation(n_samples)
    roles = [SampleRole.TEST] * n_samples
    for i in order[:n_train]:
        roles[i] = SampleRole.TRAIN
    for i in order[n_train:n_train + n_val]:
        roles[i] = SampleRole.VALIDATION
    return roles


def assign_roles(dataset: Dataset, config: FitConfig) -> Dataset:
    """Return `dataset` unchanged when it has roles, else split it per `config`."""
    if dataset.has_roles:
        return dataset
    return dataset.with_roles(random_split(len(dataset), config.fractions, config.seed))


# ----------------------------------------------------------------------
# Step 2: Uniform grid
# ----------------------------------------------------------------------

def to_uniform_grid(dataset: Dataset, grid_size: int, *, verbose: bool = False) -> GridSignal:
    """
    Place every sample on its nearest node of a uniform grid.

    Parameters
    ----------
    dataset : Dataset
        Samples with assigned roles.
    grid_size : int
        Number of nodes; a power of two. Fewer nodes than samples always
        ends in a collision.
    verbose : bool, optional
        If True, print grid geometry and the augmented-node count.

    Returns
    -------
    GridSignal
        `grid_size` nodes spanning exactly [min x, max x]. Occupied nodes
        carry the sample's role, truth and value; the others are AUGMENTED
        with value 0 and no truth.

    Raises
    ------
    DatasetError
        Unassigned roles, degenerate x-range or an unsuitable grid size.
    GridCollisionError
        Two samples share a nearest node.
    """

    # ------------------------------------------------------------------
    # Step 2a: Check inputs
    # ------------------------------------------------------------------
    if not dataset.has_roles:
        raise DatasetError("assign roles before building the grid")
    if not is_power_of_two(grid_size):
        raise DatasetError(f"grid size {grid_size} is not a power of two")

    x_min, x_max = float(dataset.x[0]), float(dataset.x[-1])
    if not x_max > x_min:
        raise DatasetError(f"degenerate predictor range [{x_min!r}, {x_max!r}]")

    # ------------------------------------------------------------------
    # Step 2b: Nearest-node assignment (x is sorted, so nodes are too)
    # ------------------------------------------------------------------
    dx = (x_max - x_min) / (grid_size - 1)
    nodes = np.clip(np.rint((dataset.x - x_min) / dx).astype(np.int64), 0, grid_size - 1)

    clash = np.flatnonzero(np.diff(nodes) == 0)
    if clash.size:
        i = int(clash[0])
        raise GridCollisionError((float(dataset.x[i]), float(dataset.x[i + 1])), int(nodes[i]))

    # ------------------------------------------------------------------
    # Step 2c: Fill node arrays
    # ------------------------------------------------------------------
    roles = [SampleRole.AUGMENTED] * grid_size
    for node, role in zip(nodes, dataset.roles):
        roles[node] = role

    truths = np.full(grid_size, np.nan)
    truths[nodes] = dataset.y

    values = np.zeros(grid_size)
    values[nodes] = np.nan_to_num(dataset.y, nan=0.0)

    sample_index = np.full(grid_size, -1, dtype=np.int64)
    sample_index[nodes] = np.arange(len(dataset))

    grid = GridSignal(x_min, dx, values, tuple(roles), truths, sample_index)

    if verbose:
        n_aug = int(grid.mask(SampleRole.AUGMENTED).sum())
        print(f"📐 Uniform grid: {grid_size} nodes, dx={dx:.6g}, {n_aug} augmented")

    return grid


# ----------------------------------------------------------------------
# Step 3: Mirror extension and its inverse
# ----------------------------------------------------------------------

def mirror_extend(grid: GridSignal) -> GridSignal:
    """
    Append the reversed grid: output[j] = input[j], output[2M-1-j] = input[j].

    Endpoints are duplicated, so the length doubles and stays a power of two.
    Values, roles, truths and sample indices are all mirrored.
    """

    def _mirror(a: np.ndarray) -> np.ndarray:
        return np.concatenate([a, a[::-1]])

    return GridSignal(
        origin=grid.origin,
        dx=grid.dx,
        values=_mirror(grid.values),
        roles=grid.roles + grid.roles[::-1],
        truths=_mirror(grid.truths),
        sample_index=_mirror(grid.sample_index),
    )


def restrict(extended: GridSignal) -> GridSignal:
    """Return the first (unmirrored) half of an extended grid."""
    m = len(extended)
    if m % 2:
        raise DatasetError(f"cannot restrict a grid of odd length {m}")
    half = m // 2
    return GridSignal(
        origin=extended.origin,
        dx=extended.dx,
        values=extended.values[:half],
        roles=extended.roles[:half],
        truths=extended.truths[:half],
        sample_index=extended.sample_index[:half],
    )


# ----------------------------------------------------------------------
# Step 4: Initial condition
# ----------------------------------------------------------------------

def init_condition(grid: GridSignal) -> GridSignal:
    """Truths on TRAIN nodes, zero on every other node; roles and truths untouched."""
    train = grid.mask(SampleRole.TRAIN)
    return grid.with_values(np.where(train, grid.truths, 0.0))


# ----------------------------------------------------------------------
# Orchestration
# ----------------------------------------------------------------------

class PreparedSignal(NamedTuple):
    """Outputs of `prepare_signal`."""

    dataset: Dataset
    grid: GridSignal
    extended: GridSignal


def prepare_signal(dataset: Dataset, config: FitConfig, *, verbose: bool = False) -> PreparedSignal:
    """
    Run split -> grid -> mirror -> initial condition.

    Returns
    -------
    PreparedSignal
        The role-assigned dataset, the unmirrored grid, and the extended
        signal holding the initial condition.
    """

    dataset = assign_roles(dataset, config)
    if verbose:
        counts = {role.value: n for role, n in dataset.role_counts().items()}
        print(f"🔀 Roles: {counts}")

    grid_size = config.grid_size or smallest_grid_size(len(dataset))
    grid = to_uniform_grid(dataset, grid_size, verbose=verbose)
    extended = init_condition(mirror_extend(grid))

    if verbose:
        print(f"🪞 Extended signal: {len(extended)} nodes, window width L={extended.window_width:.6g}")

    return PreparedSignal(dataset, grid, extended)
