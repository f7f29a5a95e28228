from .build_grid import (
    PreparedSignal,
    assign_roles,
    init_condition,
    mirror_extend,
    prepare_signal,
    random_split,
    restrict,
    smallest_grid_size,
    to_uniform_grid,
)
