from .dataset_io import (
    read_dataset_csv,
    trace_payload,
    write_dataset_csv,
    write_json,
    write_predictions_csv,
    write_snapshots_csv,
    write_trace_json,
)
from .commands import build_parser, main
