"""
Simple entry point for the Fourier learner.

With arguments, this script is the command line tool:

    python app.py synth --out data/synth/benchmark.csv
    python app.py fit --input data/synth/benchmark.csv --calibrated
    python app.py calibrate --candidates 4 8 16 32

Without arguments it runs the published benchmark end to end:
1) Samples the benchmark function (512 points on [-25, 25], noise std 0.1).
2) Saves it and loads it back from CSV.
3) Fits it with the calibrated passband step, recording model snapshots.
4) Saves predictions, the per-iteration trace and the snapshots.
5) Prints the R² trace.

Notes
-----
- Outputs are saved under `$FOURIER_DATA_DIR` (default `data/`).
- Set `FOURIER_DATA_DIR` in a `.env` file to move them.
"""

# ----------------------------------------------------------------------
# Imports
# ----------------------------------------------------------------------

import os
import sys
from pathlib import Path

from dotenv import load_dotenv

from src import (
    FitConfig,                  # src/domain/fit_config.py
    SynthSpec,                  # src/synth/generate_benchmark_data.py
    generate,
    fit,                        # src/trainer/fourier_trainer.py
    read_dataset_csv,           # src/cli/dataset_io.py
    write_dataset_csv,
    write_predictions_csv,
    write_snapshots_csv,
    write_trace_json,
    main,                       # src/cli/commands.py
)


# ----------------------------------------------------------------------
# Main
# ----------------------------------------------------------------------

if __name__ == "__main__":

    if len(sys.argv) > 1:
        sys.exit(main(sys.argv[1:]))

    load_dotenv()
    data_dir = Path(os.getenv("FOURIER_DATA_DIR", "data"))

    # ------------------------------------------------------------------
    # Stage 1: Sample the benchmark
    # ------------------------------------------------------------------

    dataset = generate(SynthSpec(), verbose=True)
    bench_path = write_dataset_csv(dataset, data_dir / "synth" / "benchmark.csv")
    print(f"✅ Benchmark saved to {bench_path}.\n")

    # ------------------------------------------------------------------
    # Stage 2: Load it back
    # ------------------------------------------------------------------

    dataset = read_dataset_csv(bench_path, verbose=True)
    print("✅ Benchmark loaded.\n")

    # ------------------------------------------------------------------
    # Stage 3: Fit with the calibrated passband step
    # ------------------------------------------------------------------

    config = FitConfig.calibrated(snapshot_every=5)
    result = fit(dataset, config, verbose=True)
    print("✅ Model fitted.\n")

    # ------------------------------------------------------------------
    # Stage 4: Save outputs
    # ------------------------------------------------------------------

    fit_dir = data_dir / "fit"
    write_predictions_csv(result, fit_dir / "predictions.csv")
    write_trace_json(result, fit_dir / "trace.json")
    write_snapshots_csv(result, fit_dir / "snapshots.csv")
    print(f"✅ Predictions, trace and snapshots saved to {fit_dir}.\n")

    # ------------------------------------------------------------------
    # Stage 5: R² trace
    # ------------------------------------------------------------------

    print(result.trace_frame().to_string(index=False))
