import numpy as np
import pytest

from src.domain import Dataset, FitConfig, IterationRecord, SampleRole, Termination
from src.metrics import MetricWindow
from src.pipeline import prepare_signal
from src.spectral import dirichlet_smooth
from src.trainer import TrainerState, calibrate_delta_bins, fit, h_bins_at, should_stop, step

TR, VA, TE = SampleRole.TRAIN, SampleRole.VALIDATION, SampleRole.TEST


def _initial_state(dataset, config):
    return TrainerState.initial(prepare_signal(dataset, config).extended, config)


def _random_instance(rng):
    """Samples on integer nodes of a 64-node grid, both ends occupied."""
    inner = rng.choice(np.arange(1, 63), size=int(rng.integers(6, 40)), replace=False)
    x = np.concatenate([[0, 63], inner]).astype(float)
    y = rng.normal(size=x.size)
    roles = [TR] + [(TR, VA, TE)[i] for i in rng.integers(0, 3, size=x.size - 1)]
    return Dataset(x, y, roles)


# ----------------------------------------------------------------------
# Schedule
# ----------------------------------------------------------------------

def test_schedule_is_block_constant():
    config = FitConfig(m=5, h0=0, delta_bins=1)
    assert [h_bins_at(n, config) for n in range(5)] == [0] * 5
    assert h_bins_at(5, config) == 1


def test_calibrated_schedule_reaches_152_bins_at_the_cap():
    config = FitConfig.calibrated()
    assert [h_bins_at(n, config) for n in (0, 4, 5, 99)] == [0, 0, 8, 152]


def test_schedule_rejects_negative_index():
    with pytest.raises(ValueError):
        h_bins_at(-1, FitConfig())


# ----------------------------------------------------------------------
# step
# ----------------------------------------------------------------------

def test_full_band_freezes_held_out_nodes(smooth_dataset):
    config = FitConfig(h0=1000)
    state = _initial_state(smooth_dataset, config)
    after = step(state, config)
    held_out = ~state.signal.mask(TR)
    assert np.array_equal(after.signal.values[held_out], state.signal.values[held_out])


def test_all_train_is_pinned():
    x = np.linspace(0, 1, 16)
    ds = Dataset(x, np.cos(3 * x), [TR] * 16)
    config = FitConfig(m=2, max_iter=6)
    state = _initial_state(ds, config)
    for _ in range(4):
        state = step(state, config)
        assert np.array_equal(state.signal.values, state.signal.truths)
        assert state.trace[-1].r2_train == 1.0
        assert state.trace[-1].r2_val is None and state.trace[-1].r2_test is None


def test_dc_step_fills_held_out_with_the_mean(smooth_dataset):
    config = FitConfig(h0=0)
    state = _initial_state(smooth_dataset, config)
    after = step(state, config)
    expected = dirichlet_smooth(state.signal.values, 0)
    held_out = ~state.signal.mask(TR)
    np.testing.assert_allclose(after.signal.values[held_out], expected[held_out], atol=1e-12)
    np.testing.assert_allclose(after.signal.values[held_out], state.signal.values.mean(), atol=1e-12)


def test_step_records_one_iteration(smooth_dataset, small_config):
    state = _initial_state(smooth_dataset, small_config)
    after = step(state, small_config)
    assert after.n == 1 and len(after.trace) == 1
    record = after.trace[0]
    assert record.n == 0 and record.h_bins == 0
    assert record.r2_val is not None and record.r2_test is not None
    assert record.sigma_window is None


# ----------------------------------------------------------------------
# should_stop
# ----------------------------------------------------------------------

def _state_after(n, values, config, signal):
    window = MetricWindow(config.m)
    for v in values:
        window = window.push(v, n // config.m)
    trace = tuple(IterationRecord(i, h_bins_at(i, config), 1.0, None, None) for i in range(n + 1))
    return TrainerState(n + 1, signal, trace, window)


def test_identical_block_converges(smooth_dataset):
    config = FitConfig(m=5, sigma_min=1e-4)
    signal = _initial_state(smooth_dataset, config).signal
    state = _state_after(4, [0.5] * 5, config, signal)
    assert should_stop(state, config) is Termination.CONVERGED


def test_mid_block_never_converges(smooth_dataset):
    config = FitConfig(m=5, sigma_min=1e-4)
    signal = _initial_state(smooth_dataset, config).signal
    state = _state_after(2, [0.5] * 3, config, signal)
    assert should_stop(state, config) is None


def test_iteration_cap(smooth_dataset):
    config = FitConfig(m=5, sigma_min=0.0, max_iter=100)
    signal = _initial_state(smooth_dataset, config).signal
    state = _state_after(99, [0.1, 0.2, 0.3, 0.4, 0.5], config, signal)
    assert should_stop(state, config) is Termination.MAX_ITER_REACHED


def test_no_stop_before_first_iteration(smooth_dataset, small_config):
    assert should_stop(_initial_state(smooth_dataset, small_config), small_config) is None


# ----------------------------------------------------------------------
# fit
# ----------------------------------------------------------------------

def test_fit_outputs(smooth_dataset, small_config):
    result = fit(smooth_dataset, small_config)
    assert len(result.predictions) == len(smooth_dataset)
    assert [p.x for p in result.predictions] == smooth_dataset.x.tolist()
    for p in result.predictions:
        if p.role is TR:
            assert p.y_pred == p.y_true
    assert result.grid_size == 64
    assert result.window_width == pytest.approx(128 * 10 / 63)
    assert [r.n for r in result.trace] == list(range(len(result.trace)))
    assert result.final_iteration == result.trace[-1].n


def test_fit_is_deterministic(benchmark_dataset):
    config = FitConfig.calibrated(max_iter=20)
    a, b = fit(benchmark_dataset, config), fit(benchmark_dataset, config)
    assert a.trace == b.trace
    assert a.predictions == b.predictions


def test_full_band_start_exhausts_bandwidth(smooth_dataset):
    result = fit(smooth_dataset, FitConfig(h0=64))
    assert result.termination is Termination.BANDWIDTH_EXHAUSTED
    assert len(result.trace) == 1
    for p in result.predictions:
        assert p.y_pred == (p.y_true if p.role is TR else 0.0)


def test_all_train_dataset_scores_one():
    x = np.linspace(-2, 2, 32)
    result = fit(Dataset(x, x**2, [TR] * 32), FitConfig(m=3, max_iter=12))
    assert all(r.r2_train == 1.0 for r in result.trace)


def test_snapshots(smooth_dataset):
    result = fit(smooth_dataset, FitConfig(m=3, max_iter=10, sigma_min=0.0, snapshot_every=4))
    ns = [s.n for s in result.snapshots]
    assert ns[0] == -1 and ns[-1] == result.final_iteration
    assert ns[1:] == sorted(set([0, 4, 8] + [result.final_iteration]))
    assert all(len(s.values) == result.grid_size for s in result.snapshots)
    frame = result.snapshots_frame()
    assert list(frame.columns) == ["n", "h_bins", "x", "y_pred"]
    assert len(frame) == len(ns) * result.grid_size


def test_trainer_invariants_on_random_instances(rng):
    for _ in range(20):
        ds = _random_instance(rng)
        config = FitConfig(
            m=int(rng.integers(2, 5)), max_iter=15, delta_bins=int(rng.integers(1, 4)), grid_size=64
        )
        state = _initial_state(ds, config)
        train = state.signal.mask(TR)
        assert np.array_equal(state.signal.values, state.signal.values[::-1])
        while True:
            state = step(state, config)
            values = state.signal.values
            # Training nodes pinned exactly.
            assert np.array_equal(values[train], state.signal.truths[train])
            # Mirror symmetry survives the filter.
            np.testing.assert_allclose(values, values[::-1], atol=1e-9)
            if should_stop(state, config):
                break
        hs = [r.h_bins for r in state.trace]
        assert hs == sorted(hs)
        assert all(hs[i] == hs[i - i % config.m] for i in range(len(hs)))


def test_r2_rises_through_blocks():
    x = np.linspace(-25, 25, 256)
    ds = Dataset(x, 1.0 + np.cos(2 * np.pi * x / 50) + 0.5 * np.sin(2 * np.pi * x / 10))
    result = fit(ds, FitConfig(delta_bins=16))
    first_block_end = result.trace[result.config.m - 1]
    assert first_block_end.r2_val < result.final_record.r2_val


# ----------------------------------------------------------------------
# Calibration sweep
# ----------------------------------------------------------------------

def test_calibration_report(smooth_dataset):
    report = calibrate_delta_bins(smooth_dataset, FitConfig(m=3, max_iter=30), candidates=(4, 1, 2), target_r2=-10.0)
    assert [r.delta_bins for r in report.rows] == [1, 2, 4]
    acceptable = [
        r for r in report.rows if r.termination in (Termination.CONVERGED, Termination.MAX_ITER_REACHED)
    ]
    best = max(acceptable, key=lambda r: (r.score, -r.delta_bins)) if acceptable else None
    assert report.selected == (best.delta_bins if best else None)
    payload = report.to_dict()
    assert payload["target_r2"] == -10.0
    assert [c["delta_bins"] for c in payload["candidates"]] == [1, 2, 4]
    assert isinstance(payload["candidates"][0]["termination"], str)


def test_calibration_with_unreachable_target(smooth_dataset):
    report = calibrate_delta_bins(smooth_dataset, FitConfig(m=3, max_iter=9), candidates=(1,), target_r2=2.0)
    assert report.selected is None
    assert report.to_frame()["selected"].tolist() == [False]


def test_calibration_never_selects_an_exhausted_step(smooth_dataset):
    config = FitConfig(m=3, max_iter=30, sigma_min=0.0)
    report = calibrate_delta_bins(smooth_dataset, config, candidates=(32,), target_r2=-10.0)
    assert report.rows[0].termination is Termination.BANDWIDTH_EXHAUSTED
    assert report.rows[0].final_iteration == 5
    assert report.selected is None
