from .scores import MetricWindow, r2, r2_or_none, window_std
