"""Robust value-at-risk under volatility uncertainty.

Everything lives in the compiled ``_core`` extension: the G-normal
distribution and its worst-case CDF/quantile/VaR, the G-heat
finite-difference oracle, rolling-window parameter estimation, AR(1)
forecasting, the forecasting pipeline, and Kupiec/Christoffersen
backtesting.  This package re-exports it flat::

    import gvar_engine as ge

    series = ge.simulate_regime_switching(2000, 0.5, 2.0, seed=7)
    cfg = ge.EngineConfig()
    cfg.K, cfg.L, cfg.N = 5, 10, 100
    records = ge.run_gvar(series, cfg)
    report = ge.report_from_records(records, cfg.alpha)

All library errors derive from :class:`gvar_engine.Error`.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
