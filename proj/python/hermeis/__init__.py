"""Single-cycle I/Q impedance sweep simulator.

The heavy lifting lives in the compiled extension; this package re-exports
its surface and adds a couple of pure-python conveniences.
"""

from fractions import Fraction

from hermeis._core import (
    BandError,
    ChannelConfig,
    ClockConfig,
    MissingGroundTruthError,
    ParseError,
    PlanError,
    PointFlags,
    RandlesModel,
    RheostatSpec,
    SamplingPlan,
    SpectrumPoint,
    SweepConfig,
    SweepResult,
    ValidationError,
    acquisition_time,
    adc_quantize,
    channel_capacity,
    compute_fcw,
    faradaic_corner_hz,
    fcw_unchecked,
    log_grid,
    overflow_budget,
    parse_config,
    parse_config_text,
    plan_sampling,
    quarter_boundaries,
    randles_impedance,
    reference_amplitude,
    rheostat_resistance,
    run_sweep,
    sweep_csv,
    verify,
    write_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]


def period_fraction(plan: SamplingPlan) -> Fraction:
    """Samples per period of a plan as an exact fraction."""
    num, den = plan.period_rational.split("/")
    return Fraction(int(num), int(den))
