"""Cycle, spectral and economic analysis of hourly energy-storage series."""

from .cycles import (
    CycleRecord,
    CycleThresholds,
    PricedCycle,
    attach_prices,
    cycle_frequency,
    detect_cycles,
)
from .economics import (
    AnnualCashflow,
    StorageConfig,
    annualized_cost,
    annuity_factor,
    cumulative_unit_benefit,
    lcos,
    overall_price_spread,
    price_spread_summary,
    unit_benefit,
)
from .emissions import (
    EmissionPathway,
    beta_cdf,
    beta_pdf,
    cumulative_emission,
    emission,
    solve_beta,
    solve_pathway,
)
from .errors import StoralyzeError, UndefinedResult, ValidationError
from .ingest import (
    CostAssumptions,
    CostTable,
    NormalizedSeries,
    TimeSeries,
    default_costs_path,
    load_costs,
    load_series,
    normalize_minmax,
    save_series,
)
from .pathways import (
    HydrogenFlows,
    PathwayLedger,
    revenue_breakdown,
    split_direct_indirect,
    split_electricity_heating,
)
from .spectral import (
    Scalogram,
    Spectrum,
    cwt_scalogram,
    dominant_periods,
    fft_spectrum,
    morlet,
    pseudo_period,
)

__version__ = "0.1.0"

__all__ = [
    "AnnualCashflow",
    "CostAssumptions",
    "CostTable",
    "CycleRecord",
    "CycleThresholds",
    "EmissionPathway",
    "HydrogenFlows",
    "NormalizedSeries",
    "PathwayLedger",
    "PricedCycle",
    "Scalogram",
    "Spectrum",
    "StorageConfig",
    "StoralyzeError",
    "TimeSeries",
    "UndefinedResult",
    "ValidationError",
    "annualized_cost",
    "annuity_factor",
    "attach_prices",
    "beta_cdf",
    "beta_pdf",
    "cumulative_emission",
    "cumulative_unit_benefit",
    "cwt_scalogram",
    "cycle_frequency",
    "default_costs_path",
    "detect_cycles",
    "dominant_periods",
    "emission",
    "fft_spectrum",
    "lcos",
    "load_costs",
    "load_series",
    "morlet",
    "normalize_minmax",
    "overall_price_spread",
    "price_spread_summary",
    "pseudo_period",
    "revenue_breakdown",
    "save_series",
    "solve_beta",
    "solve_pathway",
    "split_direct_indirect",
    "split_electricity_heating",
    "unit_benefit",
]
