"""Storage economics: annualized costs, levelised cost and benefit metrics.

All per-MWh quantities divide by the energy measured on the storage
side of the discharging link, i.e. before the discharge efficiency is
applied.  When nothing was discharged the ratio is undefined:
:func:`lcos` returns ``None`` (never infinity) so that report tables
stay well formed, while :func:`unit_benefit` raises
:class:`~storalyze.errors.ZeroDischarge`.
"""
from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import (
    EmptyInput,
    InvalidLifetime,
    NoCycles,
    ValidationError,
    ZeroDischarge,
)
from .ingest import CostTable


def annuity_factor(rate: float, lifetime: int) -> float:
    """Fraction of an investment due each year over its lifetime.

    ``rate / (1 - (1 + rate)**-lifetime)``; a zero rate degenerates to
    straight-line ``1 / lifetime``.
    """
    if int(lifetime) != lifetime or lifetime < 1:
        raise InvalidLifetime(f"lifetime {lifetime} must be an integer >= 1")
    if not 0.0 <= rate < 1.0:
        raise ValidationError(f"discount rate {rate} outside [0, 1)")
    if rate == 0.0:
        return 1.0 / lifetime
    return rate / (1.0 - (1.0 + rate) ** (-lifetime))


@dataclasses.dataclass(frozen=True)
class StorageConfig:
    """Capacities making up one storage chain.

    ``charging_link`` and ``discharging_link`` are ``(technology, kW)``
    pairs; ``store`` is ``(technology, kWh)``.  Chains whose storage
    medium is accounted elsewhere (hydrogen sold straight to methanation
    without transiting the store) set ``include_store_cost=False``.
    """

    pathway: str
    charging_link: tuple[str, float]
    store: tuple[str, float] | None = None
    discharging_link: tuple[str, float] | None = None
    include_store_cost: bool = True

    def __post_init__(self):
        indirect = self.pathway in ("ESE", "ESH")
        direct = self.pathway in ("ESFC", "ESSE", "ESSH")
        if indirect and self.include_store_cost:
            raise ValidationError(
                f"{self.pathway}: indirect chains must not carry store cost"
            )
        if direct and not self.include_store_cost:
            raise ValidationError(
                f"{self.pathway}: direct chains must carry store cost"
            )


def annualized_cost(config: StorageConfig, costs: CostTable, year: int) -> float:
    """Total annualized capital plus fixed O&M cost of a chain, EUR/yr.

    Each component contributes ``capacity * capex * (annuity + FOM%)``
    with the capex looked up (and interpolated) for ``year``.
    """
    total = 0.0
    components = [("charging_link", config.charging_link)]
    if config.store is not None and config.include_store_cost:
        components.append(("store", config.store))
    if config.discharging_link is not None:
        components.append(("discharging_link", config.discharging_link))
    for role, (tech, capacity) in components:
        if capacity < 0:
            raise ValidationError(f"{role} capacity {capacity} < 0")
        ca = costs.lookup(tech, year)
        expected_unit = "EUR_per_kWh" if role == "store" else "EUR_per_kW"
        if ca.capex_unit != expected_unit:
            raise ValidationError(
                f"{role} {tech!r}: capex is per {ca.capex_unit}, "
                f"expected {expected_unit}"
            )
        af = annuity_factor(ca.discount_rate, ca.lifetime_years)
        total += capacity * ca.capex * (af + ca.fom_pct / 100.0)
    return total


@dataclasses.dataclass(frozen=True)
class AnnualCashflow:
    """Money and energy totals of one operating year."""

    year: int
    annualized_cost: float  # EUR/yr
    revenue: float  # EUR/yr
    charging_cost: float  # EUR/yr
    discharged_energy: float  # MWh/yr, before discharge efficiency

    def __post_init__(self):
        if self.annualized_cost < 0 or self.discharged_energy < 0:
            raise ValidationError(
                f"year {self.year}: cost and discharged energy must be >= 0"
            )


def _weights(flows, step_years, discount_rate):
    base = flows[0].year
    w = []
    for f in flows:
        weight = float(step_years)
        if discount_rate is not None:
            weight /= (1.0 + discount_rate) ** (f.year - base)
        w.append(weight)
    return w


def lcos(
    flows: list[AnnualCashflow],
    mode: str = "cumulative",
    step_years: int = 5,
    discount_rate: float | None = None,
) -> float | None:
    """Levelised cost of storage in EUR per discharged MWh.

    ``mode="cumulative"`` sums cost and energy over all given years,
    each planning year standing for ``step_years`` calendar years;
    ``mode="snapshot"`` uses only the last year.  ``discount_rate``
    optionally discounts both cost and energy to the first year.
    Returns ``None`` when no energy was discharged.
    """
    if not flows:
        raise EmptyInput("lcos needs at least one cashflow year")
    if mode == "snapshot":
        flows = flows[-1:]
    elif mode != "cumulative":
        raise ValidationError(f"unknown lcos mode {mode!r}")
    w = _weights(flows, step_years, discount_rate)
    cost = sum(wi * f.annualized_cost for wi, f in zip(w, flows))
    energy = sum(wi * f.discharged_energy for wi, f in zip(w, flows))
    if energy == 0.0:
        return None
    return cost / energy


def unit_benefit(flow: AnnualCashflow) -> float:
    """Market benefit per discharged MWh for one year.

    ``(revenue - charging_cost) / discharged_energy``.
    """
    if flow.discharged_energy == 0.0:
        raise ZeroDischarge(f"year {flow.year}: no energy discharged")
    return (flow.revenue - flow.charging_cost) / flow.discharged_energy


def cumulative_unit_benefit(
    flows: list[AnnualCashflow],
    step_years: int = 5,
    discount_rate: float | None = None,
) -> float:
    """Benefit per discharged MWh accumulated over several years."""
    if not flows:
        raise EmptyInput("cumulative unit benefit needs at least one year")
    w = _weights(flows, step_years, discount_rate)
    net = sum(wi * (f.revenue - f.charging_cost) for wi, f in zip(w, flows))
    energy = sum(wi * f.discharged_energy for wi, f in zip(w, flows))
    if energy == 0.0:
        raise ZeroDischarge("no energy discharged in any year")
    return net / energy


def overall_price_spread(priced_cycles) -> float:
    """Mean sell-minus-buy price over complete priced cycles, EUR/MWh."""
    spreads = [
        pc.spread
        for pc in priced_cycles
        if pc.cycle.complete
        and math.isfinite(pc.buy_price)
        and math.isfinite(pc.sell_price)
    ]
    if not spreads:
        raise NoCycles("no complete priced cycles to average")
    return float(np.mean(spreads))


def price_spread_summary(buy_prices, sell_prices) -> float:
    """Difference of mean sell and mean buy price over a set of trades."""
    buy = np.asarray(buy_prices, dtype=np.float64)
    sell = np.asarray(sell_prices, dtype=np.float64)
    if buy.size == 0 or sell.size == 0:
        raise EmptyInput("price spread summary needs non-empty price sets")
    return float(sell.mean() - buy.mean())
