"""Attribution of hydrogen flows and revenue to five storage pathways.

Hydrogen leaving the electrolyser either transits the store before use
(direct storage) or bypasses it straight into methanation (indirect,
the gas network acting as the buffer).  The five pathway tags are:

* ``ESFC``  -- store, then re-electrified in a fuel cell;
* ``ESSE``  -- store, then methanation, gas burned for electricity;
* ``ESSH``  -- store, then methanation, gas burned for heat;
* ``ESE``   -- bypass to methanation, gas burned for electricity;
* ``ESH``   -- bypass to methanation, gas burned for heat.

Because molecules are not labelled, the hourly bypass split is a
convention: ``max_indirect`` (default) claims every coincident
electrolyser/methanation MWh as a bypass, ``max_direct`` routes as much
as possible through the store first.  The electricity/heat split is the
annual proportion of gas use, applied identically to stored and
bypassed hydrogen.

Ledgers are kept additive to machine precision by computing one side
of every split as the remainder of the total.
"""
from __future__ import annotations

import dataclasses

import numpy as np

from .errors import (
    ConservationViolation,
    MisalignedSeries,
    ValidationError,
    ZeroGasUse,
)

PATHWAYS = ("ESFC", "ESSE", "ESSH", "ESE", "ESH")
DIRECT_PATHWAYS = ("ESFC", "ESSE", "ESSH")
INDIRECT_PATHWAYS = ("ESE", "ESH")

_CONS_RTOL = 1e-6
_CONS_ATOL = 1e-6


def _arr(x) -> np.ndarray:
    return np.asarray(getattr(x, "values", x), dtype=np.float64)


@dataclasses.dataclass(frozen=True)
class HydrogenFlows:
    """Hourly hydrogen-system flows for one region and year.

    All hourly arrays are MWh (hydrogen side) per hour and must share
    one index.  ``gas_to_power_annual``/``gas_to_heat_annual`` are the
    year's synthetic-gas consumption by sink, MWh.  Prices are hourly
    EUR/MWh.
    """

    electrolyzer_out: np.ndarray
    store_in: np.ndarray
    store_out: np.ndarray
    fuelcell_in: np.ndarray
    sabatier_in: np.ndarray
    gas_to_power_annual: float
    gas_to_heat_annual: float
    h2_price: np.ndarray
    elec_price: np.ndarray

    _HOURLY = (
        "electrolyzer_out",
        "store_in",
        "store_out",
        "fuelcell_in",
        "sabatier_in",
        "h2_price",
        "elec_price",
    )

    def __post_init__(self):
        n = None
        for name in self._HOURLY:
            a = _arr(getattr(self, name))
            if n is None:
                n = a.size
            elif a.size != n:
                raise MisalignedSeries(
                    f"{name} has {a.size} hours, expected {n}"
                )
            object.__setattr__(self, name, a)

    def __len__(self) -> int:
        return self.electrolyzer_out.size

    def validate(self) -> None:
        """Check hourly hydrogen conservation.

        The derived bypass ``electrolyzer_out - store_in`` and
        store-to-methanation flow ``store_out - fuelcell_in`` must be
        non-negative, and together they must supply ``sabatier_in``.
        """
        flows = (
            self.electrolyzer_out,
            self.store_in,
            self.store_out,
            self.fuelcell_in,
            self.sabatier_in,
        )
        for name, a in zip(self._HOURLY, flows):
            if (a < 0).any():
                raise ConservationViolation(f"{name} has negative hours")
        tol = _CONS_ATOL + _CONS_RTOL * np.abs(self.electrolyzer_out)
        bypass = self.electrolyzer_out - self.store_in
        if (bypass < -tol).any():
            raise ConservationViolation(
                "store_in exceeds electrolyzer output in some hour"
            )
        from_store = self.store_out - self.fuelcell_in
        if (from_store < -np.maximum(tol, _CONS_ATOL + _CONS_RTOL * self.store_out)).any():
            raise ConservationViolation(
                "fuelcell_in exceeds store output in some hour"
            )
        supply = self.electrolyzer_out + self.store_out
        demand = self.store_in + self.fuelcell_in + self.sabatier_in
        if not np.allclose(supply, demand, rtol=_CONS_RTOL, atol=_CONS_ATOL):
            worst = int(np.argmax(np.abs(supply - demand)))
            raise ConservationViolation(
                f"hydrogen balance violated, worst at hour {worst}: "
                f"supply {supply[worst]:.6f} vs demand {demand[worst]:.6f}"
            )


def split_direct_indirect(
    flows: HydrogenFlows, convention: str = "max_indirect"
) -> tuple[np.ndarray, np.ndarray]:
    """Split electrolyser output into direct-storage and bypass shares.

    Returns ``(direct, indirect)`` hourly arrays summing exactly to
    ``electrolyzer_out``.  ``max_indirect`` takes
    ``min(electrolyzer_out, sabatier_in)`` as the bypass;
    ``max_direct`` first fills the store, so only
    ``electrolyzer_out - store_in`` can bypass.
    """
    flows.validate()
    if convention == "max_indirect":
        indirect = np.minimum(flows.electrolyzer_out, flows.sabatier_in)
    elif convention == "max_direct":
        bypass_capacity = np.clip(flows.electrolyzer_out - flows.store_in, 0.0, None)
        indirect = np.minimum(bypass_capacity, flows.sabatier_in)
    else:
        raise ValidationError(f"unknown split convention {convention!r}")
    direct = flows.electrolyzer_out - indirect
    return direct, indirect


def split_electricity_heating(
    gas_to_power_annual: float, gas_to_heat_annual: float
) -> tuple[float, float]:
    """Fractions of synthetic gas burned for electricity and for heat."""
    if gas_to_power_annual < 0 or gas_to_heat_annual < 0:
        raise ValidationError("gas consumption cannot be negative")
    total = gas_to_power_annual + gas_to_heat_annual
    if total <= 0:
        raise ZeroGasUse("no synthetic gas consumed: split undefined")
    power = gas_to_power_annual / total
    return power, 1.0 - power


@dataclasses.dataclass(frozen=True)
class PathwayEntry:
    """Annual energy, revenue and charging cost booked to one pathway."""

    energy: float  # MWh hydrogen
    revenue: float  # EUR
    charging_cost: float  # EUR


@dataclasses.dataclass(frozen=True)
class PathwayLedger:
    """Annual revenue ledger over the five hydrogen pathways."""

    entries: dict[str, PathwayEntry]
    direct_total: float  # EUR revenue over ESFC+ESSE+ESSH
    indirect_total: float  # EUR revenue over ESE+ESH
    direct_capacity: float  # MWh store volume
    indirect_capacity: float  # MW electrolyser share feeding the bypass

    def energy_shares(self) -> dict[str, float]:
        """Each pathway's share of total hydrogen energy (sums to 1)."""
        total = sum(e.energy for e in self.entries.values())
        if total == 0.0:
            return {p: 0.0 for p in PATHWAYS}
        shares = {p: self.entries[p].energy / total for p in PATHWAYS[:-1]}
        shares[PATHWAYS[-1]] = 1.0 - sum(shares.values())
        return shares

    @property
    def total_revenue(self) -> float:
        return self.direct_total + self.indirect_total


def revenue_breakdown(
    flows: HydrogenFlows,
    electrolyzer_efficiency: float = 1.0,
    fuelcell_efficiency: float = 1.0,
    convention: str = "max_indirect",
    store_capacity_mwh: float = 0.0,
    electrolyzer_capacity_mw: float = 0.0,
) -> PathwayLedger:
    """Book hydrogen energy, revenue and charging cost per pathway.

    Revenue is hydrogen sold to methanation at ``h2_price`` for the
    four gas pathways and electricity sold at ``elec_price`` for ESFC.
    The electrolyser's electricity bill
    (``electrolyzer_out / electrolyzer_efficiency * elec_price``) is
    apportioned across pathways by hydrogen energy share.

    Efficiencies default to 1 so the caller controls whether flows are
    metered on the hydrogen or the electricity side.
    """
    for label, eff in (
        ("electrolyzer", electrolyzer_efficiency),
        ("fuel cell", fuelcell_efficiency),
    ):
        if not 0.0 < eff <= 1.0:
            raise ValidationError(
                f"{label} efficiency {eff} outside (0, 1]"
            )
    _, indirect = split_direct_indirect(flows, convention=convention)

    e_fc = float(flows.fuelcell_in.sum())
    e_ind = float(indirect.sum())
    e_dir_sab = float(flows.sabatier_in.sum()) - e_ind

    sab_revenue = float(flows.sabatier_in @ flows.h2_price)
    ind_revenue = float(indirect @ flows.h2_price)
    dir_sab_revenue = sab_revenue - ind_revenue
    fc_revenue = float(flows.fuelcell_in @ flows.elec_price) * fuelcell_efficiency

    charging_total = float(
        (flows.electrolyzer_out / electrolyzer_efficiency) @ flows.elec_price
    )

    need_gas_split = (e_dir_sab > 0.0) or (e_ind > 0.0)
    if need_gas_split:
        power_share, heat_share = split_electricity_heating(
            flows.gas_to_power_annual, flows.gas_to_heat_annual
        )
    else:
        power_share = heat_share = 0.0

    def gas_split(total: float) -> tuple[float, float]:
        power = total * power_share
        return power, total - power

    e_esse, e_essh = gas_split(e_dir_sab)
    e_ese, e_esh = gas_split(e_ind)
    r_esse, r_essh = gas_split(dir_sab_revenue)
    r_ese, r_esh = gas_split(ind_revenue)

    energies = {"ESFC": e_fc, "ESSE": e_esse, "ESSH": e_essh, "ESE": e_ese, "ESH": e_esh}
    revenues = {"ESFC": fc_revenue, "ESSE": r_esse, "ESSH": r_essh, "ESE": r_ese, "ESH": r_esh}

    total_energy = e_fc + e_dir_sab + e_ind
    charges = {}
    booked = 0.0
    for p in PATHWAYS[:-1]:
        c = charging_total * (energies[p] / total_energy) if total_energy > 0 else 0.0
        charges[p] = c
        booked += c
    charges[PATHWAYS[-1]] = charging_total - booked if total_energy > 0 else 0.0

    entries = {
        p: PathwayEntry(energy=energies[p], revenue=revenues[p], charging_cost=charges[p])
        for p in PATHWAYS
    }
    elec_total = float(flows.electrolyzer_out.sum())
    indirect_capacity = (
        electrolyzer_capacity_mw * (e_ind / elec_total) if elec_total > 0 else 0.0
    )
    return PathwayLedger(
        entries=entries,
        direct_total=fc_revenue + dir_sab_revenue,
        indirect_total=ind_revenue,
        direct_capacity=store_capacity_mwh,
        indirect_capacity=indirect_capacity,
    )


def ledger_to_nested(ledger: PathwayLedger, country: str, year: int) -> dict:
    """Nest a ledger as ``{country: {year: {pathway: {...}}}}`` for JSON."""
    body = {
        p: {
            "energy": ledger.entries[p].energy,
            "revenue": ledger.entries[p].revenue,
            "charging_cost": ledger.entries[p].charging_cost,
        }
        for p in PATHWAYS
    }
    return {country: {str(year): body}}
