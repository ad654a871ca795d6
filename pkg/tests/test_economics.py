"""Annuities, levelised cost, unit benefit, and price spreads."""
from __future__ import annotations

import numpy as np
import pytest

from storalyze.cycles import CycleRecord, PricedCycle
from storalyze.economics import (
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
from storalyze.errors import (
    EmptyInput,
    InvalidLifetime,
    NoCycles,
    ValidationError,
    ZeroDischarge,
)
from storalyze.ingest import default_costs_path, load_costs

from reference import annuity_by_recurrence


@pytest.fixture(scope="module")
def costs():
    return load_costs(default_costs_path())


class TestAnnuityFactor:
    def test_zero_rate_limit(self):
        assert annuity_factor(0.0, 10) == pytest.approx(0.1)

    def test_single_year(self):
        assert annuity_factor(0.07, 1) == pytest.approx(1.07)

    def test_reference_value(self):
        assert annuity_factor(0.07, 25) == pytest.approx(0.08581, abs=1e-5)

    def test_against_present_value_oracle(self):
        """Closed form vs bisection on the present-value identity."""
        for rate in (0.0, 0.03, 0.07, 0.12):
            for lifetime in (1, 5, 20, 100):
                assert annuity_factor(rate, lifetime) == pytest.approx(
                    annuity_by_recurrence(rate, lifetime), abs=1e-12
                )

    def test_invalid_inputs(self):
        with pytest.raises(InvalidLifetime):
            annuity_factor(0.07, 0)
        with pytest.raises(ValidationError):
            annuity_factor(-0.01, 10)
        with pytest.raises(ValidationError):
            annuity_factor(1.0, 10)


def battery_config(store_kwh=1000.0, inverter_kw=1000.0):
    return StorageConfig(
        pathway="battery",
        charging_link=("battery inverter", inverter_kw),
        store=("battery storage", store_kwh),
    )


class TestAnnualizedCost:
    def test_battery_2050_reference(self, costs):
        """1 MWh store + 1 MW inverter at 2050 costs: ~12,863 EUR/yr."""
        total = annualized_cost(battery_config(), costs, 2050)
        store_part = 75.0 * 1000 * annuity_factor(0.07, 20)
        inverter_part = 60.0 * 1000 * (annuity_factor(0.07, 20) + 0.002)
        assert store_part == pytest.approx(7079.47, abs=0.01)
        assert inverter_part == pytest.approx(5783.58, abs=0.01)
        assert total == pytest.approx(store_part + inverter_part)
        assert total == pytest.approx(12863.05, abs=0.01)

    def test_electrolyzer_only_ese(self, costs):
        """1 MW electrolyzer at 500 EUR/kW, 25 yr, FOM 5 -> ~67,905."""
        cfg = StorageConfig(
            pathway="ESE",
            charging_link=("electrolysis", 1000.0),
            store=("hydrogen storage underground", 5000.0),
            include_store_cost=False,
        )
        total = annualized_cost(cfg, costs, 2050)
        assert total == pytest.approx(500000 * (annuity_factor(0.07, 25) + 0.05))
        assert total == pytest.approx(67905.26, abs=0.01)

    def test_zero_capacity(self, costs):
        cfg = StorageConfig(pathway="x", charging_link=("electrolysis", 0.0))
        assert annualized_cost(cfg, costs, 2030) == 0.0

    def test_store_cost_flag_matches_pathway(self):
        with pytest.raises(ValidationError):
            StorageConfig(
                pathway="ESE",
                charging_link=("electrolysis", 1.0),
                store=("hydrogen storage underground", 1.0),
                include_store_cost=True,
            )
        with pytest.raises(ValidationError):
            StorageConfig(
                pathway="ESFC",
                charging_link=("electrolysis", 1.0),
                store=("hydrogen storage underground", 1.0),
                include_store_cost=False,
            )

    def test_capex_unit_checked(self, costs):
        # a store priced per kW is a data error, not a silent product
        cfg = StorageConfig(
            pathway="x",
            charging_link=("battery storage", 1.0),  # EUR_per_kWh on a link
        )
        with pytest.raises(ValidationError):
            annualized_cost(cfg, costs, 2030)

    def test_discharging_link_counted(self, costs):
        with_fc = StorageConfig(
            pathway="ESFC",
            charging_link=("electrolysis", 1000.0),
            store=("hydrogen storage underground", 1000.0),
            discharging_link=("fuel cell", 1000.0),
        )
        without = StorageConfig(
            pathway="ESFC",
            charging_link=("electrolysis", 1000.0),
            store=("hydrogen storage underground", 1000.0),
        )
        fc = costs.lookup("fuel cell", 2050)
        delta = annualized_cost(with_fc, costs, 2050) - annualized_cost(
            without, costs, 2050
        )
        assert delta == pytest.approx(
            1000.0 * fc.capex * (annuity_factor(0.07, fc.lifetime_years) + 0.05)
        )


def year(y, cost, revenue=0.0, charging=0.0, energy=0.0):
    return AnnualCashflow(
        year=y,
        annualized_cost=cost,
        revenue=revenue,
        charging_cost=charging,
        discharged_energy=energy,
    )


class TestLcos:
    def test_snapshot_reference(self):
        assert lcos([year(2050, 12863.05, energy=300.0)], "snapshot") == pytest.approx(
            42.88, abs=0.01
        )

    def test_cumulative_invariant_under_duplication(self):
        one = [year(2045, 12863.05, energy=300.0)]
        two = one + [year(2050, 12863.05, energy=300.0)]
        assert lcos(two, "cumulative") == pytest.approx(lcos(one, "cumulative"))
        assert lcos(two, "cumulative") == pytest.approx(42.88, abs=0.01)

    def test_cumulative_pools_years(self):
        flows = [year(2045, 1000.0, energy=10.0), year(2050, 3000.0, energy=10.0)]
        assert lcos(flows, "cumulative") == pytest.approx(4000.0 / 20.0)
        assert lcos(flows, "snapshot") == pytest.approx(300.0)

    def test_zero_discharge_is_undefined_marker(self):
        assert lcos([year(2050, 100.0)], "snapshot") is None
        assert lcos([year(2050, 100.0)], "cumulative") is None

    def test_empty_and_bad_mode(self):
        with pytest.raises(EmptyInput):
            lcos([], "snapshot")
        with pytest.raises(ValidationError):
            lcos([year(2050, 1.0, energy=1.0)], "averaged")

    def test_discounted_variant_prefers_early_energy(self):
        flows = [year(2030, 1000.0, energy=100.0), year(2035, 1000.0, energy=0.0)]
        undiscounted = lcos(flows, "cumulative")
        discounted = lcos(flows, "cumulative", discount_rate=0.07)
        # all energy is early, later cost is shrunk by discounting
        assert discounted < undiscounted

    def test_homogeneity_degree_zero(self):
        rng = np.random.default_rng(8)
        flows = [
            year(2030 + 5 * i, float(c), energy=float(e))
            for i, (c, e) in enumerate(zip(rng.uniform(1e3, 1e5, 4), rng.uniform(10, 1e3, 4)))
        ]
        scaled = [
            year(f.year, 17.0 * f.annualized_cost, energy=17.0 * f.discharged_energy)
            for f in flows
        ]
        for mode in ("cumulative", "snapshot"):
            assert lcos(scaled, mode) == pytest.approx(lcos(flows, mode))


class TestUnitBenefit:
    def test_zero_revenue(self):
        assert unit_benefit(year(2030, 0.0, energy=100.0)) == 0.0

    def test_reference_arithmetic(self):
        flow = year(2030, 0.0, revenue=1000.0, charging=400.0, energy=20.0)
        assert unit_benefit(flow) == pytest.approx(30.0)

    def test_zero_discharge_raises(self):
        with pytest.raises(ZeroDischarge):
            unit_benefit(year(2030, 0.0, revenue=10.0))

    def test_linear_in_prices(self):
        flow = year(2030, 0.0, revenue=800.0, charging=300.0, energy=25.0)
        scaled = year(2030, 0.0, revenue=800.0 * 3, charging=300.0 * 3, energy=25.0)
        assert unit_benefit(scaled) == pytest.approx(3.0 * unit_benefit(flow))

    def test_cumulative_pools_years(self):
        flows = [
            year(2030, 0.0, revenue=100.0, charging=0.0, energy=10.0),
            year(2035, 0.0, revenue=0.0, charging=50.0, energy=0.0),
        ]
        assert cumulative_unit_benefit(flows) == pytest.approx(50.0 / 10.0)
        with pytest.raises(ZeroDischarge):
            cumulative_unit_benefit([year(2030, 0.0, revenue=5.0)])

    def test_break_even_ordering(self):
        """UB >= cumulative LCOS exactly when net benefit >= cost."""
        rng = np.random.default_rng(42)
        for _ in range(50):
            flows = [
                year(
                    2030 + 5 * i,
                    float(rng.uniform(0, 1e4)),
                    revenue=float(rng.uniform(0, 2e4)),
                    charging=float(rng.uniform(0, 1e4)),
                    energy=float(rng.uniform(1, 500)),
                )
                for i in range(3)
            ]
            ub = cumulative_unit_benefit(flows)
            cost = lcos(flows, "cumulative")
            net = sum(5 * (f.revenue - f.charging_cost) for f in flows)
            spent = sum(5 * f.annualized_cost for f in flows)
            assert (ub >= cost) == (net >= spent)


def _cycle(buy, sell, bought=1.0, sold=1.0, complete=True):
    rec = CycleRecord(
        charge_start=0, charge_end=1, discharge_start=1, discharge_end=2,
        charge_depth=0.5, discharge_depth=0.5, complete=complete,
    )
    return PricedCycle(
        cycle=rec, buy_price=buy, sell_price=sell,
        bought_energy=bought, sold_energy=sold,
    )


class TestPriceSpreads:
    def test_two_cycle_reference(self):
        cycles = [_cycle(10.0, 30.0), _cycle(20.0, 40.0)]
        assert overall_price_spread(cycles) == 20.0

    def test_degenerate_spread(self):
        assert overall_price_spread([_cycle(25.0, 25.0)]) == 0.0

    def test_incomplete_cycles_ignored(self):
        cycles = [_cycle(10.0, 30.0), _cycle(0.0, 99.0, complete=False)]
        assert overall_price_spread(cycles) == 20.0
        with pytest.raises(NoCycles):
            overall_price_spread([_cycle(1.0, 2.0, complete=False)])

    def test_no_cycles(self):
        with pytest.raises(NoCycles):
            overall_price_spread([])

    def test_summary_reference(self):
        assert price_spread_summary([10.0, 20.0], [30.0, 40.0]) == 20.0
        assert price_spread_summary([5.0, 5.0], [5.0, 5.0]) == 0.0

    def test_summary_empty(self):
        with pytest.raises(EmptyInput):
            price_spread_summary([], [1.0])
        with pytest.raises(EmptyInput):
            price_spread_summary([1.0], [])

    def test_ops_equals_summary_for_uniform_equal_energy_cycles(self):
        """With equal per-cycle energies and uniform within-leg prices
        the two aggregations coincide."""
        buys = [12.0, 18.0, 30.0]
        sells = [40.0, 55.0, 61.0]
        cycles = [_cycle(b, s, bought=2.0, sold=2.0) for b, s in zip(buys, sells)]
        assert overall_price_spread(cycles) == pytest.approx(
            price_spread_summary(buys, sells)
        )
