"""Hydrogen pathway splitting and revenue attribution."""
from __future__ import annotations

import numpy as np
import pytest

from storalyze.errors import (
    ConservationViolation,
    MisalignedSeries,
    ValidationError,
    ZeroGasUse,
)
from storalyze.pathways import (
    PATHWAYS,
    HydrogenFlows,
    ledger_to_nested,
    revenue_breakdown,
    split_direct_indirect,
    split_electricity_heating,
)


def make_flows(
    electrolyzer_out,
    store_in=None,
    store_out=None,
    fuelcell_in=None,
    sabatier_in=None,
    gas_power=50.0,
    gas_heat=50.0,
    h2_price=30.0,
    elec_price=50.0,
):
    e = np.asarray(electrolyzer_out, dtype=float)
    z = np.zeros_like(e)
    return HydrogenFlows(
        electrolyzer_out=e,
        store_in=z if store_in is None else np.asarray(store_in, float),
        store_out=z if store_out is None else np.asarray(store_out, float),
        fuelcell_in=z if fuelcell_in is None else np.asarray(fuelcell_in, float),
        sabatier_in=z if sabatier_in is None else np.asarray(sabatier_in, float),
        gas_to_power_annual=gas_power,
        gas_to_heat_annual=gas_heat,
        h2_price=np.full_like(e, h2_price),
        elec_price=np.full_like(e, elec_price),
    )


class TestValidation:
    def test_negative_flow_rejected(self):
        flows = make_flows([1.0, -0.5], sabatier_in=[1.0, -0.5])
        with pytest.raises(ValidationError):
            flows.validate()

    def test_misaligned_series(self):
        with pytest.raises(MisalignedSeries):
            HydrogenFlows(
                electrolyzer_out=np.ones(4),
                store_in=np.zeros(3),
                store_out=np.zeros(4),
                fuelcell_in=np.zeros(4),
                sabatier_in=np.ones(4),
                gas_to_power_annual=1.0,
                gas_to_heat_annual=1.0,
                h2_price=np.ones(4),
                elec_price=np.ones(4),
            )

    def test_supply_demand_mismatch(self):
        # electrolyzer makes 10 but only 6 is accounted for
        flows = make_flows([10.0], sabatier_in=[6.0])
        with pytest.raises(ConservationViolation):
            flows.validate()

    def test_store_bypass_negative(self):
        # more enters the store than the electrolyzer produced
        flows = make_flows([5.0], store_in=[8.0], sabatier_in=[0.0])
        with pytest.raises(ConservationViolation):
            flows.validate()

    def test_balanced_flows_pass(self):
        flows = make_flows(
            [10.0, 10.0],
            store_in=[4.0, 0.0],
            store_out=[0.0, 4.0],
            fuelcell_in=[0.0, 4.0],
            sabatier_in=[6.0, 10.0],
        )
        flows.validate()


class TestSplitDirectIndirect:
    def test_no_store_means_all_indirect(self):
        flows = make_flows([3.0, 7.0], sabatier_in=[3.0, 7.0])
        direct, indirect = split_direct_indirect(flows)
        np.testing.assert_array_equal(direct, [0.0, 0.0])
        np.testing.assert_array_equal(indirect, [3.0, 7.0])

    def test_no_sabatier_means_all_direct(self):
        flows = make_flows(
            [5.0, 0.0],
            store_in=[5.0, 0.0],
            store_out=[0.0, 5.0],
            fuelcell_in=[0.0, 5.0],
        )
        direct, indirect = split_direct_indirect(flows)
        np.testing.assert_array_equal(direct, [5.0, 0.0])
        np.testing.assert_array_equal(indirect, [0.0, 0.0])

    def test_mixed_hour_reference(self):
        """electrolyzer 10, sabatier 6, store_in 4 -> indirect 6, direct 4."""
        flows = make_flows([10.0], store_in=[4.0], sabatier_in=[6.0])
        direct, indirect = split_direct_indirect(flows)
        assert indirect[0] == 6.0
        assert direct[0] == 4.0

    def test_totals_conserve_energy_exactly(self):
        rng = np.random.default_rng(17)
        e = rng.uniform(0, 10, 100)
        s_in = np.minimum(e, rng.uniform(0, 5, 100))
        sab = e - s_in
        flows = make_flows(e, store_in=s_in, sabatier_in=sab)
        for convention in ("max_indirect", "max_direct"):
            direct, indirect = split_direct_indirect(flows, convention=convention)
            np.testing.assert_array_equal(direct + indirect, e)
            assert np.all(direct >= 0) and np.all(indirect >= 0)

    def test_max_direct_convention(self):
        # bypass = 10 - 4 = 6 of the 8 going to Sabatier is provably
        # direct production; max_direct attributes only that
        flows = make_flows(
            [10.0], store_in=[4.0], store_out=[2.0], sabatier_in=[8.0]
        )
        direct, indirect = split_direct_indirect(flows, convention="max_direct")
        assert indirect[0] == 6.0
        d2, i2 = split_direct_indirect(flows, convention="max_indirect")
        assert i2[0] == 8.0
        with pytest.raises(ValidationError):
            split_direct_indirect(flows, convention="fifo")


class TestSplitElectricityHeating:
    def test_all_heat(self):
        assert split_electricity_heating(0.0, 100.0) == (0.0, 1.0)

    def test_proportional(self):
        power, heat = split_electricity_heating(30.0, 70.0)
        assert power == pytest.approx(0.3)
        assert heat == pytest.approx(0.7)
        assert power + heat == 1.0

    def test_zero_gas_use(self):
        with pytest.raises(ZeroGasUse):
            split_electricity_heating(0.0, 0.0)

    def test_negative_rejected(self):
        with pytest.raises(ValidationError):
            split_electricity_heating(-1.0, 5.0)


class TestRevenueBreakdown:
    def test_all_zero_flows(self):
        flows = make_flows(np.zeros(5))
        ledger = revenue_breakdown(flows)
        for tag in PATHWAYS:
            assert ledger.entries[tag].revenue == 0.0
            assert ledger.entries[tag].energy == 0.0
        assert ledger.total_revenue == 0.0

    def test_single_hour_sabatier_sale(self):
        """10 MWh to Sabatier at 35 EUR/MWh -> 350 EUR revenue."""
        flows = make_flows([10.0], sabatier_in=[10.0], h2_price=35.0)
        ledger = revenue_breakdown(flows)
        assert ledger.indirect_total == pytest.approx(350.0)
        assert ledger.entries["ESE"].revenue + ledger.entries[
            "ESH"
        ].revenue == pytest.approx(350.0)

    def test_fuelcell_pathway_zero_when_unused(self):
        flows = make_flows([4.0, 4.0], sabatier_in=[4.0, 4.0])
        ledger = revenue_breakdown(flows, fuelcell_efficiency=0.58)
        assert ledger.entries["ESFC"].revenue == 0.0
        assert ledger.entries["ESFC"].energy == 0.0

    def test_revenue_conservation_is_exact(self):
        rng = np.random.default_rng(23)
        n = 240
        e = rng.uniform(0, 10, n)
        s_in = np.minimum(e, rng.uniform(0, 6, n))
        sab_direct = e - s_in
        s_out = rng.uniform(0, 4, n)
        fc = np.minimum(s_out, rng.uniform(0, 2, n))
        sab = sab_direct + (s_out - fc)
        h2p = rng.uniform(10, 60, n)
        elp = rng.uniform(0, 120, n)
        flows = HydrogenFlows(
            electrolyzer_out=e,
            store_in=s_in,
            store_out=s_out,
            fuelcell_in=fc,
            sabatier_in=sab,
            gas_to_power_annual=30.0,
            gas_to_heat_annual=70.0,
            h2_price=h2p,
            elec_price=elp,
        )
        ledger = revenue_breakdown(
            flows, electrolyzer_efficiency=0.8, fuelcell_efficiency=0.58
        )
        # The split-off halves of each revenue pool recombine bit-exactly
        # because the second half is computed as pool minus first half.
        ese = ledger.entries["ESE"].revenue
        esh = ledger.entries["ESH"].revenue
        assert ese + esh == ledger.indirect_total
        esse = ledger.entries["ESSE"].revenue
        essh = ledger.entries["ESSH"].revenue
        esfc = ledger.entries["ESFC"].revenue
        assert esfc + (esse + essh) == ledger.direct_total
        # Summing all five in ledger order regroups the additions, so only
        # demand agreement with the direct formula to float associativity.
        expected_total = float(sab @ h2p) + float(fc @ elp) * 0.58
        booked = sum(ledger.entries[t].revenue for t in PATHWAYS)
        assert booked == pytest.approx(expected_total, rel=1e-12)
        assert ledger.total_revenue == pytest.approx(expected_total, rel=1e-12)
        # The last pathway's charging share is the remainder, so the booked
        # charging total reproduces the electricity bill bit-exactly.
        expected_charging = float((e / 0.8) @ elp)
        booked_charging = sum(ledger.entries[t].charging_cost for t in PATHWAYS)
        assert booked_charging == pytest.approx(expected_charging, rel=1e-12)

    def test_energy_shares_sum_to_one(self):
        flows = make_flows(
            [10.0, 10.0],
            store_in=[4.0, 0.0],
            store_out=[0.0, 4.0],
            fuelcell_in=[0.0, 4.0],
            sabatier_in=[6.0, 10.0],
        )
        ledger = revenue_breakdown(flows)
        shares = ledger.energy_shares()
        assert sum(shares.values()) == 1.0
        assert all(s >= 0.0 for s in shares.values())

    def test_direct_indirect_totals(self):
        flows = make_flows(
            [10.0, 10.0],
            store_in=[4.0, 0.0],
            store_out=[0.0, 4.0],
            fuelcell_in=[0.0, 4.0],
            sabatier_in=[6.0, 10.0],
            gas_power=30.0,
            gas_heat=70.0,
            h2_price=30.0,
            elec_price=50.0,
        )
        ledger = revenue_breakdown(flows, fuelcell_efficiency=0.58)
        # all 16 MWh of Sabatier feed is bypass-capable -> indirect
        assert ledger.indirect_total == pytest.approx(16.0 * 30.0)
        # the fuel cell sells 4 MWh * 0.58 at 50
        assert ledger.direct_total == pytest.approx(4.0 * 0.58 * 50.0)
        assert ledger.entries["ESE"].energy == pytest.approx(16.0 * 0.3)
        assert ledger.entries["ESH"].energy == pytest.approx(16.0 * 0.7)

    def test_capacity_attribution(self):
        flows = make_flows(
            [10.0, 10.0],
            store_in=[4.0, 0.0],
            store_out=[0.0, 4.0],
            fuelcell_in=[0.0, 4.0],
            sabatier_in=[6.0, 10.0],
        )
        ledger = revenue_breakdown(
            flows, store_capacity_mwh=500.0, electrolyzer_capacity_mw=12.0
        )
        assert ledger.direct_capacity == 500.0
        # 16 of 20 MWh produced goes directly to Sabatier
        assert ledger.indirect_capacity == pytest.approx(12.0 * 16.0 / 20.0)

    def test_invalid_efficiencies(self):
        flows = make_flows([1.0], sabatier_in=[1.0])
        with pytest.raises(ValidationError):
            revenue_breakdown(flows, electrolyzer_efficiency=0.0)
        with pytest.raises(ValidationError):
            revenue_breakdown(flows, fuelcell_efficiency=1.2)


def test_ledger_nesting_shape():
    flows = make_flows([2.0, 2.0], sabatier_in=[2.0, 2.0], h2_price=10.0)
    ledger = revenue_breakdown(flows)
    nested = ledger_to_nested(ledger, "DE", 2045)
    assert set(nested) == {"DE"}
    assert set(nested["DE"]) == {"2045"}
    entry = nested["DE"]["2045"]
    assert set(entry) == set(PATHWAYS)
    assert set(entry["ESE"]) == {"energy", "revenue", "charging_cost"}
    total = sum(entry[t]["revenue"] for t in PATHWAYS)
    assert total == pytest.approx(40.0)
