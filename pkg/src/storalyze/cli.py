"""Command line interface.

Subcommands
-----------
cycles    detect charge/discharge cycles in a filling-level series
fft       one-sided amplitude spectrum
cwt       Morlet wavelet scalogram
econ      levelised cost and benefit metrics
pathway   hydrogen pathway revenue ledger
co2path   carbon-budget emission trajectory
report    full per-region pipeline (cycles + spectra + economics)

Exit codes: 0 success, 1 usage error, 2 data validation error,
3 computation undefined (e.g. levelised cost with zero discharge).

Every command writes its numeric output with floats fixed to nine
significant digits and a JSON sidecar echoing the resolved
configuration, so repeated runs are byte-identical.  A configuration
file of ``key = value`` lines can pre-set any flag; explicit flags win.
The default cost table can be overridden with the ``STORALYZE_COSTS``
environment variable.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np
import pandas as pd

from . import __version__
from .cycles import (
    CycleThresholds,
    attach_prices,
    cycle_frequency,
    detect_cycles,
)
from .economics import (
    AnnualCashflow,
    StorageConfig,
    annualized_cost,
    lcos,
    overall_price_spread,
    unit_benefit,
)
from .emissions import EmissionPathway, pathway_table, solve_pathway
from .errors import NoCycles, UndefinedResult, ValidationError, ZeroDischarge
from .ingest import default_costs_path, load_costs, load_series, normalize_minmax
from .pathways import HydrogenFlows, ledger_to_nested, revenue_breakdown
from .spectral import cwt_scalogram, dominant_periods, fft_spectrum

COSTS_ENV = "STORALYZE_COSTS"


# --------------------------------------------------------------------
# formatting and small helpers
# --------------------------------------------------------------------

def fmt(value) -> str:
    """Fixed 9-significant-digit rendering; empty string for missing."""
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return format(value, ".9g")
    return str(value)


def _round9(obj):
    """Recursively clamp floats to 9 significant digits for JSON."""
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        return float(format(obj, ".9g"))
    if isinstance(obj, dict):
        return {k: _round9(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round9(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return _round9(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _round9(obj.tolist())
    return obj


def write_json(path: Path, obj) -> None:
    path.write_text(
        json.dumps(_round9(obj), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def read_config(path) -> dict:
    """Parse a ``key = value`` configuration file."""
    config = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        config[key.strip().lower()] = value.strip()
    return config


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _to_bool(value, key: str) -> bool:
    if isinstance(value, bool):
        return value
    v = str(value).strip().lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ValidationError(f"config key {key}: {value!r} is not a boolean")


class Options:
    """Flag/config/default resolution: explicit flags always win."""

    def __init__(self, args: argparse.Namespace, config: dict):
        self._args = vars(args)
        self._config = config

    def get(self, key: str, default=None, cast=None):
        value = self._args.get(key)
        if value is None:
            value = self._config.get(key)
        if value is None:
            return default
        if cast is bool:
            return _to_bool(value, key)
        return cast(value) if cast is not None else value

    def echo(self, keys: list[str]) -> dict:
        """The resolved configuration for provenance output."""
        out = {}
        for key in keys:
            value = self._args.get(key)
            if value is None:
                value = self._config.get(key)
            if value is not None:
                out[key] = value
        return out


def _load_options(args) -> Options:
    config = read_config(args.config) if getattr(args, "config", None) else {}
    return Options(args, config)


def _thresholds(opt: Options) -> CycleThresholds:
    kind = opt.get("kind", "storage")
    if kind not in ("storage", "price"):
        raise ValidationError(f"kind must be storage or price, got {kind!r}")
    base = CycleThresholds.for_storage() if kind == "storage" else CycleThresholds.for_price()
    return CycleThresholds(
        filter=opt.get("filter", base.filter, float),
        rise=opt.get("rise", base.rise, float),
        fall=opt.get("fall", base.fall, float),
    )


def _outdir(opt: Options) -> Path:
    out = Path(opt.get("outdir", "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _costs_file(opt: Options) -> str:
    explicit = opt.get("costs")
    if explicit:
        return explicit
    env = os.environ.get(COSTS_ENV)
    if env:
        return env
    return default_costs_path()


# --------------------------------------------------------------------
# cycle detection
# --------------------------------------------------------------------

_CYCLE_HEADER = [
    "index",
    "complete",
    "charge_start",
    "charge_end",
    "discharge_start",
    "discharge_end",
    "charge_depth",
    "discharge_depth",
    "buy_price",
    "sell_price",
    "bought_energy",
    "sold_energy",
]


def _cycle_rows(records, priced_by_record):
    for i, rec in enumerate(records):
        pc = priced_by_record.get(id(rec))
        yield [
            i,
            "true" if rec.complete else "false",
            rec.charge_start,
            rec.charge_end,
            rec.discharge_start,
            rec.discharge_end,
            rec.charge_depth,
            rec.discharge_depth,
            pc.buy_price if pc else None,
            pc.sell_price if pc else None,
            pc.bought_energy if pc else None,
            pc.sold_energy if pc else None,
        ]


def _detect_for_cli(opt: Options):
    """Shared by ``cycles`` and ``report``: returns (records, priced, level)."""
    level = load_series(
        opt.get("input") or opt.get("level_csv"),
        opt.get("column") or opt.get("level_column"),
        unit=opt.get("unit", "MWh"),
    )
    th = _thresholds(opt)
    normalized = normalize_minmax(level)
    series = normalized if opt.get("normalize", True, bool) else level
    records = detect_cycles(series, th)
    include_partial = opt.get("include_partial", False, bool)

    priced = []
    price_path = opt.get("price") or opt.get("price_csv")
    if price_path:
        price = load_series(
            price_path,
            opt.get("price_column", opt.get("column") or "price"),
            unit="EUR_per_MWh",
        )
        flow_path = opt.get("flow") or opt.get("flow_csv")
        if flow_path:
            flow = load_series(flow_path, opt.get("flow_column", "flow"), unit="MWh")
            priced = attach_prices(
                records, price, flow=flow, include_partial=include_partial
            )
        else:
            priced = attach_prices(
                records, price, level=level, include_partial=include_partial
            )
    return records, priced, level, th, include_partial


_CYCLE_KEYS = [
    "input", "column", "kind", "rise", "fall", "filter", "normalize",
    "price", "price_column", "flow", "flow_column", "include_partial", "outdir",
]


def cmd_cycles(args) -> int:
    opt = _load_options(args)
    records, priced, level, th, include_partial = _detect_for_cli(opt)
    out = _outdir(opt)
    priced_by_record = {id(pc.cycle): pc for pc in priced}
    write_csv(out / "cycles.csv", _CYCLE_HEADER, _cycle_rows(records, priced_by_record))
    meta = {
        "tool": f"storalyze {__version__}",
        "config": opt.echo(_CYCLE_KEYS),
        "thresholds": {"filter": th.filter, "rise": th.rise, "fall": th.fall},
        "series": {"name": level.name, "year": level.year, "hours": len(level),
                   "gaps_filled": level.gaps_filled},
        "complete_cycles": cycle_frequency(records),
        "records": len(records),
        "counted_cycles": cycle_frequency(records, include_partial=include_partial),
    }
    write_json(out / "cycles_meta.json", meta)
    print(f"{meta['complete_cycles']} complete cycles -> {out / 'cycles.csv'}")
    return 0


# --------------------------------------------------------------------
# spectra
# --------------------------------------------------------------------

_FFT_KEYS = ["input", "column", "detrend", "top", "outdir"]


def cmd_fft(args) -> int:
    opt = _load_options(args)
    series = load_series(opt.get("input"), opt.get("column"),
                         unit=opt.get("unit", "dimensionless"))
    detrend = opt.get("detrend", True, bool)
    spectrum = fft_spectrum(series, detrend=detrend)
    top = opt.get("top", 3, int)
    peaks = dominant_periods(spectrum, top)
    out = _outdir(opt)
    rows = (
        [f, a, (1.0 / f) if f > 0 else None]
        for f, a in zip(spectrum.frequencies, spectrum.amplitudes)
    )
    write_csv(out / "spectrum.csv", ["frequency_per_hour", "amplitude", "period_hours"], rows)
    meta = {
        "tool": f"storalyze {__version__}",
        "config": opt.echo(_FFT_KEYS),
        "n_samples": spectrum.n_samples,
        "detrend": detrend,
        "normalization": "one-sided amplitude: |X(k)|*2/J interior, |X(k)|/J at DC and Nyquist",
        "dominant_periods_hours": [[p, a] for p, a in peaks],
    }
    write_json(out / "spectrum_meta.json", meta)
    print(f"{spectrum.n_samples} samples -> {out / 'spectrum.csv'}")
    return 0


_CWT_KEYS = ["input", "column", "detrend", "scale_min", "scale_max",
             "n_scales", "method", "outdir"]


def cmd_cwt(args) -> int:
    opt = _load_options(args)
    series = load_series(opt.get("input"), opt.get("column"),
                         unit=opt.get("unit", "dimensionless"))
    values = series.values
    detrend = opt.get("detrend", True, bool)
    if detrend:
        values = values - values.mean()
    scales = np.geomspace(
        opt.get("scale_min", 6.0, float),
        opt.get("scale_max", 2190.0, float),
        opt.get("n_scales", 64, int),
    )
    sg = cwt_scalogram(values, scales, method=opt.get("method", "direct"))
    out = _outdir(opt)
    header = ["scale_hours"] + [str(t) for t in sg.times]
    rows = ([sg.scales[i]] + list(sg.magnitudes[i]) for i in range(sg.scales.size))
    write_csv(out / "scalogram.csv", header, rows)
    meta = {
        "tool": f"storalyze {__version__}",
        "config": opt.echo(_CWT_KEYS),
        "n_samples": int(sg.times.size),
        "detrend": detrend,
        "normalization": "|integral x(t) psi((t-b)/a) dt| / sqrt(a), 1 h sampling",
        "wavelet": "real Morlet exp(-t^2/2) cos(5 t)",
        "scales_hours": list(sg.scales),
        "pseudo_periods_hours": list(sg.pseudo_periods),
        "coi_halfwidth_samples": [int(v) for v in sg.coi_halfwidth],
    }
    write_json(out / "scalogram_meta.json", meta)
    print(f"{sg.scales.size} scales x {sg.times.size} samples -> {out / 'scalogram.csv'}")
    return 0


# --------------------------------------------------------------------
# economics
# --------------------------------------------------------------------

_ECON_HEADER = [
    "country", "year", "pathway", "lcos_cum", "lcos_snap",
    "unit_benefit", "ops", "cycles_per_year",
]

_ECON_KEYS = [
    "costs", "country", "year", "pathway", "store_tech", "store_kwh",
    "charge_tech", "charge_kw", "discharge_tech", "discharge_kw",
    "include_store_cost", "cashflows", "revenue", "charging_cost",
    "discharged_energy", "step_years", "discount_rate", "outdir",
]


def _storage_config(opt: Options) -> StorageConfig | None:
    charge_tech = opt.get("charge_tech")
    if charge_tech is None:
        return None
    store_tech = opt.get("store_tech")
    discharge_tech = opt.get("discharge_tech")
    return StorageConfig(
        pathway=opt.get("pathway", "storage"),
        charging_link=(charge_tech, opt.get("charge_kw", 0.0, float)),
        store=(store_tech, opt.get("store_kwh", 0.0, float)) if store_tech else None,
        discharging_link=(
            (discharge_tech, opt.get("discharge_kw", 0.0, float))
            if discharge_tech
            else None
        ),
        include_store_cost=opt.get("include_store_cost", True, bool),
    )


def _cashflows(opt: Options, cost_eur_per_year: float | None) -> list[AnnualCashflow]:
    path = opt.get("cashflows")
    if path:
        df = pd.read_csv(path)
        needed = {"year", "annualized_cost", "revenue", "charging_cost",
                  "discharged_energy"}
        missing = needed - set(df.columns)
        if missing:
            raise ValidationError(
                f"{path}: cashflow table missing columns {sorted(missing)}"
            )
        return [
            AnnualCashflow(
                year=int(r["year"]),
                annualized_cost=float(r["annualized_cost"]),
                revenue=float(r["revenue"]),
                charging_cost=float(r["charging_cost"]),
                discharged_energy=float(r["discharged_energy"]),
            )
            for _, r in df.sort_values("year").iterrows()
        ]
    if cost_eur_per_year is None:
        raise ValidationError(
            "need either --cashflows or capacities (--charge-tech ...) "
            "to establish the annualized cost"
        )
    return [
        AnnualCashflow(
            year=opt.get("year", 0, int),
            annualized_cost=cost_eur_per_year,
            revenue=opt.get("revenue", 0.0, float),
            charging_cost=opt.get("charging_cost", 0.0, float),
            discharged_energy=opt.get("discharged_energy", 0.0, float),
        )
    ]


def cmd_econ(args) -> int:
    opt = _load_options(args)
    config = _storage_config(opt)
    cost = None
    if config is not None:
        costs = load_costs(_costs_file(opt), discount_rate=opt.get("discount_rate", 0.07, float))
        cost = annualized_cost(config, costs, opt.get("year", 0, int))
    flows = _cashflows(opt, cost)
    step = opt.get("step_years", 5, int)
    discount = opt.get("discount_rate_lcos", None, float)
    lcos_cum = lcos(flows, "cumulative", step_years=step, discount_rate=discount)
    lcos_snap = lcos(flows, "snapshot")
    ub = unit_benefit(flows[-1])  # raises ZeroDischarge -> exit 3
    out = _outdir(opt)
    row = [
        opt.get("country", ""),
        flows[-1].year,
        opt.get("pathway", opt.get("technology", "storage")),
        lcos_cum,
        lcos_snap,
        ub,
        None,
        None,
    ]
    write_csv(out / "econ.csv", _ECON_HEADER, [row])
    meta = {
        "tool": f"storalyze {__version__}",
        "config": opt.echo(_ECON_KEYS),
        "annualized_cost_eur": cost if cost is not None else flows[-1].annualized_cost,
        "years": [f.year for f in flows],
        "lcos_cumulative": lcos_cum,
        "lcos_snapshot": lcos_snap,
        "unit_benefit": ub,
    }
    write_json(out / "econ_meta.json", meta)
    print(f"lcos_cum={fmt(lcos_cum)} lcos_snap={fmt(lcos_snap)} "
          f"unit_benefit={fmt(ub)} -> {out / 'econ.csv'}")
    return 0


# --------------------------------------------------------------------
# hydrogen pathways
# --------------------------------------------------------------------

_PATHWAY_KEYS = [
    "input", "country", "year", "gas_to_power", "gas_to_heat",
    "electrolyzer_efficiency", "fuelcell_efficiency", "convention",
    "store_capacity_mwh", "electrolyzer_capacity_mw", "outdir",
]

_FLOW_COLUMNS = [
    "electrolyzer_out", "store_in", "store_out", "fuelcell_in",
    "sabatier_in", "h2_price", "elec_price",
]


def cmd_pathway(args) -> int:
    opt = _load_options(args)
    path = opt.get("input")
    df = pd.read_csv(path)
    missing = [c for c in _FLOW_COLUMNS if c not in df.columns]
    if missing:
        raise ValidationError(f"{path}: flow table missing columns {missing}")
    flows = HydrogenFlows(
        **{c: df[c].to_numpy(dtype=float) for c in _FLOW_COLUMNS},
        gas_to_power_annual=opt.get("gas_to_power", 0.0, float),
        gas_to_heat_annual=opt.get("gas_to_heat", 0.0, float),
    )
    ledger = revenue_breakdown(
        flows,
        electrolyzer_efficiency=opt.get("electrolyzer_efficiency", 1.0, float),
        fuelcell_efficiency=opt.get("fuelcell_efficiency", 1.0, float),
        convention=opt.get("convention", "max_indirect"),
        store_capacity_mwh=opt.get("store_capacity_mwh", 0.0, float),
        electrolyzer_capacity_mw=opt.get("electrolyzer_capacity_mw", 0.0, float),
    )
    country = opt.get("country", "region")
    year = opt.get("year", 0, int)
    out = _outdir(opt)
    write_json(out / "ledger.json", ledger_to_nested(ledger, country, year))
    meta = {
        "tool": f"storalyze {__version__}",
        "config": opt.echo(_PATHWAY_KEYS),
        "direct_total_eur": ledger.direct_total,
        "indirect_total_eur": ledger.indirect_total,
        "direct_capacity_mwh": ledger.direct_capacity,
        "indirect_capacity_mw": ledger.indirect_capacity,
        "energy_shares": ledger.energy_shares(),
    }
    write_json(out / "pathway_meta.json", meta)
    print(f"direct={fmt(ledger.direct_total)} EUR "
          f"indirect={fmt(ledger.indirect_total)} EUR -> {out / 'ledger.json'}")
    return 0


# --------------------------------------------------------------------
# emission trajectory
# --------------------------------------------------------------------

_CO2_KEYS = ["e0", "t0", "tf", "budget", "beta", "mode", "step_years", "outdir"]


def cmd_co2path(args) -> int:
    opt = _load_options(args)
    e0 = opt.get("e0", None, float)
    t0 = opt.get("t0", None, float)
    tf = opt.get("tf", None, float)
    if e0 is None or t0 is None or tf is None:
        raise ValidationError("co2path needs --e0, --t0 and --tf")
    beta = opt.get("beta", None, float)
    budget = opt.get("budget", None, float)
    mode = opt.get("mode", "asymmetric")
    if beta is not None:
        pathway = EmissionPathway(
            t0=t0, tf=tf, e0=e0, beta=beta,
            shape_a=None if mode == "symmetric" else 1.0,
        )
    elif budget is not None:
        pathway = solve_pathway(e0, t0, tf, budget, mode=mode)
    else:
        raise ValidationError("co2path needs either --budget or --beta")
    rows = pathway_table(pathway, step_years=opt.get("step_years", 1, int))
    out = _outdir(opt)
    write_csv(
        out / "co2path.csv",
        ["year", "emission", "cumulative", "cap_fraction"],
        ([int(y), e, c, f] for y, e, c, f in rows),
    )
    shape_a, shape_b = pathway.shapes
    meta = {
        "tool": f"storalyze {__version__}",
        "config": opt.echo(_CO2_KEYS),
        "mode": mode,
        "shape": [shape_a, shape_b],
        "beta": pathway.beta,
        "budget": pathway.budget,
        "cumulative_at_tf": rows[-1][2],
    }
    write_json(out / "co2path_meta.json", meta)
    print(f"beta={fmt(pathway.beta)} cumulative={fmt(rows[-1][2])} "
          f"-> {out / 'co2path.csv'}")
    return 0


# --------------------------------------------------------------------
# combined report
# --------------------------------------------------------------------

_REPORT_KEYS = sorted(set(
    _CYCLE_KEYS + _FFT_KEYS + _ECON_KEYS + ["level_csv", "level_column",
    "price_csv", "price_column", "flow_csv", "flow_column", "technology",
    "run_cwt", "scale_min", "scale_max", "n_scales", "method", "unit", "top"]
) - {"input", "column"})


def cmd_report(args) -> int:
    opt = _load_options(args)
    if not (opt.get("level_csv") or opt.get("input")):
        raise ValidationError("report needs level_csv (in --config) or --input")
    records, priced, level, th, include_partial = _detect_for_cli(opt)
    out = _outdir(opt)
    priced_by_record = {id(pc.cycle): pc for pc in priced}
    write_csv(out / "cycles.csv", _CYCLE_HEADER, _cycle_rows(records, priced_by_record))

    spectrum = fft_spectrum(level, detrend=opt.get("detrend", True, bool))
    peaks = dominant_periods(spectrum, opt.get("top", 3, int))

    scalogram_summary = None
    if opt.get("run_cwt", False, bool):
        values = level.values - level.values.mean()
        scales = np.geomspace(
            opt.get("scale_min", 6.0, float),
            opt.get("scale_max", 2190.0, float),
            opt.get("n_scales", 64, int),
        )
        sg = cwt_scalogram(values, scales, method=opt.get("method", "direct"))
        header = ["scale_hours"] + [str(t) for t in sg.times]
        rows = ([sg.scales[i]] + list(sg.magnitudes[i]) for i in range(sg.scales.size))
        write_csv(out / "scalogram.csv", header, rows)
        interior = ~sg.coi_mask()
        strongest = int(
            np.argmax([sg.magnitudes[i][interior[i]].max() if interior[i].any() else -np.inf
                       for i in range(sg.scales.size)])
        )
        scalogram_summary = {
            "scales": int(sg.scales.size),
            "strongest_scale_hours": float(sg.scales[strongest]),
            "strongest_pseudo_period_hours": float(sg.pseudo_periods[strongest]),
        }

    complete = cycle_frequency(records)
    counted = cycle_frequency(records, include_partial=include_partial)
    try:
        ops = overall_price_spread(priced) if priced else None
    except NoCycles:
        ops = None

    # cashflow: explicit numbers win, otherwise derive from priced cycles
    revenue = opt.get("revenue", None, float)
    charging = opt.get("charging_cost", None, float)
    discharged = opt.get("discharged_energy", None, float)
    if priced:
        complete_priced = [pc for pc in priced if pc.cycle.complete]
        if revenue is None:
            revenue = sum(pc.sell_price * pc.sold_energy for pc in complete_priced)
        if charging is None:
            charging = sum(pc.buy_price * pc.bought_energy for pc in complete_priced)
        if discharged is None:
            discharged = sum(pc.sold_energy for pc in complete_priced)

    config = _storage_config(opt)
    year = opt.get("year", level.year, int)
    lcos_cum = lcos_snap = ub = None
    annual_cost = None
    if config is not None:
        costs = load_costs(_costs_file(opt),
                           discount_rate=opt.get("discount_rate", 0.07, float))
        annual_cost = annualized_cost(config, costs, year)
        flow = AnnualCashflow(
            year=year,
            annualized_cost=annual_cost,
            revenue=revenue or 0.0,
            charging_cost=charging or 0.0,
            discharged_energy=discharged or 0.0,
        )
        lcos_cum = lcos([flow], "cumulative",
                        step_years=opt.get("step_years", 5, int))
        lcos_snap = lcos([flow], "snapshot")
        try:
            ub = unit_benefit(flow)
        except ZeroDischarge:
            ub = None

    country = opt.get("country", "region")
    pathway_label = opt.get("pathway", opt.get("technology", "storage"))
    row = [country, year, pathway_label, lcos_cum, lcos_snap, ub, ops, complete]
    write_csv(out / "report.csv", _ECON_HEADER, [row])
    report = {
        "tool": f"storalyze {__version__}",
        "config": opt.echo(_REPORT_KEYS),
        "series": {"name": level.name, "year": level.year, "hours": len(level),
                   "gaps_filled": level.gaps_filled},
        "cycles": {
            "complete": complete,
            "counted": counted,
            "records": len(records),
            "thresholds": {"filter": th.filter, "rise": th.rise, "fall": th.fall},
            "ops": ops,
        },
        "spectrum": {
            "n_samples": spectrum.n_samples,
            "dominant_periods_hours": [[p, a] for p, a in peaks],
        },
        "scalogram": scalogram_summary,
        "economics": {
            "annualized_cost_eur": annual_cost,
            "revenue_eur": revenue,
            "charging_cost_eur": charging,
            "discharged_energy_mwh": discharged,
            "lcos_cumulative": lcos_cum,
            "lcos_snapshot": lcos_snap,
            "unit_benefit": ub,
        },
    }
    write_json(out / "report.json", report)
    print(f"{complete} cycles, {len(peaks)} spectral peaks -> {out / 'report.json'}")
    return 0


# --------------------------------------------------------------------
# parser
# --------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(sp):
    sp.add_argument("--config", help="key = value configuration file")
    sp.add_argument("--outdir", help="output directory (default: .)")


def build_parser() -> _Parser:
    parser = _Parser(prog="storalyze", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version",
                        version=f"storalyze {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("cycles", help="detect charge/discharge cycles")
    p.add_argument("--input", help="filling-level CSV")
    p.add_argument("--column", help="series column or key")
    p.add_argument("--kind", choices=["storage", "price"],
                   help="threshold defaults: storage 0.10, price 0.05")
    p.add_argument("--rise", type=float, help="minimum charge depth")
    p.add_argument("--fall", type=float, help="minimum discharge depth")
    p.add_argument("--filter", type=float, help="pre-filter amplitude")
    p.add_argument("--normalize", nargs="?", const="true",
                   help="min-max normalize first (default true)")
    p.add_argument("--price", help="price CSV for buy/sell attribution")
    p.add_argument("--price-column", dest="price_column")
    p.add_argument("--flow", help="signed hourly flow CSV for weights")
    p.add_argument("--flow-column", dest="flow_column")
    p.add_argument("--include-partial", dest="include_partial",
                   action="store_const", const=True,
                   help="count and price incomplete legs too")
    _add_common(p)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("fft", help="one-sided amplitude spectrum")
    p.add_argument("--input")
    p.add_argument("--column")
    p.add_argument("--detrend", nargs="?", const="true",
                   help="remove the mean first (default true)")
    p.add_argument("--top", type=int, help="number of dominant periods to report")
    _add_common(p)
    p.set_defaults(func=cmd_fft)

    p = sub.add_parser("cwt", help="Morlet wavelet scalogram")
    p.add_argument("--input")
    p.add_argument("--column")
    p.add_argument("--detrend", nargs="?", const="true",
                   help="remove the mean first (default true)")
    p.add_argument("--scale-min", dest="scale_min", type=float)
    p.add_argument("--scale-max", dest="scale_max", type=float)
    p.add_argument("--n-scales", dest="n_scales", type=int)
    p.add_argument("--method", choices=["direct", "fft"])
    _add_common(p)
    p.set_defaults(func=cmd_cwt)

    p = sub.add_parser("econ", help="levelised cost and benefit metrics")
    p.add_argument("--costs", help=f"cost table CSV (default: ${COSTS_ENV} "
                                   "or the bundled table)")
    p.add_argument("--country")
    p.add_argument("--year", type=int)
    p.add_argument("--pathway", help="pathway or technology label")
    p.add_argument("--store-tech", dest="store_tech")
    p.add_argument("--store-kwh", dest="store_kwh", type=float)
    p.add_argument("--charge-tech", dest="charge_tech")
    p.add_argument("--charge-kw", dest="charge_kw", type=float)
    p.add_argument("--discharge-tech", dest="discharge_tech")
    p.add_argument("--discharge-kw", dest="discharge_kw", type=float)
    p.add_argument("--include-store-cost", dest="include_store_cost",
                   nargs="?", const="true",
                   help="true/false (false for indirect chains)")
    p.add_argument("--cashflows", help="CSV of yearly cost/revenue/energy")
    p.add_argument("--revenue", type=float)
    p.add_argument("--charging-cost", dest="charging_cost", type=float)
    p.add_argument("--discharged-energy", dest="discharged_energy", type=float)
    p.add_argument("--step-years", dest="step_years", type=int,
                   help="calendar years per planning year (default 5)")
    p.add_argument("--discount-rate", dest="discount_rate", type=float)
    _add_common(p)
    p.set_defaults(func=cmd_econ)

    p = sub.add_parser("pathway", help="hydrogen pathway revenue ledger")
    p.add_argument("--input", help="hourly flow CSV")
    p.add_argument("--country")
    p.add_argument("--year", type=int)
    p.add_argument("--gas-to-power", dest="gas_to_power", type=float,
                   help="annual synthetic gas to electricity, MWh")
    p.add_argument("--gas-to-heat", dest="gas_to_heat", type=float,
                   help="annual synthetic gas to heating, MWh")
    p.add_argument("--electrolyzer-efficiency", dest="electrolyzer_efficiency",
                   type=float)
    p.add_argument("--fuelcell-efficiency", dest="fuelcell_efficiency", type=float)
    p.add_argument("--convention", choices=["max_indirect", "max_direct"])
    p.add_argument("--store-capacity-mwh", dest="store_capacity_mwh", type=float)
    p.add_argument("--electrolyzer-capacity-mw", dest="electrolyzer_capacity_mw",
                   type=float)
    _add_common(p)
    p.set_defaults(func=cmd_pathway)

    p = sub.add_parser("co2path", help="carbon-budget emission trajectory")
    p.add_argument("--e0", type=float, help="initial annual emissions")
    p.add_argument("--t0", type=float)
    p.add_argument("--tf", type=float)
    p.add_argument("--budget", type=float, help="cumulative budget to solve for")
    p.add_argument("--beta", type=float, help="fix the shape instead of solving")
    p.add_argument("--mode", choices=["asymmetric", "symmetric"])
    p.add_argument("--step-years", dest="step_years", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_co2path)

    p = sub.add_parser("report", help="full per-region pipeline")
    p.add_argument("--input", help="filling-level CSV (or level_csv in config)")
    p.add_argument("--column")
    _add_common(p)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args)
    except UndefinedResult as exc:
        print(f"storalyze: undefined result: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"storalyze: invalid input: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, PermissionError) as exc:
        print(f"storalyze: cannot read input: {exc}", file=sys.stderr)
        return 2
    except pd.errors.ParserError as exc:
        print(f"storalyze: malformed CSV: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
