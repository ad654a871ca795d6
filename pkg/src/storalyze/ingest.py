"""Loading and validation of hourly time series and technology cost tables.

Time-series CSV files come in two layouts:

* wide -- one timestamp column followed by one column per series; the
  ``column`` argument names the series to load;
* long -- exactly three columns ``(timestamp, key, value)``; rows whose
  key equals ``column`` are selected.

Timestamps must be ISO-8601 and strictly hourly.  Runs of up to three
consecutive missing values are filled by linear interpolation (and
counted); longer runs, or runs touching either end of the record, raise
:class:`~storalyze.errors.TooManyGaps`.

Cost tables are keyed by ``(technology, year)``.  Years between anchor
rows are linearly interpolated per technology.
"""
from __future__ import annotations

import dataclasses
from importlib import resources

import numpy as np
import pandas as pd

from .errors import (
    EmptyInput,
    InvalidLifetime,
    MissingColumn,
    NegativeCost,
    NonFiniteValue,
    NonUniformSpacing,
    OutOfDomain,
    TooManyGaps,
    TooShort,
    UnknownTechnology,
    ValidationError,
)

#: Recognised physical units for a :class:`TimeSeries`.
UNITS = ("EUR_per_MWh", "MWh", "MW", "dimensionless")

#: Recognised capex denominators in a cost table.
CAPEX_UNITS = ("EUR_per_kW", "EUR_per_kWh")

#: Longest run of consecutive missing hours that is still interpolated.
MAX_GAP_HOURS = 3


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(a, dtype=np.float64)
    if out is a:
        out = out.copy()
    out.setflags(write=False)
    return out


@dataclasses.dataclass(frozen=True)
class TimeSeries:
    """One validated hourly series.

    ``values`` is a read-only float64 array; ``start`` is the first
    timestamp; ``gaps_filled`` counts the interpolated gap runs.
    """

    name: str
    year: int
    unit: str
    values: np.ndarray
    start: pd.Timestamp
    gaps_filled: int = 0

    def __post_init__(self):
        if self.unit not in UNITS:
            raise ValidationError(
                f"unknown unit {self.unit!r}; expected one of {UNITS}"
            )
        values = _readonly(np.asarray(self.values))
        if values.ndim != 1 or values.size < 2:
            raise TooShort("a time series needs at least 2 hourly values")
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue(f"series {self.name!r} contains non-finite values")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size


@dataclasses.dataclass(frozen=True)
class NormalizedSeries:
    """Min-max normalized view of a series.

    ``min``/``max`` are the original-scale bounds; ``constant`` flags a
    degenerate input that was mapped to all zeros.
    """

    source: TimeSeries | None
    values: np.ndarray
    min: float
    max: float
    constant: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", _readonly(np.asarray(self.values)))

    def __len__(self) -> int:
        return self.values.size


@dataclasses.dataclass(frozen=True)
class CostAssumptions:
    """Cost and technical assumptions for one technology in one year."""

    technology: str
    year: int
    capex: float
    capex_unit: str
    fom_pct: float
    lifetime_years: int
    efficiency: float
    discount_rate: float = 0.07

    def __post_init__(self):
        if self.capex < 0:
            raise NegativeCost(f"{self.technology}: capex {self.capex} < 0")
        if self.capex_unit not in CAPEX_UNITS:
            raise ValidationError(
                f"{self.technology}: capex_unit {self.capex_unit!r} "
                f"not in {CAPEX_UNITS}"
            )
        if not 0.0 <= self.fom_pct <= 100.0:
            raise ValidationError(
                f"{self.technology}: fom_pct {self.fom_pct} outside [0, 100]"
            )
        if int(self.lifetime_years) != self.lifetime_years or self.lifetime_years < 1:
            raise InvalidLifetime(
                f"{self.technology}: lifetime {self.lifetime_years} must be "
                "an integer >= 1"
            )
        if not 0.0 < self.efficiency <= 1.0:
            raise ValidationError(
                f"{self.technology}: efficiency {self.efficiency} outside (0, 1]"
            )


def _values_from_frame(df: pd.DataFrame, column, tcol, path) -> pd.Series:
    """Pick the requested series from a wide or long frame."""
    if column is None:
        candidates = [c for c in df.columns if c != tcol]
        if len(candidates) != 1:
            raise MissingColumn(
                f"{path}: no column given and the file is not single-series "
                f"(found {candidates})"
            )
        return df[candidates[0]]
    if column in df.columns:
        return df[column]
    # long layout: (timestamp, key, value)
    if df.shape[1] == 3:
        key_col, val_col = df.columns[1], df.columns[2]
        mask = df[key_col].astype(str) == column
        if mask.any():
            return df.loc[mask, val_col]
    raise MissingColumn(f"{path}: no column or series key {column!r}")


def load_series(
    path,
    column: str | None = None,
    unit: str = "dimensionless",
    time_column: str | None = None,
) -> TimeSeries:
    """Load one hourly series from a CSV file.

    Parameters
    ----------
    path : str or Path
        CSV file with a header row and ISO-8601 timestamps.
    column : str, optional
        Wide-format column name, or long-format series key.  May be
        omitted for a file holding exactly one value column.
    unit : str
        One of :data:`UNITS`.
    time_column : str, optional
        Timestamp column; defaults to the first column.

    Returns
    -------
    TimeSeries
        Hourly values with short gaps interpolated.
    """
    # round_trip parsing keeps save_series -> load_series bit-exact
    df = pd.read_csv(path, float_precision="round_trip")
    if df.shape[0] == 0:
        raise EmptyInput(f"{path}: no data rows")
    tcol = time_column if time_column is not None else df.columns[0]
    if tcol not in df.columns:
        raise MissingColumn(f"{path}: no timestamp column {tcol!r}")

    raw = _values_from_frame(df, column, tcol, path)
    name = str(raw.name) if column is None else column
    try:
        stamps = pd.to_datetime(df.loc[raw.index, tcol])
    except (ValueError, TypeError) as exc:
        raise NonUniformSpacing(f"{path}: unparseable timestamps: {exc}") from None
    try:
        values = raw.astype(float).to_numpy()
    except (ValueError, TypeError):
        raise MissingColumn(f"{path}: column {name!r} is not numeric") from None

    if values.size < 2:
        raise TooShort(f"{path}: need at least 2 rows, got {values.size}")
    deltas = stamps.diff().iloc[1:]
    if not (deltas == pd.Timedelta(hours=1)).all():
        raise NonUniformSpacing(
            f"{path}: timestamps must increase in strict 1 h steps"
        )
    if np.isinf(values).any():
        raise NonFiniteValue(f"{path}: column {column!r} contains +/-inf")

    values, gaps = _fill_gaps(values, where=f"{path}:{name}")
    return TimeSeries(
        name=name,
        year=int(stamps.iloc[0].year),
        unit=unit,
        values=values,
        start=stamps.iloc[0],
        gaps_filled=gaps,
    )


def _fill_gaps(values: np.ndarray, where: str = "series"):
    """Linearly interpolate NaN runs of at most :data:`MAX_GAP_HOURS`.

    Returns ``(filled, number_of_runs)``.  A run longer than the limit,
    or one touching the first or last sample (no flanking value to
    anchor the interpolation), raises :class:`TooManyGaps`.
    """
    isnan = np.isnan(values)
    if not isnan.any():
        return values.astype(np.float64), 0
    out = values.astype(np.float64).copy()
    n = out.size
    gaps = 0
    i = 0
    while i < n:
        if not isnan[i]:
            i += 1
            continue
        j = i
        while j < n and isnan[j]:
            j += 1
        run = j - i
        if run > MAX_GAP_HOURS or i == 0 or j == n:
            raise TooManyGaps(
                f"{where}: gap of {run} consecutive missing hours at index {i} "
                f"cannot be interpolated (limit {MAX_GAP_HOURS}, interior only)"
            )
        lo, hi = out[i - 1], out[j]
        for k in range(run):
            out[i + k] = lo + (hi - lo) * (k + 1) / (run + 1)
        gaps += 1
        i = j
    return out, gaps


def save_series(series: TimeSeries, path) -> None:
    """Write a series back to wide CSV so that reloading is bit-exact.

    Values are formatted with ``repr``, which is the shortest string
    that round-trips through ``float``.
    """
    stamps = pd.date_range(series.start, periods=len(series), freq="h")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"timestamp,{series.name}\n")
        for ts, v in zip(stamps, series.values):
            fh.write(f"{ts.isoformat()},{float(v)!r}\n")


def normalize_minmax(series) -> NormalizedSeries:
    """Map a series onto [0, 1] by its own minimum and maximum.

    A constant series has no usable range and maps to all zeros with
    ``constant=True``.
    """
    source = series if isinstance(series, TimeSeries) else None
    values = np.asarray(getattr(series, "values", series), dtype=np.float64)
    if values.size == 0:
        raise EmptyInput("cannot normalize an empty series")
    if not np.all(np.isfinite(values)):
        raise NonFiniteValue("cannot normalize non-finite values")
    vmin = float(values.min())
    vmax = float(values.max())
    if vmax == vmin:
        return NormalizedSeries(
            source=source,
            values=np.zeros_like(values),
            min=vmin,
            max=vmax,
            constant=True,
        )
    return NormalizedSeries(
        source=source,
        values=(values - vmin) / (vmax - vmin),
        min=vmin,
        max=vmax,
        constant=False,
    )


class CostTable:
    """Cost assumptions keyed by ``(technology, year)`` with interpolation.

    Anchor rows come straight from the CSV; lookups for years between
    two anchors interpolate capex, fixed O&M and efficiency linearly and
    round the lifetime to the nearest anchor-weighted integer.
    """

    def __init__(self, rows: list[CostAssumptions]):
        if not rows:
            raise EmptyInput("cost table has no rows")
        self._anchors: dict[str, dict[int, CostAssumptions]] = {}
        for row in rows:
            self._anchors.setdefault(row.technology, {})[int(row.year)] = row

    @property
    def technologies(self) -> list[str]:
        return sorted(self._anchors)

    def years(self, technology: str) -> list[int]:
        self._require(technology)
        return sorted(self._anchors[technology])

    def _require(self, technology: str):
        if technology not in self._anchors:
            raise UnknownTechnology(
                f"technology {technology!r} not in cost table "
                f"(have: {', '.join(self.technologies)})"
            )

    def lookup(self, technology: str, year: int) -> CostAssumptions:
        """Return assumptions for ``technology`` in ``year``.

        Years between anchors interpolate linearly; years outside the
        anchor span raise :class:`OutOfDomain` (no extrapolation).
        """
        self._require(technology)
        anchors = self._anchors[technology]
        years = sorted(anchors)
        if year in anchors:
            return anchors[year]
        if year < years[0] or year > years[-1]:
            raise OutOfDomain(
                f"{technology}: year {year} outside anchor range "
                f"[{years[0]}, {years[-1]}]"
            )
        hi_idx = next(i for i, y in enumerate(years) if y > year)
        y0, y1 = years[hi_idx - 1], years[hi_idx]
        a, b = anchors[y0], anchors[y1]
        w = (year - y0) / (y1 - y0)
        if a.capex_unit != b.capex_unit:
            raise OutOfDomain(
                f"{technology}: capex_unit changes between {y0} and {y1}"
            )
        lifetime = round(a.lifetime_years + w * (b.lifetime_years - a.lifetime_years))
        return CostAssumptions(
            technology=technology,
            year=int(year),
            capex=a.capex + w * (b.capex - a.capex),
            capex_unit=a.capex_unit,
            fom_pct=a.fom_pct + w * (b.fom_pct - a.fom_pct),
            lifetime_years=int(lifetime),
            efficiency=a.efficiency + w * (b.efficiency - a.efficiency),
            discount_rate=a.discount_rate,
        )


def load_costs(path, discount_rate: float = 0.07) -> CostTable:
    """Load a cost table CSV.

    Expected columns: ``technology, year, capex, capex_unit, fom_pct,
    lifetime_years, efficiency``.  Empty ``fom_pct`` defaults to 0,
    empty ``efficiency`` to 1.
    """
    df = pd.read_csv(path)
    required = ["technology", "year", "capex", "capex_unit"]
    for col in required:
        if col not in df.columns:
            raise MissingColumn(f"{path}: cost table needs a {col!r} column")
    rows = []
    for _, rec in df.iterrows():
        capex = float(rec["capex"])
        if capex < 0:
            raise NegativeCost(
                f"{path}: {rec['technology']} {rec['year']}: capex {capex} < 0"
            )
        fom = rec.get("fom_pct", 0.0)
        eff = rec.get("efficiency", 1.0)
        life = rec.get("lifetime_years", np.nan)
        rows.append(
            CostAssumptions(
                technology=str(rec["technology"]),
                year=int(rec["year"]),
                capex=capex,
                capex_unit=str(rec["capex_unit"]),
                fom_pct=0.0 if pd.isna(fom) else float(fom),
                lifetime_years=25 if pd.isna(life) else int(life),
                efficiency=1.0 if pd.isna(eff) else float(eff),
                discount_rate=discount_rate,
            )
        )
    return CostTable(rows)


def default_costs_path() -> str:
    """Path of the cost table bundled with the package."""
    return str(resources.files("storalyze").joinpath("data/default_costs.csv"))
