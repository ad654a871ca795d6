"""Charge/discharge cycle detection for storage filling-level series.

A cycle is a maximal rising segment (charge) paired with the next
maximal falling segment (discharge) that both clear their depth
thresholds.  The detector is a three-stage pipeline:

1. turning points -- indices where the series changes direction;
   extremal plateaus are anchored at their first sample;
2. amplitude filter -- adjacent turning-point pairs whose excursion is
   below ``filter`` are merged into the surrounding trend, smallest
   excursion first.  Merging the smallest pair first guarantees the
   merged segment stays monotone between its endpoints;
3. pairing -- scanning the surviving alternating segments, the first
   rise with depth >= ``rise`` opens a charge and the next fall with
   depth >= ``fall`` closes the cycle.  Segments in between (wiggles
   below threshold, or further rises) are absorbed, so noise cannot
   split one physical cycle into many.

A series that starts with a qualifying fall yields an incomplete
leading-discharge record; a charge still open at the end of data yields
an incomplete trailing-charge record.  Both carry ``complete=False``
and are excluded from cycle counts unless explicitly requested.
"""
from __future__ import annotations

import dataclasses
import math

import numpy as np

from ._accel import maybe_njit
from .errors import MisalignedSeries, NonPositiveScale

_COMPLETE = 0
_LEAD_DISCHARGE = 1
_TAIL_CHARGE = 2


@dataclasses.dataclass(frozen=True)
class CycleThresholds:
    """Detection thresholds in normalized (0..1) units.

    ``rise``/``fall`` are the minimum charge and discharge depths;
    ``filter`` merges smaller excursions before pairing (0 disables).
    """

    filter: float = 0.0
    rise: float = 0.10
    fall: float = 0.10

    def __post_init__(self):
        if not 0.0 < self.rise <= 1.0:
            raise NonPositiveScale(f"rise threshold {self.rise} outside (0, 1]")
        if not 0.0 < self.fall <= 1.0:
            raise NonPositiveScale(f"fall threshold {self.fall} outside (0, 1]")
        if self.filter < 0.0:
            raise NonPositiveScale(f"filter threshold {self.filter} < 0")

    @classmethod
    def for_storage(cls, filter: float = 0.0) -> "CycleThresholds":
        """Defaults for storage filling levels (10 % of the range)."""
        return cls(filter=filter, rise=0.10, fall=0.10)

    @classmethod
    def for_price(cls, filter: float = 0.0) -> "CycleThresholds":
        """Defaults for price series (5 % of the range)."""
        return cls(filter=filter, rise=0.05, fall=0.05)


@dataclasses.dataclass(frozen=True)
class CycleRecord:
    """One detected cycle (or incomplete leg).

    Indices are sample positions in the analysed series.  Incomplete
    records leave the missing leg's fields as ``None``.
    """

    charge_start: int | None
    charge_end: int | None
    discharge_start: int | None
    discharge_end: int | None
    charge_depth: float | None
    discharge_depth: float | None
    complete: bool

    @property
    def start(self) -> int:
        return self.charge_start if self.charge_start is not None else self.discharge_start

    @property
    def end(self) -> int:
        return self.discharge_end if self.discharge_end is not None else self.charge_end

    @property
    def duration(self) -> int:
        """Hours spanned from first to last index of the record."""
        return self.end - self.start


@dataclasses.dataclass(frozen=True)
class PricedCycle:
    """A cycle with energy-weighted buy/sell prices attached.

    Energies are the summed per-hour weights of each leg, in the units
    of the weighting series (MWh for a flow series).
    """

    cycle: CycleRecord
    buy_price: float
    sell_price: float
    bought_energy: float
    sold_energy: float

    @property
    def spread(self) -> float:
        return self.sell_price - self.buy_price


def _detect_kernel(x, filt, rise, fall):
    """Full detection pipeline on one float64 array.

    Returns ``(count, kind, idx, depth)`` where ``kind`` is 0 for a
    complete cycle, 1 for a leading discharge, 2 for a trailing charge,
    ``idx`` holds (charge_start, charge_end, discharge_start,
    discharge_end) with -1 for missing legs, and ``depth`` holds
    (charge_depth, discharge_depth).
    """
    n = x.shape[0]
    kind = np.empty(n + 2, np.int8)
    idx = np.full((n + 2, 4), -1, np.int64)
    depth = np.zeros((n + 2, 2), np.float64)
    if n < 2:
        return 0, kind, idx, depth

    # --- stage 1: turning points (first attainment of each extremum) ---
    ti = np.empty(n, np.int64)
    tv = np.empty(n, np.float64)
    ti[0] = 0
    tv[0] = x[0]
    m = 1
    d = 0  # current direction: 0 unknown, +1 rising, -1 falling
    cand = 0  # index where the running extremum was first attained
    for i in range(1, n):
        dx = x[i] - x[i - 1]
        if dx == 0.0:
            continue
        s = 1 if dx > 0.0 else -1
        if s == d or d == 0:
            d = s
            cand = i
        else:
            ti[m] = cand
            tv[m] = x[cand]
            m += 1
            d = s
            cand = i
    if x[n - 1] != tv[m - 1]:
        ti[m] = n - 1
        tv[m] = x[n - 1]
        m += 1
    if m < 2:
        return 0, kind, idx, depth  # constant series: no segments

    # --- stage 2: amplitude filter (merge smallest excursion first) ---
    if filt > 0.0:
        nxt = np.empty(m, np.int64)
        prv = np.empty(m, np.int64)
        for k in range(m):
            nxt[k] = k + 1
            prv[k] = k - 1
        nxt[m - 1] = -1
        head = 0
        count = m
        while count >= 2:
            best = -1
            best_r = math.inf
            i = head
            while nxt[i] != -1:
                r = abs(tv[nxt[i]] - tv[i])
                if r < best_r:
                    best_r = r
                    best = i
                i = nxt[i]
            if best_r >= filt:
                break
            i = best
            j = nxt[i]
            if prv[i] == -1:
                # leading sub-threshold segment: drop its outer endpoint
                head = j
                prv[j] = -1
                count -= 1
            elif nxt[j] == -1:
                # trailing sub-threshold segment: drop its outer endpoint
                nxt[i] = -1
                count -= 1
            else:
                # interior wiggle: drop both endpoints, merging the
                # neighbouring same-direction trends into one
                p = prv[i]
                q = nxt[j]
                nxt[p] = q
                prv[q] = p
                count -= 2
        si = np.empty(count, np.int64)
        sv = np.empty(count, np.float64)
        k = head
        w = 0
        while k != -1:
            si[w] = ti[k]
            sv[w] = tv[k]
            w += 1
            k = nxt[k]
        mm = count
    else:
        si = ti[:m].copy()
        sv = tv[:m].copy()
        mm = m
    if mm < 2:
        return 0, kind, idx, depth

    # --- stage 3: pairing ---
    nseg = mm - 1
    nr = 0
    if sv[1] < sv[0] and (sv[0] - sv[1]) >= fall:
        kind[nr] = _LEAD_DISCHARGE
        idx[nr, 2] = si[0]
        idx[nr, 3] = si[1]
        depth[nr, 1] = sv[0] - sv[1]
        nr += 1
    open_seg = -1
    for k in range(nseg):
        up = sv[k + 1] > sv[k]
        dep = abs(sv[k + 1] - sv[k])
        if open_seg < 0:
            if up and dep >= rise:
                open_seg = k
        else:
            if (not up) and dep >= fall:
                kind[nr] = _COMPLETE
                idx[nr, 0] = si[open_seg]
                idx[nr, 1] = si[open_seg + 1]
                idx[nr, 2] = si[k]
                idx[nr, 3] = si[k + 1]
                depth[nr, 0] = sv[open_seg + 1] - sv[open_seg]
                depth[nr, 1] = sv[k] - sv[k + 1]
                nr += 1
                open_seg = -1
    if open_seg >= 0:
        kind[nr] = _TAIL_CHARGE
        idx[nr, 0] = si[open_seg]
        idx[nr, 1] = si[open_seg + 1]
        depth[nr, 0] = sv[open_seg + 1] - sv[open_seg]
        nr += 1
    return nr, kind, idx, depth


detect_kernel = maybe_njit(_detect_kernel)


def _series_values(series) -> np.ndarray:
    values = np.asarray(getattr(series, "values", series), dtype=np.float64)
    if values.ndim != 1:
        raise MisalignedSeries("cycle detection expects a 1-d series")
    return values


def detect_cycles(series, thresholds: CycleThresholds | None = None) -> list[CycleRecord]:
    """Detect charge/discharge cycles in a filling-level series.

    Parameters
    ----------
    series : NormalizedSeries, TimeSeries or array-like
        Hourly filling level.  Thresholds are interpreted in the same
        units as the series, so normalized input is the usual choice.
    thresholds : CycleThresholds, optional
        Defaults to :meth:`CycleThresholds.for_storage`.

    Returns
    -------
    list of CycleRecord
        Complete cycles in order of occurrence, plus at most one
        incomplete leading-discharge and one trailing-charge record.
    """
    th = thresholds if thresholds is not None else CycleThresholds()
    x = _series_values(series)
    nr, kind, idx, depth = detect_kernel(
        x, float(th.filter), float(th.rise), float(th.fall)
    )
    records = []
    for r in range(nr):
        k = int(kind[r])
        cs, ce, ds, de = (int(v) for v in idx[r])
        records.append(
            CycleRecord(
                charge_start=cs if k != _LEAD_DISCHARGE else None,
                charge_end=ce if k != _LEAD_DISCHARGE else None,
                discharge_start=ds if k != _TAIL_CHARGE else None,
                discharge_end=de if k != _TAIL_CHARGE else None,
                charge_depth=float(depth[r, 0]) if k != _LEAD_DISCHARGE else None,
                discharge_depth=float(depth[r, 1]) if k != _TAIL_CHARGE else None,
                complete=k == _COMPLETE,
            )
        )
    return records


def cycle_frequency(cycles: list[CycleRecord], include_partial: bool = False) -> int:
    """Number of cycles; incomplete legs only count if requested."""
    if include_partial:
        return len(cycles)
    return sum(1 for c in cycles if c.complete)


def _leg_average(price, weights):
    total = weights.sum()
    if total > 0.0:
        return float((price * weights).sum() / total), float(total)
    # no measurable movement in the leg: fall back to the plain mean
    return float(price.mean()), 0.0


def attach_prices(
    cycles: list[CycleRecord],
    price,
    flow=None,
    level=None,
    include_partial: bool = False,
) -> list[PricedCycle]:
    """Attach energy-weighted buy/sell prices to detected cycles.

    The charge leg of a cycle spanning samples ``a..b`` consists of the
    hours ``a .. b-1``; each hour's weight is the energy moved during
    it.  Exactly one of ``flow`` and ``level`` must be given:

    * ``flow`` -- signed hourly energy into storage (positive while
      charging, negative while discharging);
    * ``level`` -- the filling-level series the cycles were detected
      on; hourly increments serve as weights.

    Incomplete records are skipped unless ``include_partial`` is set,
    in which case the missing leg's price and energy are NaN.
    """
    p = _series_values(price)
    if (flow is None) == (level is None):
        raise MisalignedSeries("pass exactly one of flow= or level=")
    if flow is not None:
        f = _series_values(flow)
        if f.size != p.size:
            raise MisalignedSeries(
                f"flow has {f.size} hours but price has {p.size}"
            )
        charge_w = np.clip(f, 0.0, None)
        discharge_w = np.clip(-f, 0.0, None)
    else:
        lv = _series_values(level)
        if lv.size != p.size:
            raise MisalignedSeries(
                f"level has {lv.size} hours but price has {p.size}"
            )
        dlv = np.diff(lv)
        charge_w = np.clip(dlv, 0.0, None)
        discharge_w = np.clip(-dlv, 0.0, None)

    priced = []
    for c in cycles:
        if not c.complete and not include_partial:
            continue
        if c.end is not None and c.end >= p.size:
            raise MisalignedSeries(
                f"cycle index {c.end} outside price series of {p.size} hours"
            )
        buy = sell = math.nan
        bought = sold = math.nan
        if c.charge_start is not None:
            a, b = c.charge_start, c.charge_end
            buy, bought = _leg_average(p[a:b], charge_w[a:b])
        if c.discharge_start is not None:
            a, b = c.discharge_start, c.discharge_end
            sell, sold = _leg_average(p[a:b], discharge_w[a:b])
        priced.append(
            PricedCycle(
                cycle=c,
                buy_price=buy,
                sell_price=sell,
                bought_energy=bought,
                sold_energy=sold,
            )
        )
    return priced
