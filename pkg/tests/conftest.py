"""Shared fixtures: tiny CSV builders used across the test modules."""
from __future__ import annotations

import numpy as np
import pandas as pd
import pytest


def hourly_frame(values, start="2030-01-01", name="value") -> pd.DataFrame:
    stamps = pd.date_range(start, periods=len(values), freq="h")
    return pd.DataFrame({"timestamp": stamps, name: values})


@pytest.fixture
def write_series(tmp_path):
    """Write an hourly wide-format CSV and return its path."""

    def _write(values, name="value", filename="series.csv", start="2030-01-01"):
        path = tmp_path / filename
        hourly_frame(values, start=start, name=name).to_csv(path, index=False)
        return path

    return _write


def triangle_series(cycles=5, half=12) -> np.ndarray:
    """0->1->0 triangle wave repeated ``cycles`` times, shared endpoints."""
    up = np.linspace(0.0, 1.0, half + 1)
    down = np.linspace(1.0, 0.0, half + 1)[1:]
    one = np.concatenate([up, down])
    return np.concatenate([one[:-1]] * cycles + [one[-1:]])


@pytest.fixture
def costs_csv(tmp_path):
    """A minimal two-anchor cost table for interpolation tests."""
    path = tmp_path / "costs.csv"
    pd.DataFrame(
        {
            "technology": ["demo store", "demo store", "demo link", "demo link"],
            "year": [2020, 2030, 2020, 2030],
            "capex": [100.0, 50.0, 400.0, 300.0],
            "capex_unit": ["EUR_per_kWh"] * 2 + ["EUR_per_kW"] * 2,
            "fom_pct": [1.0, 2.0, 0.5, 0.5],
            "lifetime_years": [20, 30, 10, 10],
            "efficiency": [1.0, 1.0, 0.9, 0.95],
        }
    ).to_csv(path, index=False)
    return path
