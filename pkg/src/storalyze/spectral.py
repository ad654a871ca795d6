"""Frequency- and scale-domain views of hourly series.

The amplitude spectrum uses the one-sided normalization in which a pure
sinusoid of amplitude A shows up as a bin of height A: interior bins
carry ``|X(k)| * 2/J`` and the DC and Nyquist bins ``|X(k)| / J``.

The wavelet transform uses the real Morlet wavelet

    psi(t) = exp(-t^2 / 2) * cos(5 t)

evaluated by direct convolution per scale with unit (1 hour) sample
spacing and ``1/sqrt(scale)`` normalization.  The kernel is truncated
at 8 standard deviations of the Gaussian envelope, where its value is
below double-precision noise.  Samples closer than four scale lengths
to either boundary fall inside the cone of influence and should not be
interpreted.
"""
from __future__ import annotations

import dataclasses

import numpy as np
from scipy.signal import fftconvolve

from ._accel import USE_NUMBA, maybe_njit
from .errors import NonPositiveScale, TooShort

#: Angular frequency of the Morlet carrier; pseudo period = 2*pi*scale/5.
MORLET_OMEGA = 5.0

#: Half-width of the truncated wavelet kernel in units of scale.
_KERNEL_HALFWIDTH = 8.0

#: Cone-of-influence half-width in units of scale.
COI_HALFWIDTH = 4.0


def morlet(t):
    """Real Morlet mother wavelet, elementwise."""
    t = np.asarray(t, dtype=np.float64)
    out = np.exp(-0.5 * t * t) * np.cos(MORLET_OMEGA * t)
    return out if out.ndim else float(out)


def pseudo_period(scale):
    """Period (hours) of the sinusoid a scale responds to most strongly."""
    return 2.0 * np.pi * np.asarray(scale, dtype=np.float64) / MORLET_OMEGA


def scale_for_period(period):
    """Inverse of :func:`pseudo_period`."""
    return MORLET_OMEGA * np.asarray(period, dtype=np.float64) / (2.0 * np.pi)


@dataclasses.dataclass(frozen=True)
class Spectrum:
    """One-sided amplitude spectrum of a detrended or raw series."""

    frequencies: np.ndarray  # cycles per hour, ascending from 0
    amplitudes: np.ndarray
    n_samples: int

    def __post_init__(self):
        for field in ("frequencies", "amplitudes"):
            a = np.ascontiguousarray(getattr(self, field), dtype=np.float64)
            a.setflags(write=False)
            object.__setattr__(self, field, a)


@dataclasses.dataclass(frozen=True)
class Scalogram:
    """Wavelet magnitudes on a (scale, time) grid.

    ``coi_halfwidth[s]`` is the number of samples at each end of the
    record that are edge-affected at scale ``scales[s]``.
    """

    scales: np.ndarray  # hours, ascending
    times: np.ndarray  # sample indices
    magnitudes: np.ndarray  # shape (n_scales, n_times)
    coi_halfwidth: np.ndarray

    @property
    def pseudo_periods(self) -> np.ndarray:
        return pseudo_period(self.scales)

    def coi_mask(self) -> np.ndarray:
        """Boolean matrix, True where a value is inside the cone of influence."""
        t = self.times[np.newaxis, :]
        w = self.coi_halfwidth[:, np.newaxis]
        n = self.times.size
        return (t < w) | (t > n - 1 - w)


def default_scales(n_scales: int = 64, smallest: float = 6.0, largest: float = 2190.0):
    """Logarithmic scale grid from 6 h up to a quarter year (2190 h)."""
    return np.geomspace(smallest, largest, n_scales)


def _series_values(series) -> np.ndarray:
    return np.asarray(getattr(series, "values", series), dtype=np.float64)


def fft_spectrum(series, detrend: bool = False) -> Spectrum:
    """One-sided amplitude spectrum of an hourly series.

    With ``detrend=True`` the mean is removed first, which empties the
    DC bin but leaves every other bin untouched.
    """
    x = _series_values(series)
    n = x.size
    if n < 2:
        raise TooShort(f"need at least 2 samples for a spectrum, got {n}")
    if detrend:
        x = x - x.mean()
    coeffs = np.fft.rfft(x)
    amp = np.abs(coeffs) * (2.0 / n)
    amp[0] = np.abs(coeffs[0]) / n
    if n % 2 == 0:
        amp[-1] = np.abs(coeffs[-1]) / n
    freqs = np.fft.rfftfreq(n, d=1.0)
    return Spectrum(frequencies=freqs, amplitudes=amp, n_samples=n)


def dominant_periods(spectrum: Spectrum, k: int = 1) -> list[tuple[float, float]]:
    """The ``k`` strongest local spectral peaks as (period_hours, amplitude).

    The DC bin is never a peak.  Ties in amplitude prefer the longer
    period.  Fewer than ``k`` peaks may exist (a flat spectrum has
    none), in which case the list is shorter.
    """
    if k < 1:
        raise NonPositiveScale(f"k must be >= 1, got {k}")
    a = spectrum.amplitudes
    candidates = []
    for i in range(1, a.size):
        left_ok = a[i] > a[i - 1]
        right_ok = i == a.size - 1 or a[i] > a[i + 1]
        if left_ok and right_ok:
            period = 1.0 / spectrum.frequencies[i]
            candidates.append((float(a[i]), float(period)))
    candidates.sort(key=lambda t: (-t[0], -t[1]))
    return [(period, amp) for amp, period in candidates[:k]]


def _cwt_direct_kernel(x, kern, half):
    """Correlate ``x`` with a centred symmetric kernel, zero-padded."""
    n = x.shape[0]
    out = np.zeros(n, np.float64)
    for b in range(n):
        lo = b - half
        if lo < 0:
            lo = 0
        hi = b + half
        if hi > n - 1:
            hi = n - 1
        acc = 0.0
        for t in range(lo, hi + 1):
            acc += x[t] * kern[t - b + half]
        out[b] = acc
    return out


cwt_direct_kernel = maybe_njit(_cwt_direct_kernel)


def _wavelet_kernel(scale: float, n: int):
    """Sampled wavelet for one scale, truncated where the envelope dies."""
    half = int(np.ceil(_KERNEL_HALFWIDTH * scale))
    half = min(half, n - 1)
    j = np.arange(-half, half + 1, dtype=np.float64)
    return morlet(j / scale), half


def _direct_row(x, kern, half):
    """Direct convolution of one scale: jitted loop or numpy fallback."""
    if USE_NUMBA:
        return cwt_direct_kernel(x, kern, half)
    full = np.convolve(x, kern, mode="full")
    return full[half : half + x.size]


def cwt_scalogram(series, scales=None, method: str = "direct") -> Scalogram:
    """Continuous wavelet transform magnitudes of an hourly series.

    Parameters
    ----------
    series : TimeSeries, NormalizedSeries or array-like
    scales : array-like of positive hours, optional
        Defaults to :func:`default_scales` (64 log-spaced scales from
        6 h to a quarter year).
    method : ``"direct"`` or ``"fft"``
        Direct per-scale convolution, or the FFT-based equivalent
        (identical to within accumulation noise).
    """
    x = _series_values(series)
    n = x.size
    if n < 2:
        raise TooShort(f"need at least 2 samples for a scalogram, got {n}")
    if scales is None:
        scales = default_scales()
    scales = np.sort(np.asarray(scales, dtype=np.float64))
    if scales.size == 0 or np.any(scales <= 0) or not np.all(np.isfinite(scales)):
        raise NonPositiveScale("wavelet scales must be positive and finite")
    if method not in ("direct", "fft"):
        raise NonPositiveScale(f"unknown cwt method {method!r}")

    mags = np.empty((scales.size, n), np.float64)
    for s, a in enumerate(scales):
        kern, half = _wavelet_kernel(a, n)
        if method == "direct":
            row = _direct_row(x, kern, half)
        else:
            row = fftconvolve(x, kern, mode="full")[half : half + n]
        mags[s] = np.abs(row) / np.sqrt(a)
    coi = np.minimum(np.ceil(COI_HALFWIDTH * scales), n).astype(np.int64)
    return Scalogram(
        scales=scales,
        times=np.arange(n, dtype=np.int64),
        magnitudes=mags,
        coi_halfwidth=coi,
    )
