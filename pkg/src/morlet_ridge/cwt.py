"""Continuous wavelet transform over a geometric scale grid.

Two engines compute the same L2-normalised transform

    W(a, b) = a**-0.5 * int s(t) * conj(psi((t - b) / a)) dt

``cwt_direct`` sums over samples in the time domain and is the reference;
``cwt_fft`` multiplies spectra and is the one used by default.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Literal

import numpy as np
import scipy.fft
from numpy.typing import ArrayLike

from .exceptions import ResolutionError, SpanError, WaveletDomainError
from .wavelet import WaveletShape, psi, psi_hat

__all__ = [
    "Signal",
    "ScaleGrid",
    "Scalogram",
    "build_scale_grid",
    "coi_radius",
    "default_band",
    "cwt",
    "cwt_direct",
    "cwt_fft",
    "DEFAULT_VOICES",
    "KERNEL_HALF_WIDTH",
]

DEFAULT_VOICES = 8
# direct-path wavelet support, in units of the scale
KERNEL_HALF_WIDTH = 10.0

_SQRT8 = 2.0 * math.sqrt(2.0)


def _frozen(values: ArrayLike, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Signal:
    """Uniformly sampled real series; ``samples[i]`` is taken at ``t0 + i * dt``."""

    samples: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self) -> None:
        samples = _frozen(self.samples)
        if samples.ndim != 1 or samples.size < 2:
            raise WaveletDomainError("a signal needs at least two samples in a 1-D array")
        if not np.all(np.isfinite(samples)):
            raise WaveletDomainError("signal samples must be finite")
        dt, t0 = float(self.dt), float(self.t0)
        if not (math.isfinite(dt) and dt > 0.0):
            raise WaveletDomainError(f"sample spacing must be positive, got {self.dt!r}")
        if not math.isfinite(t0):
            raise WaveletDomainError("t0 must be finite")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "dt", dt)
        object.__setattr__(self, "t0", t0)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.samples.size) * self.dt

    @property
    def span(self) -> float:
        return (self.samples.size - 1) * self.dt

    def scaled(self, factor: float) -> "Signal":
        return Signal(self.samples * factor, self.dt, self.t0)


@dataclass(frozen=True, eq=False)
class ScaleGrid:
    """Strictly increasing scales spaced ``voices_per_octave`` to the octave."""

    scales: np.ndarray
    voices_per_octave: int
    shape_sigma: float

    def __post_init__(self) -> None:
        scales = _frozen(self.scales)
        if scales.ndim != 1 or scales.size == 0 or not np.all(scales > 0):
            raise WaveletDomainError("scales must be a non-empty 1-D array of positive values")
        voices = int(self.voices_per_octave)
        if voices < 1:
            raise WaveletDomainError("voices_per_octave must be a positive integer")
        if scales.size > 1:
            ratios = scales[1:] / scales[:-1]
            if np.max(np.abs(ratios / 2.0 ** (1.0 / voices) - 1.0)) > 1e-12:
                raise WaveletDomainError(
                    f"consecutive scales must have ratio 2**(1/{voices})"
                )
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "voices_per_octave", voices)
        object.__setattr__(self, "shape_sigma", float(self.shape_sigma))

    def __len__(self) -> int:
        return self.scales.size

    @cached_property
    def shape(self) -> WaveletShape:
        return WaveletShape(self.shape_sigma)

    @property
    def frequencies(self) -> np.ndarray:
        """Centre frequency of each scale, in cycles per time unit."""
        return self.shape.peak_frequency / (2.0 * np.pi * self.scales)

    @property
    def log_step(self) -> float:
        return math.log(2.0) / self.voices_per_octave


def build_scale_grid(
    f_min: float,
    f_max: float,
    voices_per_octave: int = DEFAULT_VOICES,
    shape: WaveletShape | None = None,
) -> ScaleGrid:
    """Scales whose centre frequencies step down from ``f_max`` to ``f_min``.

    Frequencies are ``f_max * 2**(-k / V)`` for ``k = 0 .. ceil(V log2(f_max/f_min))``
    so the lowest one can fall just below ``f_min``.  Scales are returned in
    ascending order.
    """
    shape = shape if shape is not None else WaveletShape(5.0)
    f_min, f_max = float(f_min), float(f_max)
    if not (f_min > 0 and f_max > 0 and math.isfinite(f_max)):
        raise WaveletDomainError("frequencies must be positive and finite")
    if f_min > f_max:
        raise WaveletDomainError(f"f_min={f_min} exceeds f_max={f_max}")
    voices = int(voices_per_octave)
    if voices < 1:
        raise WaveletDomainError("voices_per_octave must be a positive integer")
    n_steps = math.ceil(voices * math.log2(f_max / f_min) - 1e-9)
    a0 = shape.peak_frequency / (2.0 * math.pi * f_max)
    scales = a0 * 2.0 ** (np.arange(n_steps + 1) / voices)
    return ScaleGrid(scales, voices, shape.sigma)


def default_band(
    signal: Signal, shape: WaveletShape, voices_per_octave: int = DEFAULT_VOICES
) -> tuple[float, float]:
    """Widest safe ``(f_min, f_max)`` for a signal.

    ``f_max`` sits at a quarter of the Nyquist frequency, where the spectral
    and direct engines still agree closely; ``f_min`` keeps the largest grid
    scale, which can undershoot ``f_min`` by one voice, within a quarter of
    the span.
    """
    f_max = 0.125 / signal.dt
    a_max = signal.span / 4.0
    f_min = shape.peak_frequency / (2.0 * math.pi * a_max) * 2.0 ** (1.0 / voices_per_octave)
    if f_min > f_max:
        raise SpanError(f"signal of span {signal.span!r} is too short for any scale")
    return f_min, f_max


def coi_radius(a: float, shape: WaveletShape) -> float:
    """Distance from an edge at which the envelope has dropped to ``exp(-2)``."""
    return a * _SQRT8 * math.sqrt(shape.env_var)


@dataclass(frozen=True, eq=False)
class Scalogram:
    """Complex CWT coefficients, ``coefficients[scale_index, sample_index]``."""

    coefficients: np.ndarray
    grid: ScaleGrid
    dt: float
    t0: float
    coi_radius_per_scale: np.ndarray = field(default=None)

    def __post_init__(self) -> None:
        coeffs = _frozen(self.coefficients, complex)
        if coeffs.ndim != 2 or coeffs.shape[0] != len(self.grid):
            raise WaveletDomainError("coefficient rows must match the scale grid")
        object.__setattr__(self, "coefficients", coeffs)
        if self.coi_radius_per_scale is None:
            shape = self.grid.shape
            radii = [coi_radius(a, shape) for a in self.grid.scales]
            object.__setattr__(self, "coi_radius_per_scale", _frozen(radii))

    @property
    def n_samples(self) -> int:
        return self.coefficients.shape[1]

    @property
    def scales(self) -> np.ndarray:
        return self.grid.scales

    @property
    def shape(self) -> WaveletShape:
        return self.grid.shape

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.n_samples) * self.dt

    @property
    def modulus(self) -> np.ndarray:
        return np.abs(self.coefficients)

    def edge_distance(self) -> np.ndarray:
        """Distance of each translation from the nearer signal edge."""
        idx = np.arange(self.n_samples)
        return np.minimum(idx, self.n_samples - 1 - idx) * self.dt

    def interior_mask(self) -> np.ndarray:
        """True where a coefficient lies outside the cone of influence."""
        return self.edge_distance()[None, :] >= self.coi_radius_per_scale[:, None]


def _check_resolvable(signal: Signal, grid: ScaleGrid, shape: WaveletShape) -> None:
    period_factor = 2.0 * math.pi / shape.peak_frequency
    a_lo, a_hi = grid.scales[0], grid.scales[-1]
    if a_lo * period_factor < 2.0 * signal.dt * (1.0 - 1e-12):
        raise ResolutionError(
            f"scale {a_lo!r} resolves a period of {a_lo * period_factor!r}, "
            f"below two samples ({2.0 * signal.dt!r})"
        )
    if a_hi > signal.span / 4.0 * (1.0 + 1e-12):
        raise SpanError(
            f"scale {a_hi!r} exceeds a quarter of the signal span ({signal.span / 4.0!r})"
        )


def _map_rows(row: Callable[[int], np.ndarray], n_rows: int, n_jobs: int | None) -> list:
    if n_jobs is None or n_jobs == 1:
        return [row(k) for k in range(n_rows)]
    workers = None if n_jobs < 0 else n_jobs
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(row, range(n_rows)))


def cwt_direct(
    signal: Signal,
    grid: ScaleGrid,
    shape: WaveletShape | None = None,
    *,
    n_jobs: int | None = None,
) -> Scalogram:
    """Reference transform: Riemann sum over samples, wavelet cut at ``|t - b| > 10 a``."""
    shape = shape if shape is not None else grid.shape
    _check_resolvable(signal, grid, shape)
    s = signal.samples
    n = s.size
    dt = signal.dt

    def row(k: int) -> np.ndarray:
        a = grid.scales[k]
        half = int(math.floor(KERNEL_HALF_WIDTH * a / dt))
        offsets = np.arange(-half, half + 1) * dt
        # convolving with psi(u / a) equals correlating with conj(psi(-u / a))
        kernel = psi(offsets / a, shape) * (dt / math.sqrt(a))
        full = np.convolve(s, kernel, mode="full")
        return full[half : half + n]

    rows = _map_rows(row, len(grid), n_jobs)
    return Scalogram(np.vstack(rows), grid, dt, signal.t0)


def fft_length(n_samples: int, grid: ScaleGrid, dt: float) -> int:
    """Padded transform length: at least twice the signal and longer than the widest wavelet."""
    reach = int(math.ceil(KERNEL_HALF_WIDTH * grid.scales[-1] / dt))
    return scipy.fft.next_fast_len(max(2 * n_samples, n_samples + reach + 1))


def cwt_fft(
    signal: Signal,
    grid: ScaleGrid,
    shape: WaveletShape | None = None,
    *,
    n_jobs: int | None = None,
) -> Scalogram:
    """Spectral transform: per scale, ``ifft(fft(s) * sqrt(a) * psi_hat(a w))``."""
    shape = shape if shape is not None else grid.shape
    _check_resolvable(signal, grid, shape)
    n = len(signal)
    m = fft_length(n, grid, signal.dt)
    spectrum = scipy.fft.fft(signal.samples, n=m)
    omega = 2.0 * np.pi * scipy.fft.fftfreq(m, d=signal.dt)

    def row(k: int) -> np.ndarray:
        a = grid.scales[k]
        # psi_hat is real, so conj() is a no-op here
        return scipy.fft.ifft(spectrum * (math.sqrt(a) * psi_hat(a * omega, shape)))[:n]

    rows = _map_rows(row, len(grid), n_jobs)
    return Scalogram(np.vstack(rows), grid, signal.dt, signal.t0)


def cwt(
    signal: Signal,
    grid: ScaleGrid,
    shape: WaveletShape | None = None,
    *,
    engine: Literal["direct", "spectral"] = "spectral",
    n_jobs: int | None = None,
) -> Scalogram:
    """Dispatch to :func:`cwt_fft` (``"spectral"``) or :func:`cwt_direct`."""
    if engine == "spectral":
        return cwt_fft(signal, grid, shape, n_jobs=n_jobs)
    if engine == "direct":
        return cwt_direct(signal, grid, shape, n_jobs=n_jobs)
    raise WaveletDomainError(f"unknown engine {engine!r}")
