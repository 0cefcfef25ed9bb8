"""Single dominant ridge of a scalogram, with instantaneous frequency and amplitude.

The ridge is located on the scale-compensated modulus ``|W(a, b)| / sqrt(a)``.
For a tone ``A cos(2 pi f t)`` the L2-normalised transform gives
``|W| = (A / 2) sqrt(a) psi_hat(2 pi f a)``, so dividing by ``sqrt(a)`` puts
the maximum exactly where ``2 pi f a`` equals the wavelet's peak frequency.
Maximising the raw modulus instead lands near ``sigma + 1 / (2 sigma)`` and
biases the frequency low by roughly ``1 / (2 sigma**2)`` (2% at sigma = 5).

Near the ends of a zero-padded signal the wavelet only partly overlaps the
data.  Amplitudes are divided by the fraction of the Gaussian envelope that
does overlap, ``Phi(d_left / a) + Phi(d_right / a) - 1``; without it the
estimate at the cone-of-influence boundary is about 2% low.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import ndtr

from .cwt import Scalogram, ScaleGrid, coi_radius
from .exceptions import DegenerateScalogramError, PassbandError, WaveletDomainError
from .wavelet import WaveletShape, psi_hat

__all__ = [
    "Ridge",
    "extract_ridge",
    "ridge_path",
    "refine_scale",
    "edge_gain",
    "instantaneous_frequency",
    "instantaneous_amplitude",
    "SNR_FLOOR",
    "PASSBAND_FLOOR",
]

SNR_FLOOR = 1e-3
PASSBAND_FLOOR = 1e-6


@dataclass(frozen=True, eq=False)
class Ridge:
    """Per-translation ridge record; every field is an array over columns."""

    times: np.ndarray
    scale_index: np.ndarray
    refined_scale: np.ndarray
    inst_freq: np.ndarray
    inst_amp: np.ndarray
    edge_ok: np.ndarray
    snr_ok: np.ndarray

    def __len__(self) -> int:
        return self.times.size

    @property
    def valid(self) -> np.ndarray:
        return self.edge_ok & self.snr_ok


def _parabola(y_minus, y_0, y_plus, step):
    """Clamped vertex offset and peak value of the parabola through three points."""
    y_minus, y_0, y_plus = np.broadcast_arrays(
        np.asarray(y_minus, float), np.asarray(y_0, float), np.asarray(y_plus, float)
    )
    slope = (y_plus - y_minus) / (2.0 * step)
    curv = (y_plus - 2.0 * y_0 + y_minus) / (2.0 * step * step)
    concave = curv < 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        offset = np.where(concave, -slope / (2.0 * np.where(concave, curv, -1.0)), 0.0)
    offset = np.clip(offset, -0.5 * step, 0.5 * step)
    peak = y_0 + slope * offset + curv * offset * offset
    return offset, peak


def refine_scale(modulus_column: ArrayLike, idx: int, grid: ScaleGrid) -> float:
    """Sub-grid scale from a parabola through ``log|W|`` against ``log a``.

    The vertex is clamped to half a grid step either side of ``scales[idx]``;
    at either end of the grid the grid scale is returned unchanged.
    """
    column = np.asarray(modulus_column, dtype=float)
    if not 0 <= idx < len(grid):
        raise IndexError(f"scale index {idx} outside grid of {len(grid)}")
    if idx == 0 or idx == len(grid) - 1:
        return float(grid.scales[idx])
    with np.errstate(divide="ignore"):
        logs = np.log(column[idx - 1 : idx + 2])
    if not np.all(np.isfinite(logs)):
        return float(grid.scales[idx])
    offset, _ = _parabola(logs[0], logs[1], logs[2], grid.log_step)
    return float(grid.scales[idx] * math.exp(float(offset)))


def instantaneous_frequency(refined_scale: ArrayLike, shape: WaveletShape) -> np.ndarray | float:
    """Frequency, in cycles per time unit, that peaks at ``refined_scale``."""
    out = shape.peak_frequency / (2.0 * np.pi * np.asarray(refined_scale, dtype=float))
    return float(out) if out.ndim == 0 else out


def instantaneous_amplitude(
    w_at_ridge: ArrayLike,
    refined_scale: ArrayLike,
    inst_freq: ArrayLike,
    shape: WaveletShape,
) -> np.ndarray | float:
    """Amplitude of the tone ``A cos(2 pi f t)`` that would produce ``w_at_ridge``.

    Raises
    ------
    PassbandError
        If ``psi_hat`` at ``2 pi f a`` is not above ``1e-6``.
    """
    a = np.asarray(refined_scale, dtype=float)
    gain = psi_hat(2.0 * np.pi * np.asarray(inst_freq, dtype=float) * a, shape)
    gain = np.asarray(gain)
    if np.any(~(gain > PASSBAND_FLOOR)):
        raise PassbandError(
            f"ridge point outside the wavelet passband (psi_hat = {np.min(gain):.3e})"
        )
    out = 2.0 * np.abs(np.asarray(w_at_ridge)) / (np.sqrt(a) * gain)
    return float(out) if out.ndim == 0 else out


def edge_gain(times: np.ndarray, refined_scale: np.ndarray) -> np.ndarray:
    """Fraction of the Gaussian wavelet envelope that lies inside the signal."""
    left = (times - times[0]) / refined_scale
    right = (times[-1] - times) / refined_scale
    return ndtr(left) + ndtr(right) - 1.0


def ridge_path(criterion: np.ndarray, continuity_penalty: float = 0.0) -> np.ndarray:
    """Scale index per column maximising ``criterion`` with a jump penalty.

    With a zero penalty this is the column-wise argmax.  Otherwise the path
    minimises ``sum(-log criterion) + penalty * sum(diff(index)**2)`` by dynamic
    programming.  Ties go to the smaller scale index.
    """
    criterion = np.asarray(criterion, dtype=float)
    penalty = float(continuity_penalty)
    if not penalty >= 0.0:
        raise WaveletDomainError(f"continuity penalty must be non-negative, got {penalty}")
    if penalty == 0.0:
        return np.argmax(criterion, axis=0)

    n_scales, n_cols = criterion.shape
    cost = -np.log(np.maximum(criterion, np.finfo(float).tiny))
    jumps = np.arange(n_scales)
    transition = penalty * (jumps[:, None] - jumps[None, :]) ** 2
    back = np.empty((n_scales, n_cols), dtype=np.intp)
    total = cost[:, 0].copy()
    for b in range(1, n_cols):
        candidates = total[None, :] + transition
        back[:, b] = np.argmin(candidates, axis=1)
        total = candidates[jumps, back[:, b]] + cost[:, b]
    path = np.empty(n_cols, dtype=np.intp)
    path[-1] = np.argmin(total)
    for b in range(n_cols - 1, 0, -1):
        path[b - 1] = back[path[b], b]
    return path


def extract_ridge(
    scalogram: Scalogram,
    continuity_penalty: float = 0.0,
    *,
    compensate_scale: bool = True,
    edge_correction: bool = True,
) -> Ridge:
    """Trace the dominant ridge and read off frequency and amplitude along it.

    Parameters
    ----------
    scalogram : Scalogram
        Needs at least three scales.
    continuity_penalty : float, default=0.0
        Weight of the squared scale-index jump between neighbouring columns.
    compensate_scale : bool, default=True
        Locate the ridge on ``|W| / sqrt(a)``.  ``False`` uses the raw modulus,
        which shifts the ridge towards larger scales.
    edge_correction : bool, default=True
        Divide the ridge modulus by :func:`edge_gain` before calibrating the
        amplitude.

    Returns
    -------
    Ridge

    Raises
    ------
    DegenerateScalogramError
        If every coefficient is zero.
    """
    grid = scalogram.grid
    if len(grid) < 3:
        raise WaveletDomainError("ridge extraction needs at least three scales")
    shape = scalogram.shape
    modulus = scalogram.modulus
    column_max = modulus.max(axis=0)
    global_max = column_max.max()
    if not global_max > 0.0:
        raise DegenerateScalogramError("scalogram is identically zero")

    scales = grid.scales
    criterion = modulus / np.sqrt(scales)[:, None] if compensate_scale else modulus
    path = ridge_path(criterion, continuity_penalty)

    cols = np.arange(scalogram.n_samples)
    interior = (path > 0) & (path < len(grid) - 1)
    inner = np.clip(path, 1, len(grid) - 2)
    with np.errstate(divide="ignore"):
        logs = np.log(criterion)
    y_minus, y_0, y_plus = logs[inner - 1, cols], logs[inner, cols], logs[inner + 1, cols]
    usable = interior & np.isfinite(y_minus) & np.isfinite(y_0) & np.isfinite(y_plus)
    offset, peak = _parabola(
        np.where(usable, y_minus, 0.0),
        np.where(usable, y_0, 0.0),
        np.where(usable, y_plus, 0.0),
        grid.log_step,
    )
    offset = np.where(usable, offset, 0.0)
    peak_criterion = np.where(usable, np.exp(peak), criterion[path, cols])

    refined = scales[path] * np.exp(offset)
    peak_modulus = peak_criterion * np.sqrt(refined) if compensate_scale else peak_criterion
    if edge_correction:
        peak_modulus = peak_modulus / edge_gain(scalogram.times, refined)
    phase = np.exp(1j * np.angle(scalogram.coefficients[path, cols]))
    freq = instantaneous_frequency(refined, shape)
    amp = instantaneous_amplitude(peak_modulus * phase, refined, freq, shape)

    radii = np.array([coi_radius(a, shape) for a in refined])
    return Ridge(
        times=scalogram.times,
        scale_index=path,
        refined_scale=refined,
        inst_freq=np.atleast_1d(freq),
        inst_amp=np.atleast_1d(amp),
        edge_ok=scalogram.edge_distance() >= radii,
        snr_ok=column_max >= SNR_FLOOR * global_max,
    )
