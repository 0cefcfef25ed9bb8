"""Readers and writers for signal CSV, ridge CSV, WSCG scalograms and PGM heatmaps.

WSCG layout (all little-endian)::

    b"WSCG"  uint16 version=1  uint32 n_scales  uint32 n_translations
    float64 dt  float64 t0  float64[n_scales] scales
    float64[n_scales * n_translations * 2] interleaved (re, im), row-major
"""
from __future__ import annotations

import csv
import io
import math
import os
import struct
from typing import Any, Mapping

import numpy as np

from .cwt import Scalogram, ScaleGrid, Signal
from .exceptions import FormatError
from .ridge import Ridge

__all__ = [
    "format_float",
    "write_psi_csv",
    "write_signal_csv",
    "read_signal_csv",
    "write_scalogram",
    "read_scalogram",
    "write_pgm",
    "write_ridge_csv",
    "read_ridge_csv",
    "RIDGE_HEADER",
]

WSCG_MAGIC = b"WSCG"
WSCG_VERSION = 1
_WSCG_HEAD = struct.Struct("<4sHIIdd")

RIDGE_HEADER = ("b", "scale", "freq", "amp", "edge_ok", "snr_ok")


def format_float(x: float) -> str:
    """Shortest decimal string that parses back to the same float."""
    return repr(float(x))


def _write_text(path: str | os.PathLike, text: str) -> None:
    # newline="" keeps output byte-identical across platforms
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(text)


def write_psi_csv(path: str | os.PathLike, t: np.ndarray, values: np.ndarray) -> None:
    """Sampled wavelet as ``t,re,im`` rows."""
    out = io.StringIO()
    out.write("t,re,im\n")
    for ti, v in zip(t, values):
        out.write(f"{format_float(ti)},{format_float(v.real)},{format_float(v.imag)}\n")
    _write_text(path, out.getvalue())


def write_signal_csv(
    path: str | os.PathLike, signal: Signal, metadata: Mapping[str, Any] | None = None
) -> None:
    """Write ``#`` metadata lines, a ``t,value`` header and one row per sample."""
    out = io.StringIO()
    for key, value in (metadata or {}).items():
        out.write(f"# {key}: {value}\n")
    out.write(f"# dt: {format_float(signal.dt)}\n")
    out.write(f"# t0: {format_float(signal.t0)}\n")
    out.write("t,value\n")
    for t, v in zip(signal.times, signal.samples):
        out.write(f"{format_float(t)},{format_float(v)}\n")
    _write_text(path, out.getvalue())


def _parse_float(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise FormatError(f"line {lineno}: cannot parse {token!r} as a number") from None


def read_signal_csv(path: str | os.PathLike, dt: float | None = None) -> Signal:
    """Read a signal CSV in either ``t,value`` or single-column form.

    ``# dt:`` and ``# t0:`` comment lines, when present, fix the sampling
    exactly; otherwise it is taken from the time column, or from ``dt`` for
    single-column files.
    """
    meta: dict[str, str] = {}
    rows: list[list[float]] = []
    with open(path, encoding="ascii", newline="") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, sep, value = line[1:].partition(":")
                if sep:
                    meta[key.strip()] = value.strip()
                continue
            fields = [f.strip() for f in line.split(",")]
            if not rows and not _looks_numeric(fields[0]):
                continue  # header
            rows.append([_parse_float(f, lineno) for f in fields])
    if not rows:
        raise FormatError(f"{path}: no data rows")
    width = len(rows[0])
    if width not in (1, 2) or any(len(r) != width for r in rows):
        raise FormatError(f"{path}: expected one or two columns on every row")
    data = np.array(rows)
    values = data[:, -1]
    if dt is None and "dt" in meta:
        dt = _parse_float(meta["dt"], 0)
    t0 = _parse_float(meta["t0"], 0) if "t0" in meta else None
    if width == 2:
        times = data[:, 0]
        if t0 is None:
            t0 = float(times[0])
        if dt is None:
            if times.size < 2:
                raise FormatError(f"{path}: cannot infer dt from one sample")
            dt = float((times[-1] - times[0]) / (times.size - 1))
        expected = t0 + np.arange(times.size) * dt
        if np.max(np.abs(times - expected)) > 1e-9 * max(1.0, np.max(np.abs(times))):
            raise FormatError(f"{path}: time column is not uniformly sampled")
    elif dt is None:
        raise FormatError(f"{path}: single-column signal needs dt")
    return Signal(values, dt, 0.0 if t0 is None else t0)


def _looks_numeric(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def write_scalogram(path: str | os.PathLike, scalogram: Scalogram) -> None:
    n_scales, n_trans = scalogram.coefficients.shape
    with open(path, "wb") as fh:
        fh.write(
            _WSCG_HEAD.pack(
                WSCG_MAGIC, WSCG_VERSION, n_scales, n_trans, scalogram.dt, scalogram.t0
            )
        )
        fh.write(np.asarray(scalogram.scales, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(scalogram.coefficients, dtype="<c16").tobytes())


def read_scalogram(
    path: str | os.PathLike, sigma: float, voices_per_octave: int | None = None
) -> Scalogram:
    """Read a WSCG file.

    The format stores neither the wavelet parameter nor the voice count, so
    ``sigma`` must be supplied; voices are inferred from the scale ratio when
    not given.
    """
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _WSCG_HEAD.size:
        raise FormatError(f"{path}: truncated header")
    magic, version, n_scales, n_trans, dt, t0 = _WSCG_HEAD.unpack_from(blob)
    if magic != WSCG_MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    if version != WSCG_VERSION:
        raise FormatError(f"{path}: unsupported version {version}")
    expected = _WSCG_HEAD.size + 8 * n_scales + 16 * n_scales * n_trans
    if len(blob) != expected:
        raise FormatError(f"{path}: expected {expected} bytes, found {len(blob)}")
    offset = _WSCG_HEAD.size
    scales = np.frombuffer(blob, dtype="<f8", count=n_scales, offset=offset).astype(float)
    offset += 8 * n_scales
    coeffs = np.frombuffer(blob, dtype="<c16", count=n_scales * n_trans, offset=offset)
    coeffs = coeffs.reshape(n_scales, n_trans).astype(complex)
    if voices_per_octave is None:
        if n_scales < 2:
            raise FormatError(f"{path}: cannot infer voices per octave from one scale")
        voices_per_octave = round(1.0 / math.log2(scales[1] / scales[0]))
    grid = ScaleGrid(scales, voices_per_octave, sigma)
    return Scalogram(coeffs, grid, dt, t0)


def write_pgm(path: str | os.PathLike, scalogram: Scalogram) -> None:
    """16-bit binary PGM of the modulus; the largest scale is the bottom row."""
    modulus = scalogram.modulus
    top = modulus.max()
    if top > 0:
        levels = np.rint(modulus / top * 65535.0)
    else:
        levels = np.zeros_like(modulus)
    height, width = modulus.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n65535\n".encode("ascii"))
        fh.write(levels.astype(">u2").tobytes())


def write_ridge_csv(path: str | os.PathLike, ridge: Ridge) -> None:
    out = io.StringIO()
    out.write(",".join(RIDGE_HEADER) + "\n")
    for b, a, f, amp, e, s in zip(
        ridge.times, ridge.refined_scale, ridge.inst_freq, ridge.inst_amp,
        ridge.edge_ok, ridge.snr_ok,
    ):
        out.write(f"{b:.12g},{a:.12g},{f:.12g},{amp:.12g},{int(e)},{int(s)}\n")
    _write_text(path, out.getvalue())


def read_ridge_csv(path: str | os.PathLike) -> dict[str, np.ndarray]:
    """Columns of a ridge CSV keyed by header name."""
    with open(path, encoding="ascii", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != RIDGE_HEADER:
            raise FormatError(f"{path}: unexpected header {header}")
        rows = [[float(x) for x in row] for row in reader]
    data = np.array(rows).reshape(-1, len(RIDGE_HEADER))
    cols = {name: data[:, i] for i, name in enumerate(RIDGE_HEADER)}
    cols["edge_ok"] = cols["edge_ok"].astype(bool)
    cols["snr_ok"] = cols["snr_ok"].astype(bool)
    return cols
