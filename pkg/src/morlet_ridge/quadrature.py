"""Adaptive Gauss-Kronrod quadrature used to certify the wavelet closed forms.

Deliberately independent of the closed-form code in :mod:`.wavelet`: the only
thing it shares is the pointwise evaluation of ``psi``.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import IntegrationError
from .wavelet import WaveletShape, psi

__all__ = ["IntegrationResult", "integrate", "wavelet_moment", "WAVELET_HALF_WIDTH"]

# |psi|^2 tail beyond |t| = 10 is below exp(-100) * t^k
WAVELET_HALF_WIDTH = 10.0
DEFAULT_TOL = 1e-12
MIN_TOL = 1e-14
MAX_EVALUATIONS = 1_000_000
# a single starting panel can miss a narrow peak between its nodes entirely
INITIAL_PANELS = 16

# 15-point Kronrod nodes on [0, 1] half of [-1, 1]; odd indices are the 7-point Gauss nodes
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_KRONROD = np.concatenate([_WK[:-1], _WK[::-1]])
_GAUSS = np.zeros(15)
_GAUSS[1:7:2] = _WG[:3]
_GAUSS[7] = _WG[3]
_GAUSS[9:14:2] = _WG[2::-1]


@dataclass(frozen=True)
class IntegrationResult:
    value: float
    error_estimate: float
    evaluations: int


def _panel(f: Callable, a: float, b: float) -> tuple[float, float]:
    half = 0.5 * (b - a)
    centre = 0.5 * (a + b)
    y = np.asarray(f(centre + half * _NODES), dtype=float)
    if y.shape != _NODES.shape:
        y = np.broadcast_to(y, _NODES.shape)
    if not np.all(np.isfinite(y)):
        raise IntegrationError(f"integrand is not finite on [{a}, {b}]")
    kronrod = half * math.fsum(_KRONROD * y)
    gauss = half * math.fsum(_GAUSS * y)
    return kronrod, abs(kronrod - gauss)


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    tol: float = DEFAULT_TOL,
    *,
    max_evaluations: int = MAX_EVALUATIONS,
    initial_panels: int = INITIAL_PANELS,
) -> IntegrationResult:
    """Integrate ``f`` over ``[lo, hi]`` to an absolute tolerance.

    The interval starts as ``initial_panels`` equal panels, which are then
    bisected worst-first (7/15-point Gauss-Kronrod pairs) until the summed
    error estimate drops below ``tol``.

    Parameters
    ----------
    f : callable
        Vectorised integrand; called with a 1-D array of abscissae.
    lo, hi : float
        Finite integration limits with ``lo < hi``.
    tol : float, default=1e-12
        Absolute tolerance, at least ``1e-14``.
    max_evaluations : int, default=1_000_000
        Budget of integrand evaluations.
    initial_panels : int, default=16

    Returns
    -------
    IntegrationResult

    Raises
    ------
    IntegrationError
        If the budget is exhausted before the tolerance is met, or the
        integrand produces non-finite values.
    """
    lo, hi = float(lo), float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"need finite lo < hi, got [{lo}, {hi}]")
    if not tol >= MIN_TOL:
        raise ValueError(f"tol must be at least {MIN_TOL}, got {tol}")
    if int(initial_panels) < 1:
        raise ValueError("initial_panels must be a positive integer")

    edges = np.linspace(lo, hi, int(initial_panels) + 1)
    heap = []
    for a, b in zip(edges[:-1], edges[1:]):
        value, err = _panel(f, float(a), float(b))
        heap.append((-err, float(a), float(b), value))
    heapq.heapify(heap)
    evaluations = 15 * len(heap)
    total_err = math.fsum(-item[0] for item in heap)
    while total_err > tol:
        if evaluations + 30 > max_evaluations:
            raise IntegrationError(
                f"no convergence after {evaluations} evaluations "
                f"(error estimate {total_err:.3e} > tol {tol:.3e})"
            )
        _, a, b, _ = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not a < mid < b:
            raise IntegrationError(f"panel [{a}, {b}] cannot be bisected further")
        for lo_, hi_ in ((a, mid), (mid, b)):
            v, e = _panel(f, lo_, hi_)
            heapq.heappush(heap, (-e, lo_, hi_, v))
        evaluations += 30
        total_err = math.fsum(-item[0] for item in heap)
    return IntegrationResult(
        value=math.fsum(item[3] for item in heap),
        error_estimate=total_err,
        evaluations=evaluations,
    )


def wavelet_moment(
    shape: WaveletShape, k: int, tol: float = DEFAULT_TOL
) -> float:
    """Return ``int t**k |psi(t)|**2 dt`` over the truncated support."""
    if not 0 <= k <= 4:
        raise ValueError(f"moment order must be in 0..4, got {k}")

    def integrand(t: np.ndarray) -> np.ndarray:
        return t**k * np.abs(psi(t, shape)) ** 2

    return integrate(integrand, -WAVELET_HALF_WIDTH, WAVELET_HALF_WIDTH, tol).value
