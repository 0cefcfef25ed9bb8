"""Admissible Morlet-type mother wavelet with closed-form constants.

The wavelet is

    psi(t; sigma) = exp(-t**2 / 2) * (p * (cos(sigma t) - kappa) + 1j * q * sin(sigma t))

with ``kappa = exp(-sigma**2 / 2)`` chosen so that the wavelet has zero mean,
and ``p``, ``q`` chosen so that the real and imaginary parts each carry half
of the unit L2 norm.  The Fourier convention throughout the package is
``psi_hat(w) = int psi(t) exp(-1j w t) dt``.
"""
from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import brentq

from .exceptions import WaveletDomainError, WaveletNumericError

__all__ = [
    "SIGMA_MIN",
    "DEFAULT_SIGMA",
    "WaveletShape",
    "kappa",
    "norm_p",
    "norm_q",
    "envelope_variance",
    "psi",
    "psi_hat",
    "peak_frequency",
]

SIGMA_MIN = 0.25
DEFAULT_SIGMA = 5.0

_PI_QUARTER = math.pi ** -0.25
_SQRT_PI = math.sqrt(math.pi)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# below this value of sigma**2 the exponential sums are evaluated by series
_SERIES_CUTOFF = 1.0


def _check_sigma(sigma: float, sigma_min: float = SIGMA_MIN) -> float:
    sigma = float(sigma)
    if not math.isfinite(sigma) or sigma < sigma_min:
        raise WaveletDomainError(
            f"sigma={sigma!r} is below the supported minimum {sigma_min}"
        )
    return sigma


def _series(coeff, x: float) -> float:
    """Sum ``coeff(n) * x**n`` for n >= 1 until the terms stop mattering."""
    terms = []
    n = 1
    while True:
        term = coeff(n) * x**n
        terms.append(term)
        if n > 4 and abs(term) < 1e-18 * abs(math.fsum(terms)):
            break
        n += 1
        if n > 200:
            raise WaveletNumericError(f"series in x={x} failed to converge")
    return math.fsum(terms)


def _p_radicand(x: float) -> float:
    # 1 + 3 e^{-x} - 4 e^{-3x/4}; first two orders cancel exactly
    if x < _SERIES_CUTOFF:
        return _series(
            lambda n: (3.0 - 4.0 * 0.75**n) * (-1.0) ** n / math.factorial(n), x
        )
    return math.fsum([1.0, 3.0 * math.exp(-x), -4.0 * math.exp(-0.75 * x)])


def _p_bracket(x: float) -> float:
    # 1 + (3 - 2x) e^{-x} - 2 (2 - x) e^{-3x/4}
    if x < _SERIES_CUTOFF:

        def coeff(n: int) -> float:
            f0, f1 = math.factorial(n), math.factorial(n - 1)
            return (
                3.0 * (-1.0) ** n / f0
                + 2.0 * (-1.0) ** n / f1
                - 4.0 * (-0.75) ** n / f0
                + 2.0 * (-0.75) ** (n - 1) / f1
            )

        return _series(coeff, x)
    return math.fsum(
        [1.0, (3.0 - 2.0 * x) * math.exp(-x), -2.0 * (2.0 - x) * math.exp(-0.75 * x)]
    )


def _q_bracket(x: float) -> float:
    # 1 + (2x - 1) e^{-x}
    if x < _SERIES_CUTOFF:

        def coeff(n: int) -> float:
            return 2.0 * (-1.0) ** (n - 1) / math.factorial(n - 1) - (-1.0) ** n / math.factorial(n)

        return _series(coeff, x)
    return math.fsum([1.0, (2.0 * x - 1.0) * math.exp(-x)])


def kappa(sigma: float) -> float:
    """Admissibility correction that makes the wavelet integrate to zero."""
    sigma = _check_sigma(sigma)
    return math.exp(-0.5 * sigma * sigma)


def _p(sigma: float) -> float:
    radicand = _p_radicand(sigma * sigma)
    if not radicand > 0.0:
        raise WaveletNumericError(f"p radicand underflowed at sigma={sigma}")
    return _PI_QUARTER / math.sqrt(radicand)


def _q(sigma: float) -> float:
    return _PI_QUARTER / math.sqrt(-math.expm1(-sigma * sigma))


def _env_var(sigma: float, p: float, q: float) -> float:
    x = sigma * sigma
    return 0.25 * _SQRT_PI * (q * q * _q_bracket(x) + p * p * _p_bracket(x))


def norm_p(sigma: float) -> float:
    """Normalisation of the real part, so that ``int (Re psi)**2 dt = 1/2``."""
    return _p(_check_sigma(sigma))


def norm_q(sigma: float) -> float:
    """Normalisation of the imaginary part, so that ``int (Im psi)**2 dt = 1/2``."""
    return _q(_check_sigma(sigma))


def envelope_variance(sigma: float) -> float:
    """Second moment ``int t**2 |psi(t)|**2 dt`` of the unit-norm wavelet.

    This is the variance of the Gaussian approximation to the wavelet
    envelope; it tends to 1/2 as ``sigma`` grows.
    """
    sigma = _check_sigma(sigma)
    return _env_var(sigma, _p(sigma), _q(sigma))


@dataclass(frozen=True)
class WaveletShape:
    """One member of the wavelet family, with its constants precomputed.

    Parameters
    ----------
    sigma : float
        Centre-frequency parameter.  Must be at least ``sigma_min``.
    sigma_min : float, default=SIGMA_MIN
        Lower bound enforced on ``sigma``.
    """

    sigma: float
    sigma_min: float = field(default=SIGMA_MIN, repr=False, compare=False)
    kappa: float = field(init=False)
    p: float = field(init=False)
    q: float = field(init=False)
    env_var: float = field(init=False)

    def __post_init__(self) -> None:
        sigma = _check_sigma(self.sigma, self.sigma_min)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "kappa", math.exp(-0.5 * sigma * sigma))
        object.__setattr__(self, "p", _p(sigma))
        object.__setattr__(self, "q", _q(sigma))
        object.__setattr__(self, "env_var", _env_var(sigma, self.p, self.q))

    @cached_property
    def peak_frequency(self) -> float:
        """Angular frequency at which ``psi_hat`` peaks."""
        return peak_frequency(self)

    def _with_kappa(self, value: float) -> "WaveletShape":
        """Copy with an overridden ``kappa``; only used to exercise failure paths."""
        out = copy.copy(self)
        out.__dict__.pop("peak_frequency", None)
        object.__setattr__(out, "kappa", float(value))
        return out


def _as_shape(shape: WaveletShape | float) -> WaveletShape:
    return shape if isinstance(shape, WaveletShape) else WaveletShape(shape)


def psi(t: ArrayLike, shape: WaveletShape | float) -> np.ndarray | complex:
    """Evaluate the mother wavelet at ``t`` (scalar or array)."""
    shape = _as_shape(shape)
    t_arr = np.asarray(t, dtype=float)
    envelope = np.exp(-0.5 * t_arr * t_arr)
    st = shape.sigma * t_arr
    out = envelope * (shape.p * (np.cos(st) - shape.kappa) + 1j * shape.q * np.sin(st))
    return complex(out) if out.ndim == 0 else out


def psi_hat(omega: ArrayLike, shape: WaveletShape | float) -> np.ndarray | float:
    """Analytic Fourier transform of the mother wavelet; real valued."""
    shape = _as_shape(shape)
    w = np.asarray(omega, dtype=float)
    s, p, q = shape.sigma, shape.p, shape.q
    out = 0.5 * _SQRT_2PI * (
        (p + q) * np.exp(-0.5 * (w - s) ** 2) + (p - q) * np.exp(-0.5 * (w + s) ** 2)
    ) - _SQRT_2PI * p * shape.kappa * np.exp(-0.5 * w * w)
    return float(out) if out.ndim == 0 else out


def _psi_hat_slope(w: float, shape: WaveletShape) -> float:
    s, p, q = shape.sigma, shape.p, shape.q
    return 0.5 * _SQRT_2PI * (
        -(p + q) * (w - s) * math.exp(-0.5 * (w - s) ** 2)
        - (p - q) * (w + s) * math.exp(-0.5 * (w + s) ** 2)
    ) + _SQRT_2PI * p * shape.kappa * w * math.exp(-0.5 * w * w)


def peak_frequency(shape: WaveletShape | float) -> float:
    """Locate the positive-frequency maximum of ``psi_hat``.

    The search interval is ``[sigma / 2, max(2 sigma, 3)]``; for small sigma
    the peak moves towards the Mexican-hat value ``sqrt(2)``, outside
    ``2 sigma``.
    """
    shape = _as_shape(shape)
    lo = 0.5 * shape.sigma
    hi = max(2.0 * shape.sigma, 3.0)
    f_lo, f_hi = _psi_hat_slope(lo, shape), _psi_hat_slope(hi, shape)
    if not (f_lo > 0.0 and f_hi < 0.0):
        raise WaveletNumericError(
            f"no bracket for the spectral peak at sigma={shape.sigma}"
        )
    return brentq(_psi_hat_slope, lo, hi, args=(shape,), xtol=1e-15, rtol=1e-12, maxiter=200)
