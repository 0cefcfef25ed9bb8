"""Quadrature certification of the wavelet's closed-form identities."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .quadrature import DEFAULT_TOL, MIN_TOL, WAVELET_HALF_WIDTH, integrate
from .wavelet import WaveletShape, psi, psi_hat

__all__ = ["CheckResult", "verify_shape", "run_verification", "format_report"]


@dataclass(frozen=True)
class CheckResult:
    identity: str
    sigma: float
    computed: float
    expected: float
    residual: float
    passed: bool


def _quad(f, tol: float) -> float:
    return integrate(f, -WAVELET_HALF_WIDTH, WAVELET_HALF_WIDTH, tol).value


def _fourier_points(shape: WaveletShape) -> list[float]:
    s = shape.sigma
    return [0.0, 0.5 * s, shape.peak_frequency, 2.0 * s, -s]


def verify_shape(shape: WaveletShape, tol: float = 1e-10) -> list[CheckResult]:
    """Check every closed form of ``shape`` against adaptive quadrature.

    Identities: unit norm, equal split of the norm between real and imaginary
    parts, zero mean, second moment equal to ``env_var``, and ``psi_hat`` at a
    handful of frequencies.
    """
    quad_tol = max(MIN_TOL, min(DEFAULT_TOL, tol / 100.0))
    checks: list[tuple[str, float, float]] = [
        ("unit_norm", _quad(lambda t: np.abs(psi(t, shape)) ** 2, quad_tol), 1.0),
        ("split_norm_real", _quad(lambda t: psi(t, shape).real ** 2, quad_tol), 0.5),
        ("split_norm_imag", _quad(lambda t: psi(t, shape).imag ** 2, quad_tol), 0.5),
    ]
    mean = complex(
        _quad(lambda t: psi(t, shape).real, quad_tol),
        _quad(lambda t: psi(t, shape).imag, quad_tol),
    )
    checks.append(("zero_mean", abs(mean), 0.0))
    checks.append(
        (
            "second_moment",
            _quad(lambda t: t * t * np.abs(psi(t, shape)) ** 2, quad_tol),
            shape.env_var,
        )
    )
    for w in _fourier_points(shape):
        # Re psi is even and Im psi odd, so the transform is real
        value = _quad(
            lambda t, w=w: (psi(t, shape) * np.exp(-1j * w * t)).real, quad_tol
        )
        checks.append((f"fourier(w={w:.6g})", value, psi_hat(w, shape)))
    return [
        CheckResult(name, shape.sigma, got, want, abs(got - want), abs(got - want) < tol)
        for name, got, want in checks
    ]


def run_verification(
    sigmas: Iterable[float], tol: float = 1e-10, *, kappa_factor: float = 1.0
) -> list[CheckResult]:
    """Run :func:`verify_shape` for each sigma.

    ``kappa_factor`` scales the admissibility constant away from its correct
    value; it exists so the failure path can be exercised.
    """
    shapes = [WaveletShape(s) for s in sigmas]
    results: list[CheckResult] = []
    for shape in shapes:
        if kappa_factor != 1.0:
            shape = shape._with_kappa(shape.kappa * kappa_factor)
        results.extend(verify_shape(shape, tol))
    return results


def format_report(results: list[CheckResult], tol: float) -> str:
    lines = [f"{'identity':<22} {'sigma':>8} {'residual':>12}  status (tol {tol:.1e})"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.identity:<22} {r.sigma:>8.4g} {r.residual:>12.3e}  {status}")
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines)
