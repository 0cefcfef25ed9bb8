"""Deterministic test signals: tones, chirps, AM tones and RDF-like oscillations."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Literal

import numpy as np

from .cwt import Signal
from .exceptions import NyquistError, WaveletDomainError

__all__ = ["GeneratorSpec", "generate", "add_noise", "NOISE_ALGORITHM"]

Kind = Literal["sinusoid", "linear_chirp", "am_tone", "rdf_like"]
KINDS = ("sinusoid", "linear_chirp", "am_tone", "rdf_like")

# recorded next to every seed so a noisy file can be regenerated
NOISE_ALGORITHM = f"numpy-{np.__version__} Generator(PCG64(seed)).standard_normal"


@dataclass(frozen=True)
class GeneratorSpec:
    """Everything needed to reproduce a generated signal bit for bit.

    Only the fields relevant to ``kind`` are read:

    * ``sinusoid``: ``amplitude * cos(2 pi frequency t + phase)``
    * ``linear_chirp``: ``amplitude * cos(2 pi (f0 t + chirp_rate t**2 / 2) + phase)``
    * ``am_tone``: ``amplitude * exp(-(t - t_center)**2 / (2 width**2)) * cos(2 pi frequency t + phase)``
    * ``rdf_like``: sum over ``shells`` of ``A exp(-r / decay) cos(2 pi r / (period (1 + drift r)))``;
      when ``shells`` is empty a single shell is built from ``amplitude``,
      ``decay``, ``period`` and ``drift``.
    """

    kind: Kind
    n: int
    dt: float
    t0: float = 0.0
    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0
    f0: float = 1.0
    chirp_rate: float = 0.0
    t_center: float = 0.0
    width: float = 1.0
    decay: float = math.inf
    period: float = 1.0
    drift: float = 0.0
    shells: tuple[tuple[float, float, float, float], ...] = ()
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise WaveletDomainError(f"unknown generator kind {self.kind!r}")
        if int(self.n) != self.n or self.n < 2:
            raise WaveletDomainError("n must be an integer of at least 2")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise WaveletDomainError("dt must be positive")
        if not 0 <= int(self.seed) < 2**64:
            raise WaveletDomainError("seed must fit in an unsigned 64-bit integer")
        if not self.noise >= 0:
            raise WaveletDomainError("noise level must be non-negative")
        object.__setattr__(self, "shells", tuple(tuple(map(float, s)) for s in self.shells))
        for _, decay, period, _ in self.rdf_shells:
            if not (decay > 0 and period > 0):
                raise WaveletDomainError("rdf shells need positive decay and period")

    @property
    def rdf_shells(self) -> tuple[tuple[float, float, float, float], ...]:
        if self.shells:
            return self.shells
        return ((self.amplitude, self.decay, self.period, self.drift),)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.n) * self.dt

    def max_frequency(self) -> float:
        """Largest local frequency the generator produces over its time range."""
        t_lo, t_hi = self.t0, self.t0 + (self.n - 1) * self.dt
        if self.kind in ("sinusoid", "am_tone"):
            return abs(self.frequency)
        if self.kind == "linear_chirp":
            return max(abs(self.f0 + self.chirp_rate * t) for t in (t_lo, t_hi))
        worst = 0.0
        for _, _, period, drift in self.rdf_shells:
            stretch = [1.0 + drift * r for r in (t_lo, t_hi)]
            if min(stretch) <= 0:
                raise WaveletDomainError("rdf period drift makes the period non-positive")
            # phase r / (period (1 + drift r)) has derivative 1 / (period (1 + drift r)**2)
            worst = max(worst, max(1.0 / (period * s * s) for s in stretch))
        return worst

    def to_metadata(self) -> dict:
        meta = asdict(self)
        meta["noise_algorithm"] = NOISE_ALGORITHM
        return meta


def generate(spec: GeneratorSpec) -> Signal:
    """Evaluate the generator at ``t0 + i * dt``; adds noise if ``spec.noise > 0``.

    Raises
    ------
    NyquistError
        If any local frequency reaches ``1 / (2 dt)``.
    """
    nyquist = 0.5 / spec.dt
    f_top = spec.max_frequency()
    if not f_top < nyquist:
        raise NyquistError(
            f"{spec.kind} reaches {f_top!r} cycles per unit, Nyquist is {nyquist!r}"
        )
    t = spec.times
    two_pi = 2.0 * np.pi
    if spec.kind == "sinusoid":
        values = spec.amplitude * np.cos(two_pi * spec.frequency * t + spec.phase)
    elif spec.kind == "linear_chirp":
        values = spec.amplitude * np.cos(
            two_pi * (spec.f0 * t + 0.5 * spec.chirp_rate * t * t) + spec.phase
        )
    elif spec.kind == "am_tone":
        envelope = np.exp(-((t - spec.t_center) ** 2) / (2.0 * spec.width**2))
        values = spec.amplitude * envelope * np.cos(two_pi * spec.frequency * t + spec.phase)
    else:
        values = np.zeros_like(t)
        for amp, decay, period, drift in spec.rdf_shells:
            local_period = period * (1.0 + drift * t)
            values = values + amp * np.exp(-t / decay) * np.cos(two_pi * t / local_period)
    signal = Signal(values, spec.dt, spec.t0)
    if spec.noise > 0:
        signal = add_noise(signal, spec.noise, spec.seed)
    return signal


def add_noise(signal: Signal, level: float, seed: int) -> Signal:
    """Add white Gaussian noise of standard deviation ``level``.

    Draws come from ``numpy.random.Generator(PCG64(seed)).standard_normal`` so
    equal seeds give equal noise within one numpy version.
    """
    if not level >= 0:
        raise WaveletDomainError("noise level must be non-negative")
    if level == 0:
        return Signal(signal.samples, signal.dt, signal.t0)
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    noise = level * rng.standard_normal(len(signal))
    return Signal(signal.samples + noise, signal.dt, signal.t0)
