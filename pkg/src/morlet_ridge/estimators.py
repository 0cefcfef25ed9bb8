"""scikit-learn style wrappers around the transform and ridge extraction.

Rows of ``X`` are independent signals sharing one sample spacing; columns are
samples.  ``fit`` only validates parameters and builds the scale grid, so it
can be placed inside a :class:`sklearn.pipeline.Pipeline` like any stateless
transformer.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .cwt import DEFAULT_VOICES, Signal, build_scale_grid, cwt, default_band
from .ridge import extract_ridge
from .wavelet import DEFAULT_SIGMA, WaveletShape

__all__ = ["ScalogramTransformer", "RidgeTransformer"]


class ScalogramTransformer(TransformerMixin, BaseEstimator):
    """Map each signal to the modulus of its continuous wavelet transform.

    Parameters
    ----------
    sigma : float, default=5.0
        Wavelet centre-frequency parameter.
    f_min, f_max : float or None
        Frequency band in cycles per time unit.  ``None`` picks the widest
        band the signal length and sample spacing allow.
    voices_per_octave : int, default=8
    dt : float, default=1.0
        Sample spacing shared by every row of ``X``.
    engine : {"spectral", "direct"}, default="spectral"
    n_jobs : int or None, default=None
        Threads used across scales; results do not depend on it.

    Attributes
    ----------
    shape_ : WaveletShape
    grid_ : ScaleGrid
    n_features_in_ : int
    """

    def __init__(
        self,
        sigma=DEFAULT_SIGMA,
        f_min=None,
        f_max=None,
        voices_per_octave=DEFAULT_VOICES,
        dt=1.0,
        engine="spectral",
        n_jobs=None,
    ):
        self.sigma = sigma
        self.f_min = f_min
        self.f_max = f_max
        self.voices_per_octave = voices_per_octave
        self.dt = dt
        self.engine = engine
        self.n_jobs = n_jobs

    def _validate(self, X, reset: bool) -> np.ndarray:
        X = check_array(X, dtype=np.float64, ensure_min_features=2)
        if reset:
            self.n_features_in_ = X.shape[1]
        elif X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} samples per signal, fitted with {self.n_features_in_}"
            )
        return X

    def fit(self, X, y=None):
        X = self._validate(X, reset=True)
        self.shape_ = WaveletShape(self.sigma)
        probe = Signal(X[0], self.dt)
        f_min, f_max = self.f_min, self.f_max
        if f_min is None or f_max is None:
            lo, hi = default_band(probe, self.shape_, self.voices_per_octave)
            f_min = lo if f_min is None else f_min
            f_max = hi if f_max is None else f_max
        self.grid_ = build_scale_grid(f_min, f_max, self.voices_per_octave, self.shape_)
        return self

    def scalograms(self, X):
        """Full :class:`Scalogram` objects, one per row of ``X``."""
        check_is_fitted(self, "grid_")
        X = self._validate(X, reset=False)
        return [
            cwt(Signal(row, self.dt), self.grid_, self.shape_, engine=self.engine, n_jobs=self.n_jobs)
            for row in X
        ]

    def transform(self, X):
        """Array of shape ``(n_signals, n_scales, n_samples)`` holding ``|W|``."""
        return np.stack([s.modulus for s in self.scalograms(X)])


class RidgeTransformer(ScalogramTransformer):
    """Map each signal to its instantaneous frequency and amplitude.

    Takes every :class:`ScalogramTransformer` parameter plus
    ``continuity_penalty`` (float, default 0.0).  ``transform`` returns an
    array of shape ``(n_signals, 2, n_samples)``: frequency in row 0 and
    amplitude in row 1.  Columns flagged unreliable (inside the cone of
    influence or below the noise floor) are NaN.
    """

    def __init__(
        self,
        sigma=DEFAULT_SIGMA,
        f_min=None,
        f_max=None,
        voices_per_octave=DEFAULT_VOICES,
        dt=1.0,
        engine="spectral",
        n_jobs=None,
        continuity_penalty=0.0,
    ):
        super().__init__(
            sigma=sigma,
            f_min=f_min,
            f_max=f_max,
            voices_per_octave=voices_per_octave,
            dt=dt,
            engine=engine,
            n_jobs=n_jobs,
        )
        self.continuity_penalty = continuity_penalty

    def ridges(self, X):
        return [extract_ridge(s, self.continuity_penalty) for s in self.scalograms(X)]

    def transform(self, X):
        out = []
        for ridge in self.ridges(X):
            rows = np.vstack([ridge.inst_freq, ridge.inst_amp])
            rows[:, ~ridge.valid] = np.nan
            out.append(rows)
        return np.stack(out)
