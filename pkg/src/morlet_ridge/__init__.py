"""Instantaneous frequency and amplitude from an admissible Morlet-type CWT."""
from .cwt import (
    Scalogram,
    ScaleGrid,
    Signal,
    build_scale_grid,
    coi_radius,
    cwt,
    cwt_direct,
    cwt_fft,
)
from .exceptions import (
    DegenerateScalogramError,
    IntegrationError,
    MorletRidgeError,
    NyquistError,
    PassbandError,
    ResolutionError,
    SpanError,
    WaveletDomainError,
    WaveletNumericError,
)
from .quadrature import IntegrationResult, integrate, wavelet_moment
from .ridge import (
    Ridge,
    extract_ridge,
    instantaneous_amplitude,
    instantaneous_frequency,
    refine_scale,
)
from .signals import GeneratorSpec, add_noise, generate
from .wavelet import (
    SIGMA_MIN,
    WaveletShape,
    envelope_variance,
    kappa,
    norm_p,
    norm_q,
    peak_frequency,
    psi,
    psi_hat,
)

__version__ = "0.1.0"
