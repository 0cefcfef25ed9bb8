import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sp_integrate
from scipy.optimize import brentq

from morlet_ridge import (
    WaveletDomainError,
    WaveletShape,
    envelope_variance,
    kappa,
    norm_p,
    norm_q,
    peak_frequency,
    psi,
    psi_hat,
)

PI_QUARTER = math.pi ** -0.25

# mpmath (30 digits): kappa from the zero-mean root, p and q from the split
# norm integrals, env_var from int t^2 |psi|^2, all by quadrature
ORACLE = {
    0.5: dict(kappa=0.8824969025845954, p=5.2737027013087156, q=1.5970581862023541,
              env_var=1.2496045692600369),
    1.0: dict(kappa=0.60653065971263342, p=1.6230469077833595, q=0.94474058843200772,
              env_var=1.0349209325304788),
    2.0: dict(kappa=0.13533528323661269, p=0.81194523047410566, q=0.75810017274862455,
              env_var=0.61086339886437024),
    3.0: dict(kappa=0.011108996538242306, p=0.75275071453086418, q=0.75117189688338723,
              env_var=0.50528944609158222),
}
PSI_0_SIGMA_2 = 0.7020603927352758


def _quad(f):
    return sp_integrate.quad(f, -12, 12, limit=400, epsabs=1e-13, epsrel=1e-13)[0]


@pytest.mark.parametrize("sigma", sorted(ORACLE))
@pytest.mark.parametrize("name, func", [
    ("kappa", kappa), ("p", norm_p), ("q", norm_q), ("env_var", envelope_variance),
])
def test_constants_match_quadrature_oracle(sigma, name, func):
    assert func(sigma) == pytest.approx(ORACLE[sigma][name], rel=1e-13)


@pytest.mark.parametrize("sigma", [1.0, 2.0])
def test_kappa_is_zero_mean_root(sigma):
    # live oracle: solve int e^{-t^2/2}(cos(sigma t) - k) dt = 0 for k with scipy
    def mean(k):
        return _quad(lambda t: math.exp(-t * t / 2) * (math.cos(sigma * t) - k))

    root = brentq(mean, 0.0, 1.0, xtol=1e-15)
    assert kappa(sigma) == pytest.approx(root, abs=1e-12)
    assert kappa(sigma) == pytest.approx(math.exp(-sigma**2 / 2), rel=1e-15)


def test_kappa_limits():
    assert kappa(10.0) < 1e-20
    assert 0 < kappa(0.25) < 1


def test_spec_constants():
    assert kappa(2.0) == pytest.approx(0.1353353, abs=1e-7)
    assert kappa(1.0) == pytest.approx(0.6065307, abs=1e-7)
    assert norm_p(2.0) == pytest.approx(0.811945, abs=1e-6)
    assert norm_q(2.0) == pytest.approx(0.758100, abs=1e-6)
    assert norm_q(1.0) == pytest.approx(0.944740, abs=1e-6)
    assert envelope_variance(2.0) == pytest.approx(0.610864, abs=1e-6)


@pytest.mark.parametrize("func", [norm_p, norm_q])
def test_normalisation_large_sigma_limit(func):
    assert abs(func(10.0) - PI_QUARTER) < 1e-12


def test_p_precision_at_sigma_min():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    s = mpmath.mpf("0.25")
    exact = mpmath.pi ** -0.25 * (1 + 3 * mpmath.e ** (-s**2) - 4 * mpmath.e ** (-3 * s**2 / 4)) ** -0.5
    assert norm_p(0.25) == pytest.approx(float(exact), rel=1e-10)
    # the naive expression loses digits here
    naive = PI_QUARTER / math.sqrt(1 + 3 * math.exp(-0.0625) - 4 * math.exp(-0.75 * 0.0625))
    assert abs(naive / float(exact) - 1) > abs(norm_p(0.25) / float(exact) - 1)


@pytest.mark.parametrize("func", [kappa, norm_p, norm_q, envelope_variance, WaveletShape])
@pytest.mark.parametrize("bad", [0.1, 0.0, -1.0, float("nan")])
def test_domain_errors(func, bad):
    with pytest.raises(WaveletDomainError):
        func(bad)


def test_shape_fields_match_functions():
    shape = WaveletShape(2.0)
    assert shape.kappa == kappa(2.0)
    assert shape.p == norm_p(2.0)
    assert shape.q == norm_q(2.0)
    assert shape.env_var == envelope_variance(2.0)
    with pytest.raises(AttributeError):
        shape.sigma = 3.0


def test_psi_values():
    value = psi(0.0, 2.0)
    assert value.real == pytest.approx(PSI_0_SIGMA_2, rel=1e-14)
    assert value.imag == 0.0
    for sigma in (0.5, 2.0, 10.0):
        assert abs(psi(10.0, sigma)) < 1e-20


@settings(max_examples=50, deadline=None)
@given(sigma=st.floats(0.25, 12.0))
def test_psi_hermitian(sigma):
    t = np.random.default_rng(7).uniform(-8, 8, 1000)
    np.testing.assert_allclose(psi(-t, sigma), np.conj(psi(t, sigma)), rtol=0, atol=1e-15)


def test_morlet_limit_up_to_admissibility_term():
    t = np.arange(-6 * 128, 6 * 128 + 1) / 128
    shape = WaveletShape(6.0)
    morlet = PI_QUARTER * np.exp(-t * t / 2) * np.exp(6j * t)
    correction = shape.p * shape.kappa * np.exp(-t * t / 2)
    assert np.max(np.abs(psi(t, shape) + correction - morlet)) < 1e-10
    # the zero-mean term itself is p * exp(-18) at t = 0, about 1.1e-8
    gap = np.max(np.abs(psi(t, shape) - morlet))
    assert gap == pytest.approx(PI_QUARTER * math.exp(-18.0), rel=1e-3)


@pytest.mark.parametrize("sigma", [0.5, 1, 2, 3, 5, 8])
def test_norms_and_moments_by_scipy_quad(sigma):
    shape = WaveletShape(sigma)
    assert _quad(lambda t: abs(psi(t, shape)) ** 2) == pytest.approx(1.0, abs=1e-10)
    assert _quad(lambda t: psi(t, shape).real ** 2) == pytest.approx(0.5, abs=1e-10)
    assert _quad(lambda t: psi(t, shape).imag ** 2) == pytest.approx(0.5, abs=1e-10)
    assert abs(_quad(lambda t: psi(t, shape).real)) < 1e-12
    second = _quad(lambda t: t * t * abs(psi(t, shape)) ** 2)
    assert second == pytest.approx(shape.env_var, abs=1e-10)


def test_envelope_variance_limit():
    assert abs(envelope_variance(8.0) - 0.5) < 1e-6


@pytest.mark.parametrize("sigma", [0.25, 0.5, 1, 2, 5, 8])
def test_psi_hat_admissible(sigma):
    assert abs(psi_hat(0.0, sigma)) < 1e-14


def _dft(shape, omegas, dt=1e-3):
    t = np.arange(-12000, 12001) * dt
    values = psi(t, shape)
    return np.array([np.sum(values * np.exp(-1j * w * t)) * dt for w in omegas])


@pytest.mark.parametrize("sigma", [1.0, 2.0, 6.0])
def test_psi_hat_matches_sampled_transform(sigma):
    shape = WaveletShape(sigma)
    omegas = np.linspace(-3 * sigma, 3 * sigma, 100)
    reference = _dft(shape, omegas)
    assert np.max(np.abs(reference.imag)) < 1e-8
    np.testing.assert_allclose(psi_hat(omegas, shape), reference.real, rtol=0, atol=1e-8)


def test_psi_hat_examples():
    assert psi_hat(6.0, 6.0) == pytest.approx(math.sqrt(2 * math.pi) * PI_QUARTER, abs=1e-9)
    shape = WaveletShape(2.0)
    mirror = psi_hat(-2.0, shape)
    assert 0 < mirror < 0.5 * math.sqrt(2 * math.pi) * (shape.p - shape.q) + 1e-3
    assert mirror == pytest.approx(_dft(shape, [-2.0])[0].real, abs=1e-8)


def test_peak_frequency_examples():
    assert peak_frequency(10.0) == pytest.approx(10.0, abs=1e-9)
    for sigma in (6.0, 7.5, 9.0):
        assert abs(peak_frequency(sigma) - sigma) < 1e-6
    # grid-search oracle, step 1e-5
    for sigma, lo, hi in ((2.0, 2.0, 2.2), (1.0, 1.0, 1.6)):
        w = np.arange(1.0, 4.0, 1e-5)
        best = w[np.argmax(psi_hat(w, sigma))]
        got = peak_frequency(sigma)
        assert lo < got < hi
        assert got == pytest.approx(best, abs=1e-5)


def test_peak_frequency_small_sigma():
    # the peak leaves [sigma/2, 2 sigma] for small sigma
    w = np.arange(0.1, 3.0, 1e-5)
    best = w[np.argmax(psi_hat(w, 0.5))]
    assert peak_frequency(0.5) == pytest.approx(best, abs=1e-5)
    assert peak_frequency(0.5) > 1.0


def test_perturbed_kappa_copy_is_independent():
    shape = WaveletShape(2.0)
    bent = shape._with_kappa(shape.kappa * 1.001)
    assert bent.kappa != shape.kappa
    assert shape.kappa == kappa(2.0)
    assert abs(psi_hat(0.0, bent)) > 1e-5
