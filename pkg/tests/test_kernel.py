import math

import mpmath
import numpy as np
import pytest
from scipy.integrate import trapezoid
from hypothesis import given
from hypothesis import strategies as st

from gupbound import kernel
from gupbound.kernel import CurveSample, DeltaPotential, ModelParams

SQRT_PI = math.sqrt(math.pi)


def mp_overlap(x, y, mu, hbar=1.0):
    u = y - x
    f = lambda p: mpmath.exp(-p * p / mu**2) * mpmath.cos(u * mu * mpmath.sqrt(mpmath.pi) / 2 * mpmath.erf(p / mu) / hbar)
    return float(mpmath.quad(f, [-mpmath.inf, 0, mpmath.inf]) / (2 * mpmath.pi * hbar))


@pytest.mark.parametrize("x,y,mu", [(0.0, 0.4, 1.0), (-1.2, 2.5, 3.0), (0.7, 0.7, 5.0), (2.0, -2.0, 0.5)])
def test_overlap_matches_mpmath_integral(x, y, mu):
    params = ModelParams.natural(mu)
    assert kernel.ml_overlap(x, y, params) == pytest.approx(mp_overlap(x, y, mu), abs=1e-13)


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.5, 10))
def test_overlap_quadrature_matches_closed_form(x, y, mu):
    params = ModelParams.natural(mu)
    q = kernel.ml_overlap_quadrature(x, y, params)
    assert abs(q - kernel.ml_overlap(x, y, params)) <= 1e-10
    assert abs(q.imag) <= 1e-12


@given(st.floats(-50, 50), st.floats(-50, 50), st.floats(0.1, 100), st.floats(0.5, 2))
def test_overlap_symmetry_and_envelope(x, y, mu, hbar):
    params = ModelParams(hbar, 1.0, mu)
    v = kernel.ml_overlap(x, y, params)
    assert v == kernel.ml_overlap(y, x, params)
    assert abs(v) <= mu / (2 * SQRT_PI * hbar) * (1 + 1e-15)
    if x != y:
        assert abs(v) <= 1 / (math.pi * abs(y - x)) * (1 + 1e-12)


def test_overlap_diagonal():
    params = ModelParams(0.7, 1.0, 4.0)
    assert kernel.ml_overlap(1.0, 1.0, params) == pytest.approx(4.0 / (2 * SQRT_PI * 0.7), rel=1e-15)


def test_effective_momentum_limits():
    params = ModelParams.natural(3.0)
    assert kernel.effective_momentum(1e-6, params) == pytest.approx(1e-6, rel=1e-12)
    assert kernel.effective_momentum(1e3, params) == pytest.approx(1.5 * SQRT_PI, rel=1e-15)
    # q'(p) = exp(-p^2/mu^2)
    h = 1e-5
    p = 1.3
    slope = (kernel.effective_momentum(p + h, params) - kernel.effective_momentum(p - h, params)) / (2 * h)
    assert slope == pytest.approx(math.exp(-(p / 3.0) ** 2), rel=1e-9)


def test_ml_wavefunction_norm_gives_overlap():
    params = ModelParams.natural(2.0)
    p = np.linspace(-40, 40, 40001)
    psi_x = kernel.ml_wavefunction(0.3, p, params)
    psi_y = kernel.ml_wavefunction(1.1, p, params)
    val = trapezoid(np.conj(psi_y) * psi_x, p)
    assert abs(val - kernel.ml_overlap(0.3, 1.1, params)) < 1e-10


def test_delta_transform_is_constant():
    params = ModelParams(2.0, 1.0, 5.0)
    v = kernel.generalized_fourier(DeltaPotential(1.5), 0.3, -0.8, params)
    assert v == pytest.approx(-1.5 / (2 * math.pi * 2.0))


def test_generalized_fourier_tends_to_ordinary():
    bump = lambda x: np.where(np.abs(x) < 5, (1 - (x / 5) ** 2) ** 4, 0.0)
    params = ModelParams.natural(1e4)
    g = kernel.generalized_fourier(bump, 0.3, -0.2, params, support=5.0)
    o = kernel.ordinary_fourier(bump, 0.3, -0.2, params, support=5.0)
    assert abs(g - o) < 1e-8


def test_generalized_fourier_of_gaussian_in_closed_form():
    # a Gaussian potential transforms to a Gaussian in q(p) - q(p')
    params = ModelParams.natural(2.0)
    V = lambda x: np.exp(-x * x)
    p, pp = 1.4, -0.3
    k = float(kernel.effective_momentum(p, params) - kernel.effective_momentum(pp, params))
    expected = SQRT_PI * math.exp(-k * k / 4) / (2 * math.pi)
    assert abs(kernel.generalized_fourier(V, p, pp, params) - expected) < 1e-11


@pytest.mark.parametrize("mu,hbar,m", [(0.5, 1.0, 1.0), (1.0, 1.3, 0.7), (7.0, 2.0, 3.0)])
def test_kinetic_expectation(mu, hbar, m):
    params = ModelParams(hbar, m, mu)
    ref = float(mpmath.quad(lambda p: p**2 * mpmath.exp(-p**2 / mu**2), [-mpmath.inf, mpmath.inf])) / (4 * math.pi * m * hbar)
    assert kernel.kinetic_expectation(params) == pytest.approx(ref, rel=1e-10)
    assert kernel.kinetic_expectation_closed_form(params) == pytest.approx(ref, rel=1e-14)


def test_quoted_kinetic_value_scales_differently():
    # the commonly quoted form grows as mu^(3/2), the integral as mu^3
    r1 = kernel.kinetic_expectation_printed(ModelParams.natural(1.0)) / kernel.kinetic_expectation_closed_form(ModelParams.natural(1.0))
    r4 = kernel.kinetic_expectation_printed(ModelParams.natural(4.0)) / kernel.kinetic_expectation_closed_form(ModelParams.natural(4.0))
    assert r1 == pytest.approx(0.5)
    assert r4 == pytest.approx(0.5 / 8)


def test_completeness_window_converges():
    params = ModelParams.natural(3.0)
    g = lambda p: np.exp(-((p - 0.3) ** 2))
    errs = [abs(kernel.completeness_window(0.2, g, L, params) - g(0.2)) for L in (2.0, 8.0, 32.0)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-6


def test_minimal_length():
    assert kernel.minimal_length(ModelParams(2.0, 1.0, 8.0)) == 0.25


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_model_params_validation(bad):
    with pytest.raises(ValueError, match="mu"):
        ModelParams(1.0, 1.0, bad)


def test_curve_sample_rejects_nonfinite():
    with pytest.raises(ValueError):
        CurveSample(0.0, math.nan)
    CurveSample(1.0, 2.0 + 1j)
