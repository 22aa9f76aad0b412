import math

import mpmath
import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given
from hypothesis import strategies as st

from gupbound.exceptions import DomainError, ErfiOverflow
from gupbound.numerics import (
    ERFI_MAX_ARG,
    dawson,
    erf,
    erfc,
    erfcx,
    erfi,
    erfi_scaled,
    whittaker_w_neg34,
)

finite = st.floats(-30, 30, allow_nan=False)


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.parametrize("x", [1e-8, 0.1, 0.5, 0.8, 1.0, 1.7, 2.0, 2.5, 4.0, 6.0])
def test_erf_matches_mpmath(x):
    assert rel(erf(x), float(mpmath.erf(x))) <= 1e-14


@pytest.mark.parametrize("x", [6.5, 8.0, 30.0])
def test_erf_saturates(x):
    assert abs(erf(x) - float(mpmath.erf(x))) <= 1e-15
    assert erf(x) <= 1.0


@pytest.mark.parametrize("x", [0.0, 0.3, 0.79, 0.81, 1.2, 2.0, 5.0, 12.0, 100.0, 1e6])
def test_erfcx_matches_mpmath(x):
    ref = float(mpmath.exp(mpmath.mpf(x) ** 2) * mpmath.erfc(x))
    assert rel(erfcx(x), ref) <= 5e-15


def test_erfcx_large_argument_asymptote():
    x = 1e8
    assert rel(erfcx(x), 1.0 / (x * math.sqrt(math.pi))) <= 1e-15


@pytest.mark.parametrize("x", [-3.0, -0.5, 0.0, 0.5, 3.0, 10.0, 26.0])
def test_erfc_matches_scipy(x):
    assert rel(erfc(x), sc.erfc(x)) <= 1e-13


@pytest.mark.parametrize("x", [1e-6, 0.2, 1.0, 3.0, 5.9, 6.1, 10.0, 20.0, 26.0])
def test_erfi_matches_mpmath(x):
    assert rel(erfi(x), float(mpmath.erfi(x))) <= 1e-13


@pytest.mark.parametrize("x", [0.1, 1.0, 1.5, 5.0, 6.5, 50.0, 1e4])
def test_dawson_matches_scipy(x):
    assert rel(dawson(x), sc.dawsn(x)) <= 1e-13
    assert rel(erfi_scaled(x), 2 / math.sqrt(math.pi) * sc.dawsn(x)) <= 1e-13


def test_erf_of_zero_and_infinity():
    assert erf(0.0) == 0.0
    assert erf(math.inf) == 1.0
    assert erfcx(math.inf) == 0.0


@given(st.lists(finite, min_size=1, max_size=50))
def test_erf_is_odd_and_bounded(xs):
    x = np.array(xs)
    assert np.all(erf(-x) == -erf(x))
    assert np.all(np.abs(erf(x)) <= 1.0)


@given(st.floats(-ERFI_MAX_ARG, ERFI_MAX_ARG, allow_nan=False))
def test_erfi_is_odd(x):
    assert erfi(-x) == -erfi(x)


def test_erfi_overflow_is_reported():
    with pytest.raises(ErfiOverflow):
        erfi(ERFI_MAX_ARG + 0.1)
    assert math.isfinite(erfi(ERFI_MAX_ARG))


def test_vectorized_matches_scalar():
    x = np.linspace(-5, 5, 101)
    assert np.array_equal(erf(x), np.array([erf(v) for v in x]))
    assert isinstance(erf(0.3), float)


def _whittaker_closed_form(z):
    # int_0^inf e^{-s^2}/(s^2+b^2)^2 ds in terms of erfcx, b^2 = z
    u = z
    inner = (math.pi / 2) * (1 / (math.sqrt(math.pi) * u) - sc.erfcx(math.sqrt(u)) * (u**-0.5 - 0.5 * u**-1.5))
    return 2 / math.sqrt(math.pi) * math.exp(-z / 2) * z**-0.75 * z**2 * inner


@pytest.mark.parametrize("z", [1e-4, 0.01, 0.3, 1.0, 4.0, 25.0, 200.0])
def test_whittaker_matches_mpmath(z):
    ref = float(mpmath.whitw(-0.75, -0.75, z))
    assert rel(whittaker_w_neg34(z), ref) <= 1e-12


@pytest.mark.parametrize("z", [0.05, 0.5, 2.0, 9.0])
def test_whittaker_matches_erfcx_closed_form(z):
    assert rel(whittaker_w_neg34(z), _whittaker_closed_form(z)) <= 1e-11


def test_whittaker_domain():
    with pytest.raises(DomainError):
        whittaker_w_neg34(0.0)
    with pytest.raises(DomainError):
        whittaker_w_neg34(-1.0)
