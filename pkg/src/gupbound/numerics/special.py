"""Error functions and the Whittaker function W_{-3/4,-3/4}.

All functions accept scalars or numpy arrays and return the same shape
(a Python float for scalar input).

Method summary
--------------
erf, |x| < 2
    erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_k 2^k x^(2k+1) / (2k+1)!!
    (all terms positive, no cancellation).
erfc / erfcx, x >= 0.8
    Even contraction of the Legendre continued fraction for the incomplete
    gamma function Gamma(1/2, x^2), evaluated bottom-up at fixed depth:
    erfcx(x) = x/sqrt(pi) / (x^2 + 1/2 - 1*(1/2)/(x^2 + 5/2 - 2*(3/2)/(x^2 + 9/2 - ...))).
    Below 0.8, erfc = 1 - erf loses less than one digit.
erfi, |x| <= 6
    erfi(x) = 2/sqrt(pi) * sum_k x^(2k+1) / (k! (2k+1)) (positive terms).
erfi, |x| > 6
    erfi(x) = 2/sqrt(pi) * exp(x^2) * D(x) with the asymptotic Dawson series
    D(x) ~ 1/(2x) * sum_k (2k-1)!! / (2x^2)^k, truncated at its smallest term.
"""

from __future__ import annotations

import math

import numpy as np

from ..exceptions import DomainError, ErfiOverflow

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)

ERF_SERIES_SWITCH = 2.0
ERFC_CF_SWITCH = 0.8
ERFI_SERIES_SWITCH = 6.0
_CF_DEPTH = 200

#: Largest |x| accepted by :func:`erfi`: x^2 <= ln(DBL_MAX) - 10.
ERFI_MAX_ARG = math.sqrt(math.log(np.finfo(float).max) - 10.0)


def _wrap(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _out(arr, scalar):
    return float(arr) if scalar else arr


def _erf_series(x):
    # x: array with |x| < ERF_SERIES_SWITCH
    x2 = x * x
    term = x.copy()
    total = x.copy()
    k = 0
    while True:
        k += 1
        term = term * (2.0 * x2) / (2 * k + 1)
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)) or k > 200:
            break
    return _TWO_OVER_SQRT_PI * np.exp(-x2) * total


def _erfcx_cf(x):
    # x >= ERFC_CF_SWITCH
    u = x * x
    frac = np.zeros_like(x)
    for j in range(_CF_DEPTH, 0, -1):
        frac = j * (j - 0.5) / (u + 2 * j + 0.5 - frac)
    with np.errstate(invalid="ignore"):
        out = _INV_SQRT_PI * x / (u + 0.5 - frac)
    # x = inf gives inf/inf
    return np.where(np.isinf(x), 0.0, out)


def erf(x):
    """Error function, odd and bounded by 1 in magnitude."""
    arr, scalar = _wrap(x)
    ax = np.abs(arr)
    out = np.empty_like(arr)
    small = ax < ERF_SERIES_SWITCH
    if np.any(small):
        out[small] = _erf_series(ax[small])
    big = ~small
    if np.any(big):
        axb = ax[big]
        out[big] = 1.0 - _erfcx_cf(axb) * np.exp(-axb * axb)
    out = np.copysign(out, arr)
    return _out(out, scalar)


def erfcx(x):
    """Scaled complementary error function exp(x^2) * erfc(x)."""
    arr, scalar = _wrap(x)
    out = np.empty_like(arr)
    ax = np.abs(arr)
    big = ax >= ERFC_CF_SWITCH
    small = ~big
    if np.any(small):
        xs = arr[small]
        out[small] = np.exp(xs * xs) * (1.0 - np.copysign(_erf_series(np.abs(xs)), xs))
    pos = big & (arr > 0)
    if np.any(pos):
        out[pos] = _erfcx_cf(arr[pos])
    neg = big & (arr < 0)
    if np.any(neg):
        xn = -arr[neg]
        with np.errstate(over="ignore"):
            out[neg] = 2.0 * np.exp(xn * xn) - _erfcx_cf(xn)
    return _out(out, scalar)


def erfc(x):
    """Complementary error function 1 - erf(x), accurate in the right tail."""
    arr, scalar = _wrap(x)
    out = np.empty_like(arr)
    pos = arr >= ERFC_CF_SWITCH
    if np.any(pos):
        xp = arr[pos]
        out[pos] = _erfcx_cf(xp) * np.exp(-xp * xp)
    rest = ~pos
    if np.any(rest):
        out[rest] = 1.0 - np.asarray(erf(arr[rest]))
    return _out(out, scalar)


def _erfi_series(ax):
    x2 = ax * ax
    power = ax.copy()  # x^(2k+1)/k!
    total = ax.copy()
    k = 0
    while True:
        k += 1
        power = power * x2 / k
        term = power / (2 * k + 1)
        total = total + term
        if np.all(term <= 1e-17 * total) or k > 400:
            break
    return _TWO_OVER_SQRT_PI * total


def _dawson_asymptotic(ax):
    # D(x) ~ 1/(2x) sum_k (2k-1)!!/(2x^2)^k, stop at the smallest term
    inv = 1.0 / (2.0 * ax * ax)
    term = np.ones_like(ax)
    total = np.ones_like(ax)
    k = 0
    while True:
        k += 1
        nxt = term * (2 * k - 1) * inv
        grow = nxt >= term
        nxt = np.where(grow, 0.0, nxt)
        total = total + nxt
        term = np.where(grow, 0.0, nxt)
        if np.all(term <= 1e-17 * total):
            break
    return total / (2.0 * ax)


def dawson(x):
    """Dawson function D(x) = exp(-x^2) * int_0^x exp(t^2) dt."""
    arr, scalar = _wrap(x)
    ax = np.abs(arr)
    out = np.empty_like(arr)
    small = ax <= ERFI_SERIES_SWITCH
    if np.any(small):
        xs = ax[small]
        out[small] = 0.5 * math.sqrt(math.pi) * _erfi_series(xs) * np.exp(-xs * xs)
    big = ~small
    if np.any(big):
        out[big] = _dawson_asymptotic(ax[big])
    return _out(np.copysign(out, arr), scalar)


def erfi_scaled(x):
    """erfi(x) * exp(-x^2); bounded for all real x, so it never overflows."""
    arr, scalar = _wrap(x)
    return _out(_TWO_OVER_SQRT_PI * np.asarray(dawson(arr)), scalar)


def erfi(x):
    """Imaginary error function erfi(x) = -i erf(ix) = 2/sqrt(pi) int_0^x exp(t^2) dt.

    Raises
    ------
    ErfiOverflow
        If ``|x| > ERFI_MAX_ARG`` (about 26.45), where exp(x^2) would leave
        less than e^10 of headroom below the largest double.
    """
    arr, scalar = _wrap(x)
    ax = np.abs(arr)
    if np.any(ax > ERFI_MAX_ARG) or np.any(~np.isfinite(arr)):
        raise ErfiOverflow(f"erfi argument exceeds |x| <= {ERFI_MAX_ARG:.4f}")
    out = np.empty_like(arr)
    small = ax <= ERFI_SERIES_SWITCH
    if np.any(small):
        out[small] = _erfi_series(ax[small])
    big = ~small
    if np.any(big):
        xb = ax[big]
        out[big] = _TWO_OVER_SQRT_PI * np.exp(xb * xb) * _dawson_asymptotic(xb)
    return _out(np.copysign(out, arr), scalar)


def whittaker_w_neg34(z, tol=None):
    """Whittaker function W_{k,m}(z) at k = m = -3/4, for z > 0.

    Uses the integral representation

        W_{k,m}(z) = e^{-z/2} z^k / Gamma(m-k+1/2)
                     * int_0^inf t^{m-k-1/2} (1 + t/z)^{m+k-1/2} e^{-t} dt,

    which for k = m = -3/4 and t = s^2 becomes

        W(z) = 2/sqrt(pi) * e^{-z/2} z^{-3/4} * int_0^inf e^{-s^2} / (1 + s^2/z)^2 ds.

    The integrand is smooth and bounded, so adaptive quadrature on the
    half-line converges quickly for every z > 0.
    """
    from .quadrature import SemiInfinite, Tolerance, integrate

    arr, scalar = _wrap(z)
    if np.any(~(arr > 0)) or np.any(~np.isfinite(arr)):
        raise DomainError("whittaker_w_neg34 requires finite z > 0")
    tol = tol or Tolerance(abs_tol=1e-300, rel_tol=1e-13, max_iter=400)
    flat = arr.ravel()
    out = np.empty_like(flat)
    for i, zi in enumerate(flat):
        width = math.sqrt(zi)

        def integrand(s, zi=zi):
            r = 1.0 + s * s / zi
            return np.exp(-s * s) / (r * r)

        points = (width,) if width < 1.0 else ()
        val = integrate(integrand, SemiInfinite(0.0, scale=min(width, 1.0)), tol, points=points)
        out[i] = _TWO_OVER_SQRT_PI * math.exp(-0.5 * zi) * zi ** -0.75 * val
    out = out.reshape(arr.shape)
    return _out(out, scalar)
