"""Deformed kinematics with a minimal length.

The position operator is realized in momentum space as
X = i hbar exp(p^2/2mu^2) d/dp exp(p^2/2mu^2), which gives
[X, P] = i hbar exp(P^2/mu^2) and a minimal position uncertainty hbar/mu.
Maximally localized states |x^ML> replace position eigenstates; this module
provides their momentum-space wavefunction, their (non-zero) overlaps, the
deformed Fourier transform of a potential, and a couple of consistency
integrals.

Notation: ``q(p) = (mu sqrt(pi) / 2) erf(p/mu)`` is the bounded "effective
momentum" that plays the role of p in every plane-wave phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .numerics import DEFAULT_TOL, Finite, FullLine, Tolerance, erf, integrate

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class ModelParams:
    """Physical constants hbar, m and the deformation scale mu (all > 0)."""

    hbar: float = 1.0
    mass: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "mu"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a finite positive number, got {value!r}")

    @classmethod
    def natural(cls, mu: float) -> "ModelParams":
        """hbar = m = 1."""
        return cls(1.0, 1.0, float(mu))

    def deformation_weight(self, p, p_prime=0.0):
        """exp(-(p^2 + p'^2) / 2 mu^2)."""
        p = np.asarray(p, dtype=float)
        p_prime = np.asarray(p_prime, dtype=float)
        return np.exp(-(p * p + p_prime * p_prime) / (2.0 * self.mu**2))


@dataclass(frozen=True)
class CurveSample:
    abscissa: float
    value: Union[float, complex]

    def __post_init__(self):
        if not (math.isfinite(self.abscissa) and np.isfinite(self.value)):
            raise ValueError("CurveSample entries must be finite")


@dataclass(frozen=True)
class DeltaPotential:
    """V(x) = -kappa * delta(x); transformed analytically, never by quadrature."""

    kappa: float


def minimal_length(params: ModelParams) -> float:
    return params.hbar / params.mu


def effective_momentum(p, params: ModelParams):
    """q(p) = (mu sqrt(pi)/2) erf(p/mu); tends to p as mu -> inf."""
    return 0.5 * params.mu * SQRT_PI * np.asarray(erf(np.asarray(p, dtype=float) / params.mu))


def ml_wavefunction(x, p, params: ModelParams):
    """<x^ML|p> = exp(-i x q(p)/hbar - p^2/2mu^2) / sqrt(2 pi hbar)."""
    norm = 1.0 / math.sqrt(2.0 * math.pi * params.hbar)
    q = effective_momentum(p, params)
    p = np.asarray(p, dtype=float)
    out = norm * np.exp(-1j * np.asarray(x) * q / params.hbar - p * p / (2.0 * params.mu**2))
    return complex(out) if np.ndim(out) == 0 else out


def ml_overlap(x, y, params: ModelParams):
    """<y^ML|x^ML> = sin(mu sqrt(pi) (y-x) / 2 hbar) / (pi (y-x)).

    On the diagonal this is mu / (2 sqrt(pi) hbar) rather than a delta function.
    """
    u = np.asarray(y, dtype=float) - np.asarray(x, dtype=float)
    a = params.mu * SQRT_PI / (2.0 * params.hbar)
    # sin(a u)/(pi u) = (a/pi) sinc(a u / pi) with numpy's normalized sinc
    out = (a / math.pi) * np.sinc(a * u / math.pi)
    return float(out) if np.ndim(out) == 0 else out


def ml_overlap_quadrature(x: float, y: float, params: ModelParams, tol: Tolerance = DEFAULT_TOL) -> complex:
    """The overlap as the momentum integral it is defined by.

    (1/2 pi hbar) int dp exp(-p^2/mu^2) exp(-i (y-x) q(p) / hbar)
    """
    u = y - x

    def integrand(p):
        q = effective_momentum(p, params)
        return np.exp(-p * p / params.mu**2) * np.exp(-1j * u * q / params.hbar)

    val = integrate(integrand, FullLine(0.0, params.mu), tol)
    return val / (2.0 * math.pi * params.hbar)


def generalized_fourier(V, p: float, p_prime: float, params: ModelParams, tol: Tolerance = DEFAULT_TOL,
                        support: float = None) -> complex:
    """Deformed Fourier transform V(p, p') of a position-space potential.

    V(p, p') = (1/2 pi hbar) int dx exp(-i x (q(p) - q(p')) / hbar) V(x)

    ``V`` is either a vectorized callable or a :class:`DeltaPotential`, which
    is handled in closed form (-kappa / 2 pi hbar). ``support`` optionally
    restricts the quadrature to ``[-support, support]`` for compactly
    supported potentials.
    """
    prefactor = 1.0 / (2.0 * math.pi * params.hbar)
    if isinstance(V, DeltaPotential):
        return complex(-V.kappa * prefactor)
    k = float(effective_momentum(p, params) - effective_momentum(p_prime, params)) / params.hbar

    def integrand(x):
        return np.exp(-1j * k * x) * V(x)

    interval = Finite(-support, support) if support else FullLine(0.0, 1.0)
    return prefactor * integrate(integrand, interval, tol)


def ordinary_fourier(V, p: float, p_prime: float, params: ModelParams, tol: Tolerance = DEFAULT_TOL,
                     support: float = None) -> complex:
    """Undeformed transform (1/2 pi hbar) int dx exp(-i x (p - p')/hbar) V(x)."""
    k = (p - p_prime) / params.hbar

    def integrand(x):
        return np.exp(-1j * k * x) * V(x)

    interval = Finite(-support, support) if support else FullLine(0.0, 1.0)
    return integrate(integrand, interval, tol) / (2.0 * math.pi * params.hbar)


def kinetic_expectation(params: ModelParams, tol: Tolerance = DEFAULT_TOL) -> float:
    """<p^2/2m> in a maximally localized state, by quadrature.

    (1/4 pi m hbar) int p^2 exp(-p^2/mu^2) dp, which equals
    mu^3 / (8 sqrt(pi) m hbar). Finiteness means the states are physical.
    """
    mu = params.mu
    val = integrate(lambda p: p * p * np.exp(-p * p / mu**2), FullLine(0.0, mu), tol)
    return val / (4.0 * math.pi * params.mass * params.hbar)


def kinetic_expectation_closed_form(params: ModelParams) -> float:
    return params.mu**3 / (8.0 * SQRT_PI * params.mass * params.hbar)


def kinetic_expectation_printed(params: ModelParams) -> float:
    """mu^(3/2) / (16 sqrt(pi) m hbar); disagrees with the integral it is meant to evaluate."""
    return params.mu**1.5 / (16.0 * SQRT_PI * params.mass * params.hbar)


def completeness_window(p: float, test_fn: Callable, window: float, params: ModelParams,
                        tol: Tolerance = None) -> float:
    """Apply the x-windowed completeness kernel to a smooth test function.

    Computes int dp' [int_{-L}^{L} dx <p'|x^ML><x^ML|p>] g(p'), which tends to
    g(p) as the window half-width L grows. The inner x-integral is done in
    closed form:

        int_{-L}^{L} dx <p'|x^ML><x^ML|p>
            = exp(-(p^2+p'^2)/2mu^2) sin(L (q' - q)/hbar) / (pi (q' - q)).
    """
    tol = tol or Tolerance(abs_tol=1e-12, rel_tol=1e-10, max_iter=2000)
    q = float(effective_momentum(p, params))
    hbar = params.hbar

    def integrand(pp):
        dq = effective_momentum(pp, params) - q
        kern = (window / (math.pi * hbar)) * np.sinc(window * dq / (math.pi * hbar))
        return params.deformation_weight(p, pp) * kern * test_fn(pp)

    return float(np.real(integrate(integrand, FullLine(p, params.mu), tol, points=(p,))))
