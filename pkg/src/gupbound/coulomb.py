"""One-dimensional Coulomb potential V(x) = -Ze^2/x with a minimal length.

In momentum space the potential becomes the step kernel

    V(p, p') = (i Ze^2 / 2 hbar) [sign(erf(p/mu) - erf(p'/mu)) + 1],

and differentiating the integral equation gives a first-order ODE for Psi.
Its 1/mu^2-expanded solution is single valued only when

    p0^2/mu^2 - (hbar n / m Ze^2) p0 + 1 = 0,

which has two branches p0(-) <= p0(+). The minus branch tends to the usual
1D hydrogen levels -m Z^2 e^4 / 2 hbar^2 n^2; the plus branch diverges as mu
grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .delta import BoundState, deformed_lorentzian_norm
from .exceptions import NoBoundState
from .kernel import SQRT_PI, ModelParams
from .numerics import FullLine, Tolerance, erfi_scaled, integrate


@dataclass(frozen=True)
class CoulombCoupling:
    """Coupling Ze^2 (energy * length) and principal quantum number n."""

    z_e2: float = 1.0
    n: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.z_e2) and self.z_e2 > 0):
            raise ValueError(f"z_e2 must be a finite positive number, got {self.z_e2!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")

    def with_n(self, n: int) -> "CoulombCoupling":
        return CoulombCoupling(self.z_e2, n)


@dataclass(frozen=True)
class CoulombSpectrum:
    """Both branches of the single-valuedness condition for one n.

    Roots and energies are ``None`` when the discriminant is negative.
    """

    n: int
    discriminant: float
    p0_minus: Optional[float]
    p0_plus: Optional[float]
    e_minus: Optional[float]
    e_plus: Optional[float]

    @property
    def has_bound_state(self) -> bool:
        return self.discriminant >= 0

    def branch(self, which: str = "minus"):
        """(p0, energy) for ``which`` in {'minus', 'plus'}; NoBoundState if absent."""
        if not self.has_bound_state:
            raise NoBoundState(
                f"discriminant {self.discriminant:.6g} < 0 for n = {self.n}: mu is too small"
            )
        if which == "minus":
            return self.p0_minus, self.e_minus
        if which == "plus":
            return self.p0_plus, self.e_plus
        raise ValueError("branch must be 'minus' or 'plus'")


def _epsilon(params: ModelParams, coupling: CoulombCoupling) -> float:
    # m Ze^2 / (hbar n mu)
    return params.mass * coupling.z_e2 / (params.hbar * coupling.n * params.mu)


def potential_kernel(p, p_prime, params: ModelParams, coupling: CoulombCoupling):
    """(i Ze^2 / 2 hbar) [sign(p - p') + 1], with sign(0) = 0.

    sign(erf(p/mu) - erf(p'/mu)) equals sign(p - p') because erf is
    increasing, so the erf is never evaluated.
    """
    s = np.sign(np.asarray(p, dtype=float) - np.asarray(p_prime, dtype=float))
    out = (0.5j * coupling.z_e2 / params.hbar) * (s + 1.0)
    return complex(out) if np.ndim(out) == 0 else out


def ode_rhs(p, psi, p0: float, params: ModelParams, coupling: CoulombCoupling):
    """Psi' = -[2p/(p^2+p0^2) + p/mu^2 + (2 m i Ze^2/hbar) exp(-p^2/mu^2)/(p^2+p0^2)] Psi."""
    mu2 = params.mu**2
    den = p * p + p0 * p0
    coeff = 2.0 * p / den + p / mu2 + (2j * params.mass * coupling.z_e2 / params.hbar) * np.exp(-p * p / mu2) / den
    return -coeff * psi


def discriminant(params: ModelParams, coupling: CoulombCoupling) -> float:
    """1 - (2 m Ze^2 / hbar n mu)^2."""
    return 1.0 - (2.0 * _epsilon(params, coupling)) ** 2


def spectral_roots(params: ModelParams, coupling: CoulombCoupling) -> CoulombSpectrum:
    """Roots of p0^2/mu^2 - (hbar n / m Ze^2) p0 + 1 = 0 and E = -p0^2 / 2m."""
    disc = discriminant(params, coupling)
    n = coupling.n
    if disc < 0:
        return CoulombSpectrum(n, disc, None, None, None, None)
    root = math.sqrt(disc)
    half_sum = params.hbar * n * params.mu**2 / (2.0 * params.mass * coupling.z_e2)
    # product of roots is mu^2; form the small root without cancellation
    p_plus = half_sum * (1.0 + root)
    p_minus = params.mu**2 / p_plus
    m = params.mass
    return CoulombSpectrum(n, disc, p_minus, p_plus, -p_minus**2 / (2 * m), -p_plus**2 / (2 * m))


def branch_energies_closed_form(params: ModelParams, coupling: CoulombCoupling):
    """E(-/+) = -(mu^2/8m) (hbar n mu / m Ze^2)^2 (1 -/+ sqrt(1 - (2 m Ze^2/hbar n mu)^2))^2."""
    disc = discriminant(params, coupling)
    if disc < 0:
        raise NoBoundState(f"discriminant {disc:.6g} < 0")
    m, mu = params.mass, params.mu
    scale = -(mu**2 / (8.0 * m)) * (params.hbar * coupling.n * mu / (m * coupling.z_e2)) ** 2
    root = math.sqrt(disc)
    return scale * (1.0 - root) ** 2, scale * (1.0 + root) ** 2


def classical_energy(params: ModelParams, coupling: CoulombCoupling) -> float:
    """-m Z^2 e^4 / (2 hbar^2 n^2)."""
    return -params.mass * coupling.z_e2**2 / (2.0 * params.hbar**2 * coupling.n**2)


def energy_expansions(params: ModelParams, coupling: CoulombCoupling):
    """Large-mu expansions of both branches as usually quoted.

    E(-) ~ -(m Z^2 e^4 / 2 hbar^2 n^2) (1 - 2 eps^2)
    E(+) ~ -(mu^2 / 2m) (-2 + 1/eps^2 - eps^2),      eps = m Ze^2 / (hbar n mu)

    The sign of the eps^2 correction in E(-) does not match the exact root;
    see :func:`energy_expansion_derived` and :func:`expansion_report`.
    """
    eps = _epsilon(params, coupling)
    e_minus = classical_energy(params, coupling) * (1.0 - 2.0 * eps**2)
    e_plus = -(params.mu**2 / (2.0 * params.mass)) * (-2.0 + eps**-2 - eps**2)
    return e_minus, e_plus


def energy_expansion_derived(params: ModelParams, coupling: CoulombCoupling) -> float:
    """Taylor expansion of the exact minus-branch root: E(-) ~ E_classical (1 + 2 eps^2)."""
    eps = _epsilon(params, coupling)
    return classical_energy(params, coupling) * (1.0 + 2.0 * eps**2)


def expansion_report(params: ModelParams, coupling: CoulombCoupling) -> dict:
    spectrum = spectral_roots(params, coupling)
    printed, printed_plus = energy_expansions(params, coupling)
    derived = energy_expansion_derived(params, coupling)
    exact = spectrum.e_minus
    return {
        "n": coupling.n,
        "mu": params.mu,
        "e_minus_exact": exact,
        "e_minus_printed_expansion": printed,
        "e_minus_derived_expansion": derived,
        "e_plus_exact": spectrum.e_plus,
        "e_plus_printed_expansion": printed_plus,
        "printed_minus_error": None if exact is None else printed - exact,
        "derived_minus_error": None if exact is None else derived - exact,
    }


def bound_state(params: ModelParams, coupling: CoulombCoupling, branch: str = "minus") -> BoundState:
    p0, energy = spectral_roots(params, coupling).branch(branch)
    return BoundState(
        p0=p0,
        energy=energy,
        norm_const=normalization_constant(p0, params),
        branch=f"coulomb_{branch}",
    )


def normalization_constant(p0: float, params: ModelParams) -> float:
    """N = [mu^(-1/2) p0^(-5/2) sqrt(pi) exp(p0^2/2mu^2) W_{-3/4,-3/4}(p0^2/mu^2)]^(-1/2)."""
    return deformed_lorentzian_norm(p0, params) ** -0.5


def _winding_coefficient(p0, params, coupling):
    # (2 m Ze^2 / hbar p0) (1 + p0^2/mu^2); equals 2n on the spectral condition
    return (2.0 * params.mass * coupling.z_e2 / (params.hbar * p0)) * (1.0 + p0 * p0 / params.mu**2)


def psi_closed_form(p, state: BoundState, params: ModelParams, coupling: CoulombCoupling):
    """1/mu^2-expanded solution of the momentum-space ODE.

    Psi(p) = N exp(-p^2/2mu^2 + 2 i m Ze^2 p / hbar mu^2) / (p^2 + p0^2)
             * exp(-i (2 m Ze^2/hbar p0)(1 + p0^2/mu^2) arctan(p/p0))

    Only the first two factors carry modulus.
    """
    p = np.asarray(p, dtype=float)
    p0, mu2 = state.p0, params.mu**2
    k = 2.0 * params.mass * coupling.z_e2 / params.hbar
    phase = k * p / mu2 - _winding_coefficient(p0, params, coupling) * np.arctan(p / p0)
    out = state.norm_const * np.exp(-p * p / (2.0 * mu2)) / (p * p + p0 * p0) * np.exp(1j * phase)
    return complex(out) if out.ndim == 0 else out


def arctan_phase_winding(state: BoundState, params: ModelParams, coupling: CoulombCoupling,
                         samples: int = 4001) -> float:
    """Total phase of the arctan factor over p in (-inf, inf), by unwrapping samples.

    Equals -2 pi n when the spectral condition holds.
    """
    p0 = state.p0
    theta = np.linspace(-0.5 * math.pi, 0.5 * math.pi, samples)[1:-1]
    p = p0 * np.tan(theta)
    factor = np.exp(-1j * _winding_coefficient(p0, params, coupling) * np.arctan(p / p0))
    phase = np.unwrap(np.angle(factor))
    # endpoints are approached as p -> -/+ inf, where arctan -> -/+ pi/2
    step = _winding_coefficient(p0, params, coupling) * (math.pi / (samples - 1))
    return float(phase[-1] - phase[0] - 2.0 * step)


@dataclass(frozen=True)
class SingularityTerm:
    """S = int exp(-p^2/2mu^2) Psi(p) dp and the modulus of its large-p limit form."""

    value: complex
    limit_modulus: float

    @property
    def is_finite(self) -> bool:
        return bool(np.isfinite(self.value))


def singularity_term(state: BoundState, params: ModelParams, coupling: CoulombCoupling,
                     tol: Optional[Tolerance] = None, strip_linear_phase: bool = False) -> SingularityTerm:
    """Evaluate S by quadrature from the closed-form wavefunction.

    The limit form (i hbar exp(p^2/2mu^2) / 2 m Ze^2) (p^2+p0^2) Psi(p) has
    constant modulus hbar N / (2 m Ze^2); only its phase keeps turning.
    ``strip_linear_phase`` drops exp(2 i m Ze^2 p / hbar mu^2) from Psi.
    """
    tol = tol or Tolerance(abs_tol=1e-13, rel_tol=1e-11, max_iter=2000)
    mu2 = params.mu**2
    k = 2.0 * params.mass * coupling.z_e2 / params.hbar

    def integrand(p):
        psi = psi_closed_form(p, state, params, coupling)
        if strip_linear_phase:
            psi = psi * np.exp(-1j * k * p / mu2)
        return np.exp(-p * p / (2.0 * mu2)) * psi

    value = integrate(integrand, FullLine(0.0, state.p0), tol)
    limit = params.hbar * state.norm_const / (2.0 * params.mass * coupling.z_e2)
    return SingularityTerm(complex(value), limit)


def min_length_bound(n: int, params: ModelParams, coupling: CoulombCoupling) -> float:
    """Upper bound hbar^2 n / (sqrt(2) Ze^2 m) on the minimal length."""
    return params.hbar**2 * n / (math.sqrt(2.0) * coupling.z_e2 * params.mass)


def v_eff_position(x, params: ModelParams, coupling: CoulombCoupling):
    """-(Ze^2 sqrt(pi) mu / 2 hbar) erfi(z) exp(-z^2), z = mu x / 2 hbar.

    Odd, zero at the origin and -> -Ze^2/x at large |x|. The erfi-Gaussian
    product is evaluated as one bounded function, so no overflow occurs.
    """
    x = np.asarray(x, dtype=float)
    z = params.mu * x / (2.0 * params.hbar)
    out = -(coupling.z_e2 * SQRT_PI * params.mu / (2.0 * params.hbar)) * np.asarray(erfi_scaled(z))
    out = out + 0.0  # turn -0.0 at the origin into +0.0
    return float(out) if out.ndim == 0 else out
