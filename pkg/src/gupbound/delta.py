"""Attractive delta well V(x) = -kappa delta(x) with a minimal length.

The deformed transform of the delta potential is the constant
-kappa / (2 pi hbar), so the momentum-space equation has the rank-one kernel
K(p, p') = f(p) g(p') with

    f(p) = (m kappa / pi hbar) exp(-p^2/2mu^2) / (p^2 + p0^2),
    g(p) = exp(-p^2/2mu^2),            2 m E = -p0^2.

The bound state exists iff int f g dp = 1, i.e. F(p0) = 0 with

    F(p0) = (m kappa / p0 hbar) erfcx(p0/mu) - 1,

which is strictly decreasing on (0, inf). There is exactly one bound state.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import AsymptoticRegimeWarning, DomainError, ErfiOverflow
from .kernel import SQRT_PI, ModelParams, effective_momentum
from .numerics import (
    ERFI_MAX_ARG,
    FullLine,
    Tolerance,
    erfcx,
    erfi,
    expand_bracket,
    find_root,
    integrate,
    whittaker_w_neg34,
)
from .numerics.roots import ROOT_TOL


@dataclass(frozen=True)
class DeltaCoupling:
    kappa: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise ValueError(f"kappa must be a finite positive number, got {self.kappa!r}")


@dataclass(frozen=True)
class BoundState:
    """A solved level. ``branch`` is one of 'delta', 'coulomb_minus', 'coulomb_plus'."""

    p0: float
    energy: float
    norm_const: float
    branch: str
    strong_coupling: bool = False

    def __post_init__(self):
        if self.branch not in ("delta", "coulomb_minus", "coulomb_plus"):
            raise ValueError(f"unknown branch {self.branch!r}")
        if not (self.p0 > 0 and self.energy < 0):
            raise ValueError("bound state requires p0 > 0 and energy < 0")
        if not (math.isfinite(self.norm_const) and self.norm_const > 0):
            raise ValueError("norm_const must be finite and positive")


def classical_momentum(params: ModelParams, coupling: DeltaCoupling) -> float:
    """m kappa / hbar, the root without a minimal length."""
    return params.mass * coupling.kappa / params.hbar


def coupling_ratio(params: ModelParams, coupling: DeltaCoupling) -> float:
    """m kappa / (hbar mu); the large-mu expansions need this small."""
    return classical_momentum(params, coupling) / params.mu


def spectral_residual(p0, params: ModelParams, coupling: DeltaCoupling):
    """F(p0) = (m kappa / p0 hbar) [1 - erf(p0/mu)] exp(p0^2/mu^2) - 1."""
    p0 = np.asarray(p0, dtype=float)
    if np.any(~(p0 > 0)):
        raise DomainError("spectral_residual requires p0 > 0")
    out = classical_momentum(params, coupling) / p0 * np.asarray(erfcx(p0 / params.mu)) - 1.0
    return float(out) if out.ndim == 0 else out


def p0_asymptotic(params: ModelParams, coupling: DeltaCoupling) -> float:
    """Root of the first-order equation (1 + 2 m kappa/(hbar sqrt(pi) mu)) p0 = m kappa/hbar."""
    pc = classical_momentum(params, coupling)
    return pc / (1.0 + 2.0 * pc / (SQRT_PI * params.mu))


def root_bracket(params: ModelParams, coupling: DeltaCoupling):
    pa = p0_asymptotic(params, coupling)
    pc = classical_momentum(params, coupling)
    return expand_bracket(lambda p: spectral_residual(p, params, coupling), pa / 10.0, 10.0 * max(pa, pc))


def solve_bound_state(params: ModelParams, coupling: DeltaCoupling, tol: Tolerance = ROOT_TOL) -> BoundState:
    """Solve F(p0) = 0 and return the normalized bound state."""
    bracket = root_bracket(params, coupling)
    p0 = find_root(lambda p: spectral_residual(p, params, coupling), bracket, tol)
    return BoundState(
        p0=p0,
        energy=-p0 * p0 / (2.0 * params.mass),
        norm_const=normalization_constant(p0, params),
        branch="delta",
        strong_coupling=coupling_ratio(params, coupling) >= 1.0,
    )


def energy_asymptotic(params: ModelParams, coupling: DeltaCoupling, expanded: bool = False) -> float:
    """Large-mu energy -(m kappa^2 / 2 hbar^2) (1 - 2 eps)^2, eps = m kappa / (hbar sqrt(pi) mu).

    ``expanded=True`` evaluates the algebraically identical form
    1 - 4 eps + 4 eps^2. Only the first-order term is a faithful expansion
    of the exact root; the remainder is O(1/mu^2).
    """
    ratio = coupling_ratio(params, coupling)
    if ratio >= 1.0:
        warnings.warn(
            f"m kappa/(hbar mu) = {ratio:.3g} >= 1: large-mu energy is not reliable",
            AsymptoticRegimeWarning,
            stacklevel=2,
        )
    eps = ratio / SQRT_PI
    scale = -params.mass * coupling.kappa**2 / (2.0 * params.hbar**2)
    if expanded:
        return scale * (1.0 - 4.0 * eps + 4.0 * eps * eps)
    return scale * (1.0 - 2.0 * eps) ** 2


def deformed_lorentzian_norm(p0: float, params: ModelParams) -> float:
    """int_{-inf}^{inf} exp(-p^2/mu^2) / (p^2 + p0^2)^2 dp via W_{-3/4,-3/4}.

    = sqrt(pi) mu^(-1/2) p0^(-5/2) exp(p0^2/2mu^2) W_{-3/4,-3/4}(p0^2/mu^2)
    """
    if not p0 > 0:
        raise DomainError("p0 must be positive")
    mu = params.mu
    z = (p0 / mu) ** 2
    return SQRT_PI * mu**-0.5 * p0**-2.5 * math.exp(0.5 * z) * whittaker_w_neg34(z)


def normalization_constant(p0: float, params: ModelParams) -> float:
    """c = [mu^(-1/2) p0^(-5/2) sqrt(pi) W_{-3/4,-3/4}(p0^2/mu^2)]^(-1/2).

    With Psi(p) = c exp(-p0^2/4mu^2) exp(-p^2/2mu^2) / (p^2 + p0^2) this
    gives int |Psi|^2 dp = 1.
    """
    if not p0 > 0:
        raise DomainError("p0 must be positive")
    mu = params.mu
    z = (p0 / mu) ** 2
    w = whittaker_w_neg34(z)
    if w == 0.0:
        raise DomainError(f"p0/mu = {p0 / mu:.3g} is too large: the normalization underflows")
    return (mu**-0.5 * p0**-2.5 * SQRT_PI * w) ** -0.5


def psi_momentum(p, state: BoundState, params: ModelParams):
    """Normalized momentum-space wavefunction (real, even, positive)."""
    p = np.asarray(p, dtype=float)
    mu2 = params.mu**2
    p0 = state.p0
    out = state.norm_const * math.exp(-p0 * p0 / (4.0 * mu2)) * np.exp(-p * p / (2.0 * mu2)) / (p * p + p0 * p0)
    return float(out) if out.ndim == 0 else out


def psi_momentum_classical(p, params: ModelParams, coupling: DeltaCoupling):
    """(m kappa/hbar) sqrt(2 m kappa / pi hbar) / (p^2 + (m kappa/hbar)^2)."""
    pc = classical_momentum(params, coupling)
    p = np.asarray(p, dtype=float)
    out = pc * math.sqrt(2.0 * pc / math.pi) / (p * p + pc * pc)
    return float(out) if out.ndim == 0 else out


def position_decay_rate(state: BoundState, params: ModelParams) -> float:
    """kappa_x = mu sqrt(pi) erfi(p0/mu) / (2 hbar), the pole of the inverse transform."""
    arg = state.p0 / params.mu
    if arg > ERFI_MAX_ARG:
        raise ErfiOverflow(
            f"p0/mu = {arg:.3g} exceeds the erfi limit {ERFI_MAX_ARG:.3f}; mu is too small for this state"
        )
    return params.mu * SQRT_PI * erfi(arg) / (2.0 * params.hbar)


def phi_position(x, state: BoundState, params: ModelParams, prefactor: str = "printed"):
    """Position-space (quasi-position) wavefunction from the pole of the inverse transform.

    Phi(x) = A exp(3 p0^2 / 4 mu^2) exp(-|x| mu sqrt(pi) erfi(p0/mu) / 2 hbar)

    ``prefactor='printed'`` uses A = [2 hbar mu^(-1/2) p0^(-9/2) pi^(-5/2) W]^(-1/2)
    as usually quoted. ``prefactor='residue'`` uses the amplitude the residue
    calculation actually yields, A = [2 hbar mu^(-1/2) p0^(-1/2) pi^(-1/2) W]^(-1/2),
    which is smaller by a factor pi p0^2 and reproduces
    sqrt(m kappa / hbar^2) exp(-m kappa |x| / hbar^2) as mu -> inf.
    """
    rate = position_decay_rate(state, params)
    mu, p0, hbar = params.mu, state.p0, params.hbar
    w = whittaker_w_neg34((p0 / mu) ** 2)
    if prefactor == "printed":
        amp = (2.0 * hbar * mu**-0.5 * p0**-4.5 * math.pi**-2.5 * w) ** -0.5
    elif prefactor == "residue":
        amp = (2.0 * hbar * mu**-0.5 * p0**-0.5 * math.pi**-0.5 * w) ** -0.5
    else:
        raise ValueError("prefactor must be 'printed' or 'residue'")
    x = np.asarray(x, dtype=float)
    out = amp * math.exp(0.75 * p0 * p0 / mu**2) * np.exp(-np.abs(x) * rate)
    return float(out) if out.ndim == 0 else out


def phi_position_quadrature(x: float, state: BoundState, params: ModelParams,
                            tol: Optional[Tolerance] = None) -> float:
    """Direct generalized inverse transform of psi_momentum.

    Phi(x) = (1/sqrt(2 pi hbar)) int dp exp(i x q(p)/hbar - p^2/2mu^2) Psi(p).
    Psi is even, so only the cosine part survives.
    """
    tol = tol or Tolerance(abs_tol=1e-13, rel_tol=1e-11, max_iter=2000)
    mu2 = params.mu**2

    def integrand(p):
        q = effective_momentum(p, params)
        return np.cos(x * q / params.hbar) * np.exp(-p * p / (2.0 * mu2)) * psi_momentum(p, state, params)

    scale = min(state.p0, params.mu)
    val = integrate(integrand, FullLine(0.0, scale), tol)
    return val / math.sqrt(2.0 * math.pi * params.hbar)


def phi_position_classical(x, params: ModelParams, coupling: DeltaCoupling):
    """sqrt(m kappa / hbar^2) exp(-m kappa |x| / hbar^2)."""
    k = params.mass * coupling.kappa / params.hbar**2
    x = np.asarray(x, dtype=float)
    out = math.sqrt(k) * np.exp(-k * np.abs(x))
    return float(out) if out.ndim == 0 else out


def v_eff_position(x, params: ModelParams, coupling: DeltaCoupling):
    """Gaussian well -(kappa mu sqrt(pi) / 2 pi hbar) exp(-(mu x / 2 hbar)^2); area -kappa."""
    x = np.asarray(x, dtype=float)
    depth = coupling.kappa * params.mu * SQRT_PI / (2.0 * math.pi * params.hbar)
    out = -depth * np.exp(-((params.mu * x / (2.0 * params.hbar)) ** 2))
    return float(out) if out.ndim == 0 else out


def v_eff_area(params: ModelParams, coupling: DeltaCoupling, tol: Optional[Tolerance] = None) -> float:
    tol = tol or Tolerance(abs_tol=1e-14, rel_tol=1e-13, max_iter=400)
    width = 2.0 * params.hbar / params.mu
    return integrate(lambda x: v_eff_position(x, params, coupling), FullLine(0.0, width), tol)
