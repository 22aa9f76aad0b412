"""Independent numerical checks of the closed-form results.

* Nystrom discretization of the full momentum-space Schrodinger equation

      (p^2/2m) Psi(p) + int dp' exp(-(p^2+p'^2)/2mu^2) V(p,p') Psi(p') = E Psi(p)

  into H_ij = (p_i^2/2m) delta_ij + w_j exp(-(p_i^2+p_j^2)/2mu^2) V(p_i,p_j).
* Adaptive ODE integration of the Coulomb equation.
* Dense eigenvalues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np
from scipy.integrate import solve_ivp

from . import coulomb, delta
from .exceptions import EigenFailure, GridTooCoarse, StepUnderflow
from .kernel import CurveSample, ModelParams
from .numerics import FullLine, QuadratureRule, Tolerance, gauss_legendre_rule

EIGEN_MAX_SIZE = 2000
IMAG_FLAG_RATIO = 1e-6


@dataclass(frozen=True)
class PotentialKernel:
    evaluate: Callable  # (p, p') -> complex, vectorized
    deformation_weight: Callable  # (p, p') -> real in (0, 1]
    label: str
    hermitian: bool = False


def delta_kernel(params: ModelParams, coupling: "delta.DeltaCoupling") -> PotentialKernel:
    const = -coupling.kappa / (2.0 * math.pi * params.hbar)
    return PotentialKernel(
        evaluate=lambda p, pp: np.full(np.broadcast(p, pp).shape, const, dtype=complex),
        deformation_weight=params.deformation_weight,
        label=f"delta(kappa={coupling.kappa})",
        hermitian=True,
    )


def coulomb_kernel(params: ModelParams, coupling: "coulomb.CoulombCoupling") -> PotentialKernel:
    return PotentialKernel(
        evaluate=lambda p, pp: coulomb.potential_kernel(p, pp, params, coupling),
        deformation_weight=params.deformation_weight,
        label=f"coulomb(Ze2={coupling.z_e2})",
        hermitian=False,
    )


def zero_kernel(params: ModelParams) -> PotentialKernel:
    return PotentialKernel(
        evaluate=lambda p, pp: np.zeros(np.broadcast(p, pp).shape, dtype=complex),
        deformation_weight=params.deformation_weight,
        label="free",
        hermitian=True,
    )


def momentum_grid(n: int, scale: float) -> QuadratureRule:
    """Gauss-Legendre rule on the full momentum line, p = s t / (1 - t^2).

    ``scale`` should be comparable to the bound-state momentum p0; nodes
    still reach |p| ~ s n^2, far beyond the Gaussian cutoff mu.
    """
    return gauss_legendre_rule(n, FullLine(0.0, scale))


@dataclass(frozen=True)
class NystromResult:
    grid_size: int
    energies: np.ndarray
    ground_energy: float
    residual_norm: float
    max_imag_ratio: float = 0.0

    @property
    def imag_flag(self) -> bool:
        """True when some eigenvalue has |Im E| > 1e-6 |Re E|."""
        return self.max_imag_ratio > IMAG_FLAG_RATIO

    def negative_energies(self) -> np.ndarray:
        return self.energies[self.energies < 0]


def eigen_dense(matrix, hermitian: bool = False) -> np.ndarray:
    """All eigenvalues of a square matrix (LAPACK through numpy)."""
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise EigenFailure("matrix must be square")
    if a.shape[0] > EIGEN_MAX_SIZE:
        raise EigenFailure(f"matrix size {a.shape[0]} exceeds the cap of {EIGEN_MAX_SIZE}")
    if not np.all(np.isfinite(a)):
        raise EigenFailure("matrix has non-finite entries")
    try:
        if hermitian:
            return np.linalg.eigvalsh(a)
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc


def nystrom_matrix(kernel: PotentialKernel, params: ModelParams, grid: QuadratureRule) -> np.ndarray:
    p = grid.nodes
    pi, pj = p[:, None], p[None, :]
    coupling = kernel.deformation_weight(pi, pj) * kernel.evaluate(pi, pj)
    h = coupling * grid.weights[None, :]
    h[np.diag_indices_from(h)] += p * p / (2.0 * params.mass)
    if not np.all(np.isfinite(h)):
        raise EigenFailure("kernel is not finite on the grid")
    return h


def nystrom_solve(kernel: PotentialKernel, params: ModelParams, grid: QuadratureRule,
                  tol: Optional[float] = None) -> NystromResult:
    """Eigenvalues of the Nystrom matrix, sorted by real part.

    Hermitian kernels are symmetrized with sqrt(w) and use a Hermitian
    eigensolver; others use the general one and report the largest
    |Im E| / |Re E|. With ``tol`` set, the solve is repeated on a grid of
    twice the size and GridTooCoarse is raised if the ground energy moves
    by more than 10 * tol (relative).
    """
    h = nystrom_matrix(kernel, params, grid)
    n = len(grid)
    if kernel.hermitian:
        sw = np.sqrt(grid.weights)
        sym = h * (sw[:, None] / sw[None, :])
        sym = 0.5 * (sym + sym.conj().T)
        try:
            vals, vecs = np.linalg.eigh(sym)
        except np.linalg.LinAlgError as exc:
            raise EigenFailure(str(exc)) from exc
        energies = vals.real
        ground_vec = vecs[:, 0] / sw
        imag_ratio = 0.0
    else:
        if n > EIGEN_MAX_SIZE:
            raise EigenFailure(f"grid size {n} exceeds the cap of {EIGEN_MAX_SIZE}")
        try:
            vals, vecs = np.linalg.eig(h)
        except np.linalg.LinAlgError as exc:
            raise EigenFailure(str(exc)) from exc
        order = np.argsort(vals.real, kind="stable")
        vals, vecs = vals[order], vecs[:, order]
        energies = vals.real
        ground_vec = vecs[:, 0]
        re = np.abs(vals.real)
        imag_ratio = float(np.max(np.abs(vals.imag) / np.where(re > 0, re, np.inf)))
    e0 = energies[0]
    residual = float(np.linalg.norm(h @ ground_vec - vals[0] * ground_vec) / np.linalg.norm(ground_vec))
    result = NystromResult(n, np.asarray(energies), float(e0), residual, imag_ratio)
    if tol is not None:
        finer = nystrom_solve(kernel, params, gauss_legendre_rule(2 * n, grid.interval_map))
        if abs(finer.ground_energy - e0) > 10.0 * tol * max(abs(e0), 1e-300):
            raise GridTooCoarse(
                f"ground energy moved from {e0!r} to {finer.ground_energy!r} when the grid doubled"
            )
    return result


def delta_nystrom(params: ModelParams, coupling: "delta.DeltaCoupling", grid_size: int = 400) -> NystromResult:
    scale = 2.0 * delta.p0_asymptotic(params, coupling)
    return nystrom_solve(delta_kernel(params, coupling), params, momentum_grid(grid_size, scale))


def coulomb_nystrom(params: ModelParams, coupling: "coulomb.CoulombCoupling", grid_size: int = 600) -> NystromResult:
    scale = 2.0 * params.mass * coupling.z_e2 / (params.hbar * coupling.n)
    return nystrom_solve(coulomb_kernel(params, coupling), params, momentum_grid(grid_size, scale))


def integrate_ode(rhs: Callable, p_start: float, p_end: float, psi_start: complex,
                  tol: float = 1e-12, p_eval=None) -> List[CurveSample]:
    """Integrate psi' = rhs(p, psi) with an adaptive 8th-order Runge-Kutta method.

    Returns samples at ``p_eval`` (or at the accepted steps). The step
    sequence depends only on the inputs, so output is deterministic.
    """
    def fun(p, y):
        return np.atleast_1d(rhs(p, y[0]))

    sol = solve_ivp(
        fun,
        (p_start, p_end),
        np.array([complex(psi_start)]),
        method="DOP853",
        rtol=tol,
        atol=tol * max(abs(psi_start), 1e-300),
        t_eval=p_eval,
    )
    if sol.status != 0:
        raise StepUnderflow(sol.message)
    return [CurveSample(float(p), complex(v)) for p, v in zip(sol.t, sol.y[0])]


def coulomb_ode_deviation(params: ModelParams, coupling: "coulomb.CoulombCoupling", span: float = 5.0,
                          samples: int = 201, tol: float = 1e-13) -> dict:
    """Compare the integrated ODE against the expanded closed form on [-span p0, span p0].

    Starts from Psi(0) of the closed form and integrates outwards in both
    directions. Deviations are relative to |Psi(0)|:

    * ``modulus``: max | |Psi_ode| - |Psi_closed| |; the expansion only
      touches the phase, so this is integrator error.
    * ``complex``: max |Psi_ode - Psi_closed|, driven by the O(1/mu^4) phase
      remainder of the expansion.
    """
    state = coulomb.bound_state(params, coupling, "minus")
    p0 = state.p0
    psi0 = coulomb.psi_closed_form(0.0, state, params, coupling)

    def rhs(p, psi):
        return coulomb.ode_rhs(p, psi, p0, params, coupling)

    dev_complex = dev_modulus = 0.0
    for end in (span * p0, -span * p0):
        grid = np.linspace(0.0, end, samples)
        curve = integrate_ode(rhs, 0.0, end, psi0, tol=tol, p_eval=grid)
        ps = np.array([c.abscissa for c in curve])
        num = np.array([c.value for c in curve])
        ref = coulomb.psi_closed_form(ps, state, params, coupling)
        dev_complex = max(dev_complex, float(np.max(np.abs(num - ref))))
        dev_modulus = max(dev_modulus, float(np.max(np.abs(np.abs(num) - np.abs(ref)))))
    scale = abs(psi0)
    return {"mu": params.mu, "p0": p0, "complex": dev_complex / scale, "modulus": dev_modulus / scale}
