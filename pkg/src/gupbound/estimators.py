"""scikit-learn style wrappers.

The estimators are "fitted" by solving for a bound state (or eigenvalues)
with the hyperparameters given at construction; ``transform`` then samples
a wavefunction or potential on the abscissae passed in. Inputs may be 1-D
arrays or single-column 2-D arrays.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import coulomb, delta, oracle
from .kernel import ModelParams, minimal_length


def _as_abscissae(X) -> np.ndarray:
    """Validate X as finite samples along one axis and return a flat float array."""
    arr = check_array(X, ensure_2d=False, dtype=np.float64, allow_nd=False, ensure_min_samples=1)
    if arr.ndim == 2:
        if arr.shape[1] != 1:
            raise ValueError(f"expected a single column of abscissae, got shape {arr.shape}")
        arr = arr[:, 0]
    return arr


def _params(est) -> ModelParams:
    return ModelParams(hbar=est.hbar, mass=est.mass, mu=est.mu)


class DeltaBoundState(TransformerMixin, BaseEstimator):
    """Bound state of -kappa delta(x).

    After ``fit``: ``p0_``, ``energy_``, ``energy_asymptotic_``,
    ``norm_const_``, ``min_length_`` and ``state_``. ``transform`` returns
    the momentum-space wavefunction; ``predict`` the quasi-position one.
    """

    def __init__(self, mu=10.0, kappa=1.0, hbar=1.0, mass=1.0):
        self.mu = mu
        self.kappa = kappa
        self.hbar = hbar
        self.mass = mass

    def fit(self, X=None, y=None):
        params = _params(self)
        coupling = delta.DeltaCoupling(self.kappa)
        self.state_ = delta.solve_bound_state(params, coupling)
        self.p0_ = self.state_.p0
        self.energy_ = self.state_.energy
        self.norm_const_ = self.state_.norm_const
        if delta.coupling_ratio(params, coupling) < 1.0:
            self.energy_asymptotic_ = delta.energy_asymptotic(params, coupling)
        else:
            self.energy_asymptotic_ = float("nan")
        self.min_length_ = minimal_length(params)
        return self

    def transform(self, X):
        check_is_fitted(self, "state_")
        return delta.psi_momentum(_as_abscissae(X), self.state_, _params(self))

    def predict(self, X):
        check_is_fitted(self, "state_")
        return delta.phi_position(_as_abscissae(X), self.state_, _params(self), prefactor="residue")


class CoulombBoundState(TransformerMixin, BaseEstimator):
    """Level n of the 1-D Coulomb potential on the chosen branch ('minus' or 'plus')."""

    def __init__(self, mu=10.0, z_e2=1.0, n=1, branch="minus", hbar=1.0, mass=1.0):
        self.mu = mu
        self.z_e2 = z_e2
        self.n = n
        self.branch = branch
        self.hbar = hbar
        self.mass = mass

    def fit(self, X=None, y=None):
        params = _params(self)
        coupling = coulomb.CoulombCoupling(self.z_e2, self.n)
        self.spectrum_ = coulomb.spectral_roots(params, coupling)
        self.state_ = coulomb.bound_state(params, coupling, self.branch)
        self.p0_ = self.state_.p0
        self.energy_ = self.state_.energy
        self.norm_const_ = self.state_.norm_const
        self.min_length_bound_ = coulomb.min_length_bound(self.n, params, coupling)
        return self

    def transform(self, X):
        check_is_fitted(self, "state_")
        coupling = coulomb.CoulombCoupling(self.z_e2, self.n)
        return coulomb.psi_closed_form(_as_abscissae(X), self.state_, _params(self), coupling)


class EffectivePotential(TransformerMixin, BaseEstimator):
    """Regularized position-space potential; ``kind`` is 'delta' or 'coulomb'."""

    def __init__(self, kind="delta", mu=2.0, kappa=1.0, z_e2=1.0, hbar=1.0, mass=1.0):
        self.kind = kind
        self.mu = mu
        self.kappa = kappa
        self.z_e2 = z_e2
        self.hbar = hbar
        self.mass = mass

    def fit(self, X=None, y=None):
        if self.kind not in ("delta", "coulomb"):
            raise ValueError(f"kind must be 'delta' or 'coulomb', got {self.kind!r}")
        self.params_ = _params(self)
        if self.kind == "delta":
            self.coupling_ = delta.DeltaCoupling(self.kappa)
        else:
            self.coupling_ = coulomb.CoulombCoupling(self.z_e2)
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        x = _as_abscissae(X)
        if self.kind == "delta":
            return np.asarray(delta.v_eff_position(x, self.params_, self.coupling_))
        return np.asarray(coulomb.v_eff_position(x, self.params_, self.coupling_))


class NystromSpectrum(BaseEstimator):
    """Dense Nystrom eigenvalues of the momentum-space equation."""

    def __init__(self, kind="delta", mu=10.0, grid_size=400, kappa=1.0, z_e2=1.0, n=1, hbar=1.0, mass=1.0):
        self.kind = kind
        self.mu = mu
        self.grid_size = grid_size
        self.kappa = kappa
        self.z_e2 = z_e2
        self.n = n
        self.hbar = hbar
        self.mass = mass

    def fit(self, X=None, y=None):
        if int(self.grid_size) < 2:
            raise ValueError("grid_size must be at least 2")
        params = _params(self)
        if self.kind == "delta":
            res = oracle.delta_nystrom(params, delta.DeltaCoupling(self.kappa), int(self.grid_size))
        elif self.kind == "coulomb":
            res = oracle.coulomb_nystrom(params, coulomb.CoulombCoupling(self.z_e2, self.n), int(self.grid_size))
        else:
            raise ValueError(f"kind must be 'delta' or 'coulomb', got {self.kind!r}")
        self.result_ = res
        self.energies_ = res.energies
        self.ground_energy_ = res.ground_energy
        self.residual_norm_ = res.residual_norm
        self.imag_flag_ = res.imag_flag
        return self
