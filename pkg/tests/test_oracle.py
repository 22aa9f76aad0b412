import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from gupbound import coulomb, delta, oracle
from gupbound.exceptions import EigenFailure, GridTooCoarse, StepUnderflow
from gupbound.kernel import ModelParams

KAPPA1 = delta.DeltaCoupling(1.0)
C1 = coulomb.CoulombCoupling(1.0, 1)


def count_below(a, sigma):
    """Sylvester inertia: negative pivots of LDL^T(A - sigma I)."""
    _, d, _ = scipy.linalg.ldl(a - sigma * np.eye(len(a)))
    return int(np.sum(np.linalg.eigvalsh(d) < 0))


@given(st.integers(2, 30), st.integers(0, 10**6))
def test_eigen_dense_matches_inertia_counts(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    a = a + a.T
    vals = np.sort(oracle.eigen_dense(a, hermitian=True))
    for sigma in np.linspace(vals[0] - 1, vals[-1] + 1, 7):
        if np.min(np.abs(vals - sigma)) < 1e-8:
            continue
        assert count_below(a, sigma) == int(np.sum(vals < sigma))


def test_eigen_dense_general_matrix():
    a = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert np.allclose(np.sort_complex(oracle.eigen_dense(a)), [-1j, 1j])


def test_eigen_dense_rejects_bad_input():
    with pytest.raises(EigenFailure):
        oracle.eigen_dense(np.ones((2, 3)))
    with pytest.raises(EigenFailure):
        oracle.eigen_dense(np.array([[np.nan]]))
    with pytest.raises(EigenFailure):
        oracle.eigen_dense(np.zeros((oracle.EIGEN_MAX_SIZE + 1,) * 2))


def test_free_kernel_gives_kinetic_diagonal():
    params = ModelParams.natural(5.0)
    grid = oracle.momentum_grid(60, 1.0)
    res = oracle.nystrom_solve(oracle.zero_kernel(params), params, grid)
    assert np.allclose(res.energies, np.sort(grid.nodes**2 / 2))
    assert res.negative_energies().size == 0


def test_delta_ground_energy_matches_closed_form():
    params = ModelParams.natural(10.0)
    exact = delta.solve_bound_state(params, KAPPA1).energy
    res = oracle.delta_nystrom(params, KAPPA1, 400)
    assert res.ground_energy == pytest.approx(exact, rel=1e-6)
    assert res.negative_energies().size == 1
    assert res.residual_norm < 1e-8
    assert not res.imag_flag


@pytest.mark.parametrize("mu,kappa", [(0.7, 1.0), (3.0, 2.5), (50.0, 0.4)])
def test_delta_nystrom_other_parameters(mu, kappa):
    params = ModelParams.natural(mu)
    c = delta.DeltaCoupling(kappa)
    exact = delta.solve_bound_state(params, c).energy
    assert oracle.delta_nystrom(params, c, 300).ground_energy == pytest.approx(exact, rel=1e-6)


def test_grid_refinement_is_monotone_above_roundoff():
    params = ModelParams.natural(10.0)
    exact = delta.solve_bound_state(params, KAPPA1).energy
    g = [oracle.delta_nystrom(params, KAPPA1, n).ground_energy for n in (25, 50, 100, 200)]
    errs = [abs(e - exact) for e in g]
    assert errs[0] > errs[1] > errs[2]
    assert errs[3] < 1e-9 * abs(exact)


def test_refinement_guard_raises_on_coarse_grid():
    params = ModelParams.natural(10.0)
    grid = oracle.momentum_grid(10, 2.0 * delta.p0_asymptotic(params, KAPPA1))
    with pytest.raises(GridTooCoarse):
        oracle.nystrom_solve(oracle.delta_kernel(params, KAPPA1), params, grid, tol=1e-8)


def test_coulomb_step_kernel_matrix_is_triangular():
    # sign(p - p') + 1 vanishes for p < p', so on increasing nodes the matrix is
    # lower-triangular and its spectrum is its diagonal (no bound state)
    params = ModelParams.natural(20.0)
    grid = oracle.momentum_grid(120, 2.0)
    h = oracle.nystrom_matrix(oracle.coulomb_kernel(params, C1), params, grid)
    assert np.all(np.triu(h, 1) == 0)
    res = oracle.nystrom_solve(oracle.coulomb_kernel(params, C1), params, grid)
    diag = np.diag(h)
    assert np.allclose(np.sort(res.energies), np.sort(diag.real), rtol=1e-8, atol=1e-10)
    assert res.imag_flag
    assert res.negative_energies().size == 0


def test_integrate_ode_exponential_and_oscillator():
    curve = oracle.integrate_ode(lambda p, y: -y, 0.0, 2.0, 1.0, p_eval=np.linspace(0, 2, 5))
    assert [c.abscissa for c in curve] == list(np.linspace(0, 2, 5))
    assert curve[-1].value == pytest.approx(math.exp(-2.0), rel=1e-10)
    osc = oracle.integrate_ode(lambda p, y: 1j * y, 0.0, math.pi, 1.0)
    assert abs(osc[-1].value + 1.0) < 1e-10


def test_integrate_ode_reports_blow_up():
    with pytest.raises(StepUnderflow):
        oracle.integrate_ode(lambda p, y: y * y, 0.0, 2.0, 1.0)


def test_integrate_ode_is_deterministic():
    a = oracle.integrate_ode(lambda p, y: -p * y, 0.0, 3.0, 1.0)
    b = oracle.integrate_ode(lambda p, y: -p * y, 0.0, 3.0, 1.0)
    assert a == b


def test_coulomb_ode_deviation_scales_as_mu_minus_four():
    devs = [oracle.coulomb_ode_deviation(ModelParams.natural(mu), C1) for mu in (10.0, 20.0, 40.0)]
    c = [d["complex"] for d in devs]
    assert 8 <= c[0] / c[1] <= 32
    assert 8 <= c[1] / c[2] <= 32
    assert max(d["modulus"] for d in devs) < 1e-10


def test_eigen_dense_trivial_cases():
    assert np.allclose(oracle.eigen_dense(np.eye(5)), np.ones(5))
    assert np.allclose(np.sort(oracle.eigen_dense(np.diag([1.0, 2.0, 3.0])).real), [1, 2, 3])


def test_lorentzian_skeleton_of_the_coulomb_equation():
    p = np.linspace(0, 6, 13)
    curve = oracle.integrate_ode(lambda q, y: -2 * q / (q * q + 1) * y, 0.0, 6.0, 1.0, p_eval=p)
    assert np.allclose([c.value for c in curve], 1 / (p * p + 1), rtol=1e-10, atol=0)


def test_ode_error_follows_tolerance():
    errs = [abs(oracle.integrate_ode(lambda p, y: -y, 0.0, 5.0, 1.0, tol=tol)[-1].value - math.exp(-5.0))
            for tol in (1e-5, 1e-7, 1e-9, 1e-11)]
    assert all(b < a for a, b in zip(errs[:-1], errs[1:]))
    assert errs[-1] < 1e-11


def test_delta_ground_energy_is_bounded_below_by_exact():
    params = ModelParams.natural(10.0)
    exact = delta.solve_bound_state(params, KAPPA1).energy
    g = [oracle.delta_nystrom(params, KAPPA1, n).ground_energy for n in (25, 50, 100, 200, 400)]
    tol = [abs(a - b) for a, b in zip(g[:-1], g[1:])] + [1e-10]
    assert all(e >= exact - max(t, 1e-10 * abs(exact)) for e, t in zip(g, tol))


def test_refinement_at_large_grids_sits_at_roundoff():
    # the rational map converges spectrally: by N = 100 the ground energy is
    # at the 1e-10 relative floor, so differences beyond it are eigensolver noise
    params = ModelParams.natural(10.0)
    exact = delta.solve_bound_state(params, KAPPA1).energy
    g = [oracle.delta_nystrom(params, KAPPA1, n).ground_energy for n in (100, 200, 400, 800)]
    assert max(abs(e - exact) for e in g) < 1e-9 * abs(exact)
