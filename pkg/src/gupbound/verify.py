"""The verification suite behind ``gupbound verify``.

Every check returns a :class:`Check` with a status:

``pass`` / ``fail``
    ordinary checks; any ``fail`` makes the suite fail.
``warn``
    a check that could not be run meaningfully at the requested grid size.
``info``
    a quantified disagreement between a commonly quoted closed form and the
    independently computed value. Informational checks never fail.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, List, Optional

import numpy as np

from . import coulomb, delta, kernel, oracle
from .constants import ELECTRON_MASS, HBAR, HYDROGEN_Z_E2
from .kernel import SQRT_PI, ModelParams
from .numerics import (
    Finite,
    FullLine,
    RootBracket,
    Tolerance,
    erf,
    find_root,
    integrate,
    whittaker_w_neg34,
)

SCHEMA_VERSION = "1"
COARSE_GRID = 100
CONVERGENCE_FLOOR = 1e-10  # relative; eigenvalue noise of the dense solve
SEED = 20240611
COULOMB_VEFF_PEAK = 1.2847494396568465  # max over z of 2 z D(z), at z = 1.5020

PASS, FAIL, WARN, INFO = "pass", "fail", "warn", "info"


@dataclass
class Check:
    name: str
    status: str
    measured: Any
    threshold: Any = None
    criterion: Optional[str] = None
    detail: str = ""
    seconds: float = 0.0

    @property
    def failed(self) -> bool:
        return self.status == FAIL


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _rng(offset=0):
    return np.random.default_rng(SEED + offset)


# -- numerics ---------------------------------------------------------------

def check_erf_oddness():
    x = _rng(1).uniform(-8, 8, 1000)
    bad = int(np.sum(erf(-x) != -erf(x)))
    return Check("erf_oddness", _status(bad == 0), bad, 0, detail="count of x with erf(-x) != -erf(x)")


def check_erf_series_oracle():
    # alternating Taylor series summed exactly in floats (moderate x keeps cancellation small)
    x, total, k = 1.0, 0.0, 0
    while True:
        term = (-1) ** k * x ** (2 * k + 1) / (math.factorial(k) * (2 * k + 1))
        total += term
        if abs(term) < 1e-18:
            break
        k += 1
    ref = 2.0 / SQRT_PI * total
    rel = abs(erf(x) - ref) / ref
    return Check("erf_series_oracle", _status(rel <= 1e-14), rel, 1e-14)


def check_quadrature_polynomial_exactness():
    worst = 0.0
    for deg in range(0, 20):
        val = integrate(lambda x, d=deg: x**d, Finite(-1.0, 2.0))
        exact = (2.0 ** (deg + 1) - (-1.0) ** (deg + 1)) / (deg + 1)
        worst = max(worst, abs(val - exact) / abs(exact))
    return Check("quadrature_polynomial_exactness", _status(worst <= 1e-13), worst, 1e-13,
                 detail="monomials x^0..x^19 on [-1, 2]")


def check_gradshteyn_identity(draws=20):
    rng = _rng(2)
    worst = 0.0
    tol = Tolerance(abs_tol=1e-300, rel_tol=1e-13, max_iter=2000)
    for _ in range(draws):
        mu = float(np.exp(rng.uniform(np.log(0.5), np.log(50.0))))
        p0 = mu * float(np.exp(rng.uniform(np.log(0.05), np.log(2.0))))
        lhs = integrate(lambda p: np.exp(-p * p / mu**2) / (p * p + p0 * p0) ** 2,
                        FullLine(0.0, p0), tol) / 2.0
        z = (p0 / mu) ** 2
        rhs = 0.5 * SQRT_PI * mu**-0.5 * p0**-2.5 * math.exp(0.5 * z) * whittaker_w_neg34(z)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return Check("whittaker_gradshteyn_identity", _status(worst <= 1e-8), worst, 1e-8, criterion="6",
                 detail=f"{draws} draws, 0.05 < p0/mu < 2")


def check_find_root_inside_bracket():
    rng = _rng(3)
    ok = True
    for _ in range(50):
        c = float(rng.uniform(-3, 3))
        lo, hi = c - float(rng.uniform(0.1, 4)), c + float(rng.uniform(0.1, 4))
        f = lambda x, c=c: math.tanh(x - c) + 0.1 * (x - c) ** 3
        r = find_root(f, RootBracket.from_function(f, lo, hi))
        ok &= lo <= r <= hi and abs(r - c) < 1e-12
    return Check("find_root_inside_bracket", _status(ok), ok, True)


def check_ode_integrator_exponential():
    curve = oracle.integrate_ode(lambda p, y: -y, 0.0, 1.0, 1.0, tol=1e-12)
    err = abs(curve[-1].value - math.exp(-1.0))
    return Check("ode_integrator_exponential", _status(err <= 1e-10), err, 1e-10)


# -- deformed kinematics -------------------------------------------------------

def check_ml_overlap_quadrature(draws=10):
    rng = _rng(4)
    worst = 0.0
    for _ in range(draws):
        mu = float(rng.uniform(0.5, 10.0))
        x, y = (float(v) for v in rng.uniform(-3.0, 3.0, 2))
        params = ModelParams(1.0, 1.0, mu)
        quad = kernel.ml_overlap_quadrature(x, y, params, Tolerance(1e-14, 1e-12, 2000))
        worst = max(worst, abs(quad - kernel.ml_overlap(x, y, params)))
    return Check("ml_overlap_quadrature", _status(worst <= 1e-10), worst, 1e-10, criterion="7",
                 detail=f"{draws} random (x, y, mu), absolute deviation")


def check_ml_overlap_diagonal():
    worst = 0.0
    for mu, hbar in ((1.0, 1.0), (3.0, 0.5), (50.0, 2.0)):
        params = ModelParams(hbar, 1.0, mu)
        expected = mu / (2.0 * SQRT_PI * hbar)
        worst = max(worst, abs(kernel.ml_overlap(0.3, 0.3, params) - expected) / expected)
    return Check("ml_overlap_diagonal", _status(worst <= 1e-14), worst, 1e-14, criterion="7")


def check_ml_overlap_symmetry():
    rng = _rng(5)
    params = ModelParams(1.0, 1.0, 4.0)
    x, y, s = rng.uniform(-10, 10, (3, 200))
    sym = np.max(np.abs(kernel.ml_overlap(x, y, params) - kernel.ml_overlap(y, x, params)))
    trans = np.max(np.abs(kernel.ml_overlap(x + s, y + s, params) - kernel.ml_overlap(x, y, params)))
    bound = np.all(np.abs(kernel.ml_overlap(x, y, params)) <= 1.0 / (math.pi * np.abs(y - x)) + 1e-15)
    ok = sym == 0.0 and trans <= 1e-12 and bound
    return Check("ml_overlap_symmetry", _status(bool(ok)), {"symmetry": float(sym), "translation": float(trans)}, 1e-12,
                 detail="symmetric, translation invariant, bounded by 1/(pi |y-x|)")


def _bump(x):
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) < 5.0, (1.0 - (x / 5.0) ** 2) ** 4, 0.0)


def check_generalized_fourier_classical_limit():
    worst = 0.0
    for mu in (1e3, 1e4):
        params = ModelParams(1.0, 1.0, mu)
        for p, pp in ((0.3, -0.2), (0.1, 0.25), (-0.3, 0.0)):
            g = kernel.generalized_fourier(_bump, p, pp, params, support=5.0)
            o = kernel.ordinary_fourier(_bump, p, pp, params, support=5.0)
            worst = max(worst, abs(g - o))
    return Check("generalized_fourier_classical_limit", _status(worst <= 1e-8), worst, 1e-8,
                 detail="compact bump potential on |x| < 5, mu in {1e3, 1e4}")


def check_momentum_completeness():
    params = ModelParams(1.0, 1.0, 3.0)
    g = lambda p: np.exp(-((p - 0.3) ** 2))
    p = 0.2
    errors = [abs(kernel.completeness_window(p, g, L, params) - float(g(p))) for L in (2.0, 8.0, 32.0)]
    ok = errors[0] > errors[1] > errors[2] and errors[2] < 1e-6
    return Check("momentum_completeness", _status(ok), errors, "decreasing, last < 1e-6",
                 detail="windowed x-integral against a Gaussian test function, L = 2, 8, 32")


def check_kinetic_expectation():
    worst = 0.0
    for mu in (0.5, 1.0, 7.0):
        params = ModelParams(1.3, 0.7, mu)
        q = kernel.kinetic_expectation(params)
        worst = max(worst, abs(q - kernel.kinetic_expectation_closed_form(params)) / q)
    return Check("kinetic_expectation_gaussian_moment", _status(worst <= 1e-10), worst, 1e-10,
                 detail="quadrature vs mu^3 / (8 sqrt(pi) m hbar)")


def info_kinetic_printed():
    params = ModelParams.natural(1.0)
    quad = kernel.kinetic_expectation(params)
    printed = kernel.kinetic_expectation_printed(params)
    params10 = ModelParams.natural(10.0)
    return Check(
        "kinetic_expectation_printed_value",
        INFO,
        {
            "quadrature_mu1": quad,
            "printed_mu1": printed,
            "ratio_mu1": printed / quad,
            "ratio_mu10": kernel.kinetic_expectation_printed(params10) / kernel.kinetic_expectation(params10),
        },
        detail="quoted value mu^(3/2)/(16 sqrt(pi) m hbar) vs the integral, which scales as mu^3",
    )


# -- delta well --------------------------------------------------------------------

def _bisect(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0 or hi - lo <= 2e-16 * abs(mid):
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def check_delta_spectral_fidelity():
    coupling = delta.DeltaCoupling(1.0)
    worst_res = worst_rel = 0.0
    for mu in np.logspace(np.log10(2.0), 4.0, 20):
        params = ModelParams.natural(float(mu))
        state = delta.solve_bound_state(params, coupling)
        f = lambda p: delta.spectral_residual(p, params, coupling)
        ref = _bisect(f, 1e-6, 10.0)
        worst_res = max(worst_res, abs(f(state.p0)))
        worst_rel = max(worst_rel, abs(state.p0 - ref) / ref)
    ok = worst_res <= 1e-10 and worst_rel <= 1e-12
    return Check("delta_spectral_fidelity", _status(ok), {"max_abs_F": worst_res, "max_rel_vs_bisection": worst_rel},
                 {"max_abs_F": 1e-10, "max_rel_vs_bisection": 1e-12}, criterion="3")


def check_delta_root_uniqueness():
    coupling = delta.DeltaCoupling(1.0)
    counts = []
    for mu in np.logspace(-1, 4, 11):
        params = ModelParams.natural(float(mu))
        p = np.linspace(1e-4, 10.0, 4001)
        f = delta.spectral_residual(p, params, coupling)
        counts.append(int(np.sum(np.sign(f[1:]) != np.sign(f[:-1]))))
    return Check("delta_root_uniqueness", _status(all(c == 1 for c in counts)), counts, 1,
                 detail="sign changes of F on (0, 10 m kappa/hbar] over a log grid of mu")


def check_delta_energy_ordering():
    coupling = delta.DeltaCoupling(1.0)
    mus = np.logspace(-1, 5, 25)
    energies = [delta.solve_bound_state(ModelParams.natural(float(m)), coupling).energy for m in mus]
    ok = all(e < 0 for e in energies) and all(a > b for a, b in zip(energies[:-1], energies[1:]))
    return Check("delta_energy_ordering", _status(ok), ok, True,
                 detail="E decreases monotonically (deeper binding) as mu grows")


def check_delta_asymptotic_order():
    coupling = delta.DeltaCoupling(1.0)
    gaps = []
    for mu in (10.0, 20.0, 40.0, 80.0):
        params = ModelParams.natural(mu)
        e = delta.solve_bound_state(params, coupling).energy
        gaps.append(abs(e - delta.energy_asymptotic(params, coupling)) / abs(e))
    ratios = [a / b for a, b in zip(gaps[:-1], gaps[1:])]
    return Check("delta_asymptotic_order", _status(min(ratios) >= 7.0), {"relative_gaps": gaps, "ratios": ratios},
                 ">= 7 per doubling", criterion="4",
                 detail="the large-mu energy is first-order accurate; its remainder is O(1/mu^2), ratio -> 4")


def _delta_draws(n, offset):
    rng = _rng(offset)
    for _ in range(n):
        kappa = float(np.exp(rng.uniform(np.log(0.2), np.log(5.0))))
        mu = float(np.exp(rng.uniform(np.log(0.5), np.log(100.0))))
        yield ModelParams.natural(mu), delta.DeltaCoupling(kappa)


def _norm_tol():
    return Tolerance(abs_tol=1e-300, rel_tol=1e-12, max_iter=2000)


def check_delta_normalization(draws=10):
    worst = 0.0
    for params, coupling in _delta_draws(draws, 6):
        state = delta.solve_bound_state(params, coupling)
        total = integrate(lambda p: delta.psi_momentum(p, state, params) ** 2, FullLine(0.0, state.p0), _norm_tol())
        worst = max(worst, abs(total - 1.0))
    return Check("delta_normalization", _status(worst <= 1e-8), worst, 1e-8, criterion="6",
                 detail=f"{draws} random (kappa, mu)")


def check_delta_classical_limit():
    params = ModelParams.natural(1e6)
    coupling = delta.DeltaCoupling(1.0)
    state = delta.solve_bound_state(params, coupling)
    de = abs(state.energy + 0.5)
    p = np.linspace(-5, 5, 41)
    x = np.linspace(-4, 4, 41)
    dpsi = float(np.max(np.abs(delta.psi_momentum(p, state, params) - delta.psi_momentum_classical(p, params, coupling))))
    dphi = float(np.max(np.abs(delta.phi_position(x, state, params, "residue")
                               - delta.phi_position_classical(x, params, coupling))))
    ok = de <= 1e-5 and dpsi <= 1e-4 and dphi <= 1e-4
    return Check("delta_classical_limit", _status(ok), {"energy": de, "psi": dpsi, "phi_residue_form": dphi},
                 {"energy": 1e-5, "psi": 1e-4, "phi_residue_form": 1e-4}, criterion="2")


def info_delta_phi_prefactor():
    params = ModelParams.natural(5.0)
    coupling = delta.DeltaCoupling(1.0)
    state = delta.solve_bound_state(params, coupling)
    rows = {}
    for x in (0.0, 1.0, 2.0):
        quad = delta.phi_position_quadrature(x, state, params)
        printed = delta.phi_position(x, state, params, "printed")
        residue = delta.phi_position(x, state, params, "residue")
        rows[f"x={x:g}"] = {
            "quadrature": quad,
            "printed": printed,
            "residue": residue,
            "printed_rel_dev": (printed - quad) / quad,
            "residue_rel_dev": (residue - quad) / quad,
        }
    rows["printed_over_residue"] = math.pi * state.p0**2
    return Check("delta_phi_prefactor", INFO, rows,
                 detail="quoted position-space prefactor vs direct inverse transform (mu = 5, natural units)")


def check_delta_veff_area():
    coupling = delta.DeltaCoupling(1.0)
    worst = 0.0
    for mu in (1.0, 2.0, 5.0, 10.0):
        worst = max(worst, abs(delta.v_eff_area(ModelParams.natural(mu), coupling) + coupling.kappa))
    depth = delta.v_eff_position(0.0, ModelParams.natural(2.0), coupling)
    ok = worst <= 1e-10 and abs(depth + 1.0 / SQRT_PI) <= 1e-15
    return Check("delta_veff_area", _status(ok), {"area_error": worst, "depth_mu2": depth}, 1e-10, criterion="8")


def check_delta_nystrom(grid_size=400):
    params = ModelParams.natural(10.0)
    coupling = delta.DeltaCoupling(1.0)
    exact = delta.solve_bound_state(params, coupling).energy
    res = oracle.delta_nystrom(params, coupling, grid_size)
    rel = abs(res.ground_energy - exact) / abs(exact)
    n_neg = len(res.negative_energies())
    if grid_size < COARSE_GRID:
        status = WARN
    else:
        status = _status(rel <= 1e-6 and n_neg == 1)
    return Check("delta_nystrom", status, {"rel_error": rel, "negative_eigenvalues": n_neg, "grid": grid_size},
                 1e-6, criterion="5", detail="coarse-grid warning below %d nodes" % COARSE_GRID)


def check_nystrom_grid_refinement():
    params = ModelParams.natural(10.0)
    coupling = delta.DeltaCoupling(1.0)
    exact = delta.solve_bound_state(params, coupling).energy
    floor = CONVERGENCE_FLOOR * abs(exact)
    out = {}
    ok = True
    for sizes in ((25, 50, 100, 200), (100, 200, 400, 800)):
        g = [oracle.delta_nystrom(params, coupling, n).ground_energy for n in sizes]
        diffs = [abs(a - b) for a, b in zip(g[:-1], g[1:])]
        ok &= all(d2 < d1 or d2 <= floor for d1, d2 in zip(diffs[:-1], diffs[1:]))
        ok &= all(e >= exact - max(d, floor) for e, d in zip(g, diffs + [diffs[-1]]))
        out[str(sizes)] = diffs
    return Check("nystrom_grid_refinement", _status(ok), out, f"monotone down to {CONVERGENCE_FLOOR:g} relative",
                 criterion="5")


# -- Coulomb -----------------------------------------------------------------------

def check_coulomb_branch_identity():
    # the (1 -/+ sqrt(D))^2 form cancels on the minus branch, hence the looser bound there
    rng = _rng(7)
    worst_minus = worst_plus = 0.0
    for _ in range(50):
        ze2 = float(rng.uniform(0.2, 3.0))
        n = int(rng.integers(1, 5))
        hbar, mass = (float(v) for v in rng.uniform(0.5, 2.0, 2))
        mu = 2.0 * mass * ze2 / (hbar * n) * float(np.exp(rng.uniform(0.01, 4.0)))
        params = ModelParams(hbar, mass, mu)
        c = coulomb.CoulombCoupling(ze2, n)
        spectrum = coulomb.spectral_roots(params, c)
        em, ep = coulomb.branch_energies_closed_form(params, c)
        worst_minus = max(worst_minus, abs(em - spectrum.e_minus) / abs(spectrum.e_minus))
        worst_plus = max(worst_plus, abs(ep - spectrum.e_plus) / abs(spectrum.e_plus))
    ok = worst_minus <= 1e-9 and worst_plus <= 1e-12
    return Check("coulomb_branch_identity", _status(ok), {"minus": worst_minus, "plus": worst_plus},
                 {"minus": 1e-9, "plus": 1e-12}, detail="closed-form energies vs quadratic roots, 50 draws")


def check_coulomb_classical_limit():
    params = ModelParams.natural(1e6)
    spectrum = coulomb.spectral_roots(params, coulomb.CoulombCoupling(1.0, 1))
    err = abs(spectrum.e_minus + 0.5)
    return Check("coulomb_classical_limit", _status(err <= 1e-5), err, 1e-5, criterion="2")


def check_coulomb_min_length_hydrogen():
    t0 = time.perf_counter()
    params = ModelParams(HBAR, ELECTRON_MASS, 1.0)
    bound = coulomb.min_length_bound(1, params, coulomb.CoulombCoupling(HYDROGEN_Z_E2, 1))
    rel = abs(bound - 3.742e-11) / 3.742e-11
    return Check("coulomb_min_length_hydrogen", _status(rel <= 1e-3), {"bound_m": bound, "rel_dev": rel}, 1e-3,
                 criterion="1", seconds=time.perf_counter() - t0)


def _coulomb_draws(n, offset):
    rng = _rng(offset)
    for _ in range(n):
        ze2 = float(np.exp(rng.uniform(np.log(0.3), np.log(3.0))))
        level = int(rng.integers(1, 4))
        mu = 2.0 * ze2 / level * float(np.exp(rng.uniform(np.log(1.5), np.log(50.0))))
        yield ModelParams.natural(mu), coulomb.CoulombCoupling(ze2, level)


def check_coulomb_normalization(draws=10):
    worst = 0.0
    for params, c in _coulomb_draws(draws, 8):
        state = coulomb.bound_state(params, c)
        total = integrate(lambda p: np.abs(coulomb.psi_closed_form(p, state, params, c)) ** 2,
                          FullLine(0.0, state.p0), _norm_tol())
        worst = max(worst, abs(total - 1.0))
    return Check("coulomb_normalization", _status(worst <= 1e-8), worst, 1e-8, criterion="6",
                 detail=f"{draws} random (Ze^2, n, mu) with positive discriminant")


def check_coulomb_ode_scaling():
    c = coulomb.CoulombCoupling(1.0, 1)
    devs = [oracle.coulomb_ode_deviation(ModelParams.natural(mu), c) for mu in (10.0, 20.0, 40.0)]
    cplx = [d["complex"] for d in devs]
    ratios = [a / b for a, b in zip(cplx[:-1], cplx[1:])]
    modulus = max(d["modulus"] for d in devs)
    ok = all(8.0 <= r <= 32.0 for r in ratios) and modulus <= 1e-9
    return Check("coulomb_ode_scaling", _status(ok),
                 {"complex_deviation": cplx, "ratios": ratios, "max_modulus_deviation": modulus},
                 {"ratios": [8, 32], "modulus": 1e-9}, criterion="9")


def check_coulomb_phase_winding():
    params = ModelParams.natural(1e3)
    recovered = []
    for n in (1, 2, 3):
        c = coulomb.CoulombCoupling(1.0, n)
        state = coulomb.bound_state(params, c)
        recovered.append(coulomb.arctan_phase_winding(state, params, c) / (-2.0 * math.pi))
    ok = all(abs(r - n) < 1e-9 for r, n in zip(recovered, (1, 2, 3)))
    return Check("coulomb_phase_winding", _status(ok), recovered, [1, 2, 3])


def check_coulomb_nystrom(grid_size=600):
    params = ModelParams.natural(20.0)
    c = coulomb.CoulombCoupling(1.0, 1)
    exact = coulomb.spectral_roots(params, c).e_minus
    grounds = [oracle.coulomb_nystrom(params, c, n).ground_energy for n in (grid_size // 4, grid_size // 2, grid_size)]
    res = oracle.coulomb_nystrom(params, c, grid_size)
    rel = abs(res.ground_energy - exact) / abs(exact)
    if grid_size < COARSE_GRID:
        status = WARN
    else:
        status = _status(rel <= 0.02)
    return Check(
        "coulomb_nystrom",
        status,
        {"ground_energy": res.ground_energy, "e_minus": exact, "rel_error": rel,
         "refinement_sequence": grounds, "max_imag_ratio": res.max_imag_ratio,
         "negative_eigenvalues": len(res.negative_energies())},
        0.02,
        criterion="5",
        detail="the step kernel is lower-triangular in momentum order, so the discretized spectrum is "
               "the kinetic diagonal and has no negative eigenvalues",
    )


def check_coulomb_veff_origin():
    vals = [coulomb.v_eff_position(0.0, ModelParams.natural(mu), coulomb.CoulombCoupling()) for mu in (0.5, 2, 10, 100)]
    return Check("coulomb_veff_origin", _status(all(v == 0.0 for v in vals)), vals, 0.0, criterion="8")


def check_coulomb_veff_long_range():
    params = ModelParams(1.0, 1.0, 2.0)
    x = 2.0 * 5.0 * params.hbar / params.mu  # z = 5
    xv = x * coulomb.v_eff_position(x, params, coulomb.CoulombCoupling(1.0))
    rel = abs(xv + 1.0)
    return Check("coulomb_veff_long_range", _status(rel <= 0.02), {"x_times_veff": xv, "rel_dev": rel}, 0.02,
                 criterion="8", detail="z = mu x / 2 hbar = 5; the exact tail is -Ze^2/x (1 + 1/2z^2 + ...)")


def _coulomb_veff_scan(c):
    worst_ratio, odd_dev = 0.0, 0.0
    for mu in (0.5, 2.0, 20.0):
        params = ModelParams.natural(mu)
        x = np.concatenate([-np.logspace(-4, 3, 400), np.logspace(-4, 3, 400)])
        v = coulomb.v_eff_position(x, params, c)
        worst_ratio = max(worst_ratio, float(np.max(np.abs(x * v)) / c.z_e2))
        odd_dev = max(odd_dev, float(np.max(np.abs(v + coulomb.v_eff_position(-x, params, c)))))
    return worst_ratio, odd_dev


def check_coulomb_veff_sandwich():
    ratio, odd_dev = _coulomb_veff_scan(coulomb.CoulombCoupling(1.3))
    ok = ratio <= 1.0 and odd_dev == 0.0
    return Check("coulomb_veff_sandwich", _status(ok), {"max_abs_x_veff_over_ze2": ratio, "odd_deviation": odd_dev},
                 1.0, detail="|V_eff| <= Ze^2/|x| on a log grid; x V_eff = -Ze^2 2z D(z) with D the Dawson "
                             "function peaks at 1.2847 Ze^2 near z = 1.50, so the bound is exceeded")


def check_coulomb_veff_envelope():
    ratio, odd_dev = _coulomb_veff_scan(coulomb.CoulombCoupling(1.3))
    ok = ratio <= COULOMB_VEFF_PEAK * (1 + 1e-12) and odd_dev == 0.0
    return Check("coulomb_veff_envelope", _status(ok), {"max_abs_x_veff_over_ze2": ratio, "odd_deviation": odd_dev},
                 COULOMB_VEFF_PEAK, detail="|x V_eff| <= max_z 2z D(z) Ze^2 and V_eff odd")


def check_coulomb_singularity_bounded():
    params = ModelParams.natural(10.0)
    c = coulomb.CoulombCoupling(1.0, 1)
    state = coulomb.bound_state(params, c)
    s = coulomb.singularity_term(state, params, c)
    stripped = coulomb.singularity_term(state, params, c, strip_linear_phase=True)
    ok = s.is_finite and abs(s.value.imag) <= 1e-10 * abs(s.value)
    return Check("coulomb_singularity_bounded", _status(ok),
                 {"S": [s.value.real, s.value.imag], "S_without_linear_phase": [stripped.value.real, stripped.value.imag],
                  "limit_modulus": s.limit_modulus}, "finite; real by p -> -p symmetry")


def info_coulomb_expansion_sign():
    rows = []
    for mu in (10.0, 20.0, 100.0):
        rep = coulomb.expansion_report(ModelParams.natural(mu), coulomb.CoulombCoupling(1.0, 1))
        rows.append({k: rep[k] for k in ("mu", "e_minus_exact", "e_minus_printed_expansion",
                                         "e_minus_derived_expansion", "printed_minus_error", "derived_minus_error")})
    return Check("coulomb_expansion_sign", INFO, rows,
                 detail="quoted E(-) correction is -2 eps^2; expanding the exact root gives +2 eps^2")


# -- driver --------------------------------------------------------------------------

def all_checks(grid_size: int = 400) -> List[Callable[[], Check]]:
    return [
        check_erf_oddness,
        check_erf_series_oracle,
        check_quadrature_polynomial_exactness,
        check_gradshteyn_identity,
        check_find_root_inside_bracket,
        check_ode_integrator_exponential,
        check_ml_overlap_quadrature,
        check_ml_overlap_diagonal,
        check_ml_overlap_symmetry,
        check_generalized_fourier_classical_limit,
        check_momentum_completeness,
        check_kinetic_expectation,
        info_kinetic_printed,
        check_delta_spectral_fidelity,
        check_delta_root_uniqueness,
        check_delta_energy_ordering,
        check_delta_asymptotic_order,
        check_delta_normalization,
        check_delta_classical_limit,
        info_delta_phi_prefactor,
        check_delta_veff_area,
        lambda: check_delta_nystrom(grid_size),
        check_nystrom_grid_refinement,
        check_coulomb_branch_identity,
        check_coulomb_classical_limit,
        check_coulomb_min_length_hydrogen,
        check_coulomb_normalization,
        check_coulomb_ode_scaling,
        check_coulomb_phase_winding,
        lambda: check_coulomb_nystrom(int(round(1.5 * grid_size))),
        check_coulomb_veff_origin,
        check_coulomb_veff_long_range,
        check_coulomb_veff_sandwich,
        check_coulomb_veff_envelope,
        check_coulomb_singularity_bounded,
        info_coulomb_expansion_sign,
    ]


@dataclass
class Report:
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(c.failed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "passed": self.passed,
            "counts": {s: sum(c.status == s for c in self.checks) for s in (PASS, FAIL, WARN, INFO)},
            "checks": [_jsonable(asdict(c)) for c in self.checks],
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def run_suite(grid_size: int = 400, progress: Optional[Callable[[Check], None]] = None) -> Report:
    report = Report()
    for fn in all_checks(grid_size):
        t0 = time.perf_counter()
        try:
            check = fn()
        except Exception as exc:  # a crashing check is a failing check
            name = getattr(fn, "__name__", "check").removeprefix("check_")
            check = Check(name, FAIL, None, detail=f"{type(exc).__name__}: {exc}")
        check.seconds = time.perf_counter() - t0
        report.checks.append(check)
        if progress:
            progress(check)
    return report
