import math

import numpy as np
import pytest

from spde_density import (
    additive_pdf,
    estimate_additive_pdf,
    estimate_kpz_pdf,
    estimate_multiplicative_pdf,
    euler_maruyama,
    kpz_pdf,
    multiplicative_pdf,
    AdditiveModel,
    NoiseSpec,
    SingleModeAmplitudes,
    validate,
)
from spde_density.errors import (
    DegenerateInitialLaw,
    NegativeDiffusion,
    RegionViolation,
    WindowViolation,
)
from spde_density.feynman_kac import SdeCoefficients, _em_terminal_ensemble
from spde_density.spectral import AdditiveMoments


def test_zero_coefficients_return_initial_value():
    coeffs = SdeCoefficients(drift=lambda s, x: 0.0, diffusion=lambda s, x: 0.0,
                             s0=0.0, T=1.0)
    assert euler_maruyama(coeffs, 0.8, dt=0.1, seed=0) == 0.8


def test_constant_drift_integrates_exactly():
    coeffs = SdeCoefficients(drift=lambda s, x: 2.5, diffusion=lambda s, x: 0.0,
                             s0=0.3, T=1.0)
    value = euler_maruyama(coeffs, 1.0, dt=0.01, seed=0)
    assert value == pytest.approx(1.0 + 2.5 * 0.7, abs=1e-12)


def test_last_step_lands_exactly_on_horizon():
    # horizon not a multiple of dt: the shortened last step still reaches T
    coeffs = SdeCoefficients(drift=lambda s, x: 1.0, diffusion=lambda s, x: 0.0,
                             s0=0.0, T=0.25)
    value = euler_maruyama(coeffs, 0.0, dt=0.1, seed=0)
    assert value == pytest.approx(0.25, abs=1e-14)


def test_negative_diffusion_rejected():
    coeffs = SdeCoefficients(drift=lambda s, x: 0.0, diffusion=lambda s, x: -1.0,
                             s0=0.0, T=1.0)
    with pytest.raises(NegativeDiffusion):
        euler_maruyama(coeffs, 0.0, dt=0.5, seed=0)


def test_ensemble_rows_match_single_paths():
    coeffs = SdeCoefficients(
        drift=lambda s, x: -4.5 * x,
        diffusion=lambda s, x: math.sqrt(2) / 2 * np.abs(x),
        s0=0.0, T=0.3,
    )
    ensemble = _em_terminal_ensemble(coeffs, 1.0, dt=0.01, seed=9, n_paths=5)
    for i in range(5):
        single = euler_maruyama(coeffs, 1.0, dt=0.01, seed=9, path_index=i)
        assert ensemble[i] == single  # bit-identical


def test_em_weak_convergence_to_gbm_moments(multiplicative_model):
    # drift -9/2 X, diffusion (sqrt(2)/2)|X|: exact moments of the linear SDE
    # as the oracle, with the known one-step-mean recursion bounding the bias
    b_drift = 1.5 * multiplicative_model.eps_m**2 - multiplicative_model.b_m
    eps = multiplicative_model.eps_m
    t, u = 0.2, 1.0
    exact_mean = u * math.exp(b_drift * t)

    errors = []
    for dt in (0.02, 0.01, 0.005):
        coeffs = SdeCoefficients(
            drift=lambda s, x: b_drift * x,
            diffusion=lambda s, x: eps * np.abs(x),
            s0=0.0, T=t,
        )
        terminal = _em_terminal_ensemble(coeffs, u, dt=dt, seed=21, n_paths=200_000)
        emp_mean = float(np.mean(terminal))
        stderr = float(np.std(terminal, ddof=1) / math.sqrt(len(terminal)))
        steps = int(round(t / dt))
        biased_mean = u * (1.0 + b_drift * dt) ** steps  # exact EM mean
        assert abs(emp_mean - biased_mean) <= 4.0 * stderr
        errors.append(abs(biased_mean - exact_mean))
    # weak order one: error scales ~ dt
    assert errors[0] / errors[1] == pytest.approx(2.0, rel=0.25)
    assert errors[1] / errors[2] == pytest.approx(2.0, rel=0.25)


# -- additive estimator -------------------------------------------------------------


def test_additive_estimate_at_time_zero_is_exact(additive_moments):
    est = estimate_additive_pdf(0.4, 0.0, 0.5, T=2.0, dt=0.01, n_paths=100, seed=0,
                                moments=additive_moments)
    assert est.stderr == 0.0
    assert est.value == pytest.approx(additive_pdf(0.4, 0.0, 0.5, additive_moments),
                                      rel=1e-14)


def test_additive_estimate_matches_closed_form(additive_moments):
    u = float(additive_moments.mu(1.0, 0.5))
    est = estimate_additive_pdf(u, 1.0, 0.5, T=2.0, dt=0.01, n_paths=4000, seed=3,
                                moments=additive_moments)
    closed = additive_pdf(u, 1.0, 0.5, additive_moments)
    assert abs(est.value - closed) <= 4.0 * est.stderr + 0.01


def test_additive_estimate_requires_random_initial_law():
    model = validate(
        AdditiveModel(
            a=1.0, b=0.0, sigma=0.0,
            noise=NoiseSpec(SingleModeAmplitudes(1, 1.0), truncation_order=2),
            initial_mode_laws=[(0.3, 0.0)],
        )
    )
    eng = AdditiveMoments(model, n_modes=2)
    with pytest.raises(DegenerateInitialLaw):
        estimate_additive_pdf(0.3, 0.5, 0.25, T=1.0, dt=0.01, n_paths=10, seed=0,
                              moments=eng)


# -- multiplicative estimator ----------------------------------------------------------


def test_multiplicative_estimate_time_zero(multiplicative_model):
    est = estimate_multiplicative_pdf(8.0, 0.0, 0.125, dt=1e-4, n_paths=100, seed=0,
                                      model=multiplicative_model)
    assert est.stderr == 0.0
    assert est.value == pytest.approx(
        multiplicative_pdf(8.0, 0.0, 0.125, multiplicative_model), rel=1e-14
    )


def test_multiplicative_estimate_region_guard(multiplicative_model):
    with pytest.raises(RegionViolation):
        estimate_multiplicative_pdf(-1.0, 0.3, 0.125, dt=1e-4, n_paths=10, seed=0,
                                    model=multiplicative_model)


def test_exact_sampler_agrees_with_closed_form(multiplicative_model):
    t, x = 0.3, 0.125
    for u in (4.0, 9.0, 16.0):
        est = estimate_multiplicative_pdf(u, t, x, dt=1e-4, n_paths=20000, seed=5,
                                          model=multiplicative_model)
        closed = multiplicative_pdf(u, t, x, multiplicative_model)
        assert abs(est.value - closed) <= 3.5 * est.stderr, (u, est.value, closed)


def test_exact_sampler_negative_branch(multiplicative_model):
    t, x, u = 0.3, 0.625, -9.0
    est = estimate_multiplicative_pdf(u, t, x, dt=1e-4, n_paths=20000, seed=6,
                                      model=multiplicative_model)
    closed = multiplicative_pdf(u, t, x, multiplicative_model)
    assert abs(est.value - closed) <= 3.5 * est.stderr


def test_euler_and_exact_schemes_agree(multiplicative_model):
    t, x, u = 0.3, 0.125, 9.0
    exact = estimate_multiplicative_pdf(u, t, x, dt=1e-4, n_paths=20000, seed=7,
                                        model=multiplicative_model, scheme="exact-gbm")
    euler = estimate_multiplicative_pdf(u, t, x, dt=1e-4, n_paths=20000, seed=8,
                                        model=multiplicative_model, scheme="euler")
    combined = math.hypot(exact.stderr, euler.stderr)
    # three combined standard errors plus an O(dt) bias allowance
    assert abs(exact.value - euler.value) <= 3.0 * combined + 0.05 * 1e-4 * abs(exact.value) + 1e-3


# -- interface-growth estimator -----------------------------------------------------------


def test_kpz_estimate_time_zero(kpz_model):
    est = estimate_kpz_pdf(-3.0, 0.0, 0.125, T=0.5, dt=0.01, n_paths=50, seed=0,
                           model=kpz_model)
    assert est.stderr == 0.0
    assert est.value == pytest.approx(kpz_pdf(-3.0, 0.0, 0.125, kpz_model), rel=1e-14)


def test_kpz_estimate_window_guard(kpz_model):
    with pytest.raises(WindowViolation):
        estimate_kpz_pdf(0.0, 0.3, 0.01, T=0.5, dt=0.01, n_paths=10, seed=0,
                         model=kpz_model)


def test_kpz_estimate_matches_closed_form(kpz_model):
    t, x = 0.3, 0.125
    law_mean = kpz_pdf(-5.3, t, x, kpz_model)
    est = estimate_kpz_pdf(-5.3, t, x, T=0.5, dt=0.01, n_paths=20000, seed=11,
                           model=kpz_model)
    assert abs(est.value - law_mean) <= 3.5 * est.stderr


# -- determinism and consistency --------------------------------------------------------


def test_estimates_are_seed_deterministic(additive_moments, multiplicative_model):
    a1 = estimate_additive_pdf(0.5, 1.0, 0.5, T=2.0, dt=0.01, n_paths=3000, seed=42,
                               moments=additive_moments)
    a2 = estimate_additive_pdf(0.5, 1.0, 0.5, T=2.0, dt=0.01, n_paths=3000, seed=42,
                               moments=additive_moments)
    assert a1 == a2
    m1 = estimate_multiplicative_pdf(9.0, 0.3, 0.125, dt=1e-4, n_paths=3000, seed=42,
                                     model=multiplicative_model)
    m2 = estimate_multiplicative_pdf(9.0, 0.3, 0.125, dt=1e-4, n_paths=3000, seed=42,
                                     model=multiplicative_model)
    assert m1 == m2


def test_thread_count_never_changes_results(additive_moments):
    serial = estimate_additive_pdf(0.5, 1.0, 0.5, T=2.0, dt=0.01, n_paths=5000, seed=13,
                                   moments=additive_moments, threads=1)
    threaded = estimate_additive_pdf(0.5, 1.0, 0.5, T=2.0, dt=0.01, n_paths=5000, seed=13,
                                     moments=additive_moments, threads=4)
    assert serial == threaded


def test_monte_carlo_error_scales_like_inverse_sqrt(multiplicative_model):
    # mean absolute deviation from the closed form over several seeds,
    # at three ensemble sizes; the log-log slope sits near -1/2
    t, x, u = 0.3, 0.125, 9.0
    closed = multiplicative_pdf(u, t, x, multiplicative_model)
    sizes = (1000, 10000, 100000)
    mean_abs = []
    for n in sizes:
        devs = [
            abs(
                estimate_multiplicative_pdf(u, t, x, dt=1e-4, n_paths=n, seed=seed,
                                            model=multiplicative_model).value
                - closed
            )
            for seed in range(40, 52)
        ]
        mean_abs.append(np.mean(devs))
    slope = np.polyfit(np.log10(sizes), np.log10(mean_abs), 1)[0]
    assert slope == pytest.approx(-0.5, abs=0.15)
