import math

import numpy as np
import pytest

from spde_density import (
    AdditiveModel,
    AdditiveModeKernel,
    KpzBrownianKernel,
    MultiplicativeFpCoefficients,
    MultiplicativeGbmKernel,
    NoiseSpec,
    SingleModeAmplitudes,
    ck_check,
    ck_smoke_additive,
    fp_identity_multiplicative,
    fp_residual_additive,
    fp_residual_kpz,
    multiplicative_pdf,
    validate,
)
from spde_density.bases import lambda_additive
from spde_density.spectral import AdditiveMoments


def _random_lobe_points(model, count, seed):
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < count:
        t = float(rng.uniform(0.05, 1.0))
        if rng.random() < 0.5:
            x = float(rng.uniform(0.02, 0.48))
            u = float(np.exp(rng.normal(2.0, 1.0)))
        else:
            x = float(rng.uniform(0.52, 0.98))
            u = -float(np.exp(rng.normal(2.0, 1.0)))
        points.append((u, t, x))
    return points


# -- analytic identity -----------------------------------------------------------


def test_reference_coefficients(multiplicative_model):
    coeffs = MultiplicativeFpCoefficients.from_model(multiplicative_model)
    assert coeffs.A == pytest.approx(0.25, abs=1e-14)
    assert coeffs.B == pytest.approx(-4.5, abs=1e-12)
    assert coeffs.C == pytest.approx(-5.0, abs=1e-12)
    # internal identities
    assert coeffs.B - 2.0 * coeffs.A == pytest.approx(coeffs.C, abs=1e-12)
    assert coeffs.B == pytest.approx(3.0 * coeffs.A - multiplicative_model.b_m, abs=1e-12)


def test_identity_residual_vanishes_on_lobes(multiplicative_model):
    for u, t, x in _random_lobe_points(multiplicative_model, 200, seed=17):
        residual = fp_identity_multiplicative(u, t, x, multiplicative_model)
        p = multiplicative_pdf(u, t, x, multiplicative_model)
        assert abs(residual) <= 1e-10 * max(1.0, p), (u, t, x)


def test_halved_bracket_variant_fails_identity(multiplicative_model):
    # the alternate coefficient set differs by b_m/2 in both lower-order
    # terms and cannot satisfy the identity at generic points
    u, t, x = 8.0, 0.3, 0.125
    residual = fp_identity_multiplicative(u, t, x, multiplicative_model,
                                          convention="halved-bracket")
    assert abs(residual) > 1e-3


def test_internal_identity_holds_for_random_models():
    rng = np.random.default_rng(23)
    for _ in range(30):
        from spde_density import MultiplicativeModel

        model = MultiplicativeModel(
            a=float(rng.uniform(0.1, 2.0)), b=float(rng.uniform(0.0, 2.0)),
            c=float(rng.normal()), alpha=float(rng.uniform(0.1, 1.9)),
            eps=float(rng.uniform(0.1, 1.5)), m=int(rng.integers(1, 4)),
            q_m=float(rng.uniform(0.1, 2.0)),
            log_mean0=0.0, log_var0=1.0,
        )
        coeffs = MultiplicativeFpCoefficients.from_model(model)
        assert coeffs.B - 2.0 * coeffs.A == pytest.approx(coeffs.C, rel=1e-12, abs=1e-12)


# -- finite-difference residuals ----------------------------------------------------


def test_additive_residual_refines_at_second_order(additive_moments):
    report = fp_residual_additive(
        additive_moments, 0.5, u_range=(-1.6, 2.8), t_range=(0.5, 1.5), du=0.1, dt=0.02
    )
    assert 1.5 <= report.refinement_order <= 2.5
    fine = fp_residual_additive(
        additive_moments, 0.5, u_range=(-1.6, 2.8), t_range=(0.5, 1.5), du=0.05, dt=0.01
    )
    assert 3.0 <= report.max_abs_residual / fine.max_abs_residual <= 5.0


def test_time_constant_law_residual_is_roundoff():
    # tune the reaction so the kept mode has rate zero and no noise feeds it:
    # the density is time-constant and the residual is pure round-off
    b0 = (0.5 * math.pi) ** 2
    model = validate(
        AdditiveModel(
            a=1.0, b=b0, sigma=0.0,
            noise=NoiseSpec(SingleModeAmplitudes(1, 1.0), truncation_order=1),
            initial_mode_laws=[(0.2, 0.05)],
        )
    )
    eng = AdditiveMoments(model, n_modes=1)
    assert abs(lambda_additive(1, 1.0, b0)) < 1e-12
    report = fp_residual_additive(
        eng, 0.3, u_range=(-1.0, 1.5), t_range=(0.2, 1.2), du=0.05, dt=0.02
    )
    assert report.max_abs_residual < 1e-10


def test_first_time_row_uses_one_sided_stencil(additive_moments):
    # a grid starting at t = 0 falls back to the one-sided stencil on its
    # first row; reconstruct that row independently and compare
    from spde_density.fokker_planck import _gaussian_residual_field

    x = 0.5
    u_range, t_range, du, dt = (-1.5, 2.5), (0.0, 1.0), 0.1, 0.02
    residual, p, du_act, dt_act = _gaussian_residual_field(
        lambda tv: additive_moments.mu(tv, x),
        lambda tv: additive_moments.nu(tv, x),
        lambda tv: -additive_moments.dmu_dt(tv, x),
        lambda tv: additive_moments.dnu_dt(tv, x),
        u_range,
        t_range,
        du,
        dt,
    )
    dp_dt_edge = (-3.0 * p[0] + 4.0 * p[1] - p[2]) / (2.0 * dt_act)
    dp_du = (p[0, 2:] - p[0, :-2]) / (2.0 * du_act)
    d2p = (p[0, 2:] - 2.0 * p[0, 1:-1] + p[0, :-2]) / du_act**2
    m0 = -additive_moments.dmu_dt(0.0, x)
    g0 = additive_moments.dnu_dt(0.0, x)
    expected = dp_dt_edge[1:-1] - m0 * dp_du - 0.5 * g0 * d2p
    np.testing.assert_allclose(residual[0, 1:-1], expected, rtol=1e-12, atol=1e-12)


def test_kpz_residual_constants_and_refinement(kpz_model):
    scale = 2.0 * kpz_model.theta / kpz_model.xi
    assert -scale * kpz_model.b_tilde_m == pytest.approx(
        2.0 * (math.pi**2 + 0.25), abs=1e-12
    )
    assert (scale * kpz_model.eps * kpz_model.q_m) ** 2 / 2.0 == pytest.approx(
        1.0, abs=1e-12
    )
    report = fp_residual_kpz(
        kpz_model, 0.125, kappa_range=(-12.0, 0.0), t_range=(0.05, 0.55), dk=0.25, dt=0.01
    )
    assert 1.5 <= report.refinement_order <= 2.5


# -- kernel composition ---------------------------------------------------------------


def _kernel_grid(law, count=20, halfwidth=2.5):
    from spde_density import GaussianLaw, SignedLogNormalLaw

    if isinstance(law, GaussianLaw):
        sd = math.sqrt(law.variance)
        return np.linspace(law.mean - halfwidth * sd, law.mean + halfwidth * sd, count)
    assert isinstance(law, SignedLogNormalLaw)
    sd = math.sqrt(law.log_var)
    return np.sort(
        law.sign * np.exp(np.linspace(law.log_mean - halfwidth * sd,
                                      law.log_mean + halfwidth * sd, count))
    )


def test_additive_mode_kernel_composition(additive_moments):
    kernel = AdditiveModeKernel(additive_moments, 1, 0.5)
    s, r, t, w = 0.2, 0.5, 1.0, 0.3
    grid = _kernel_grid(kernel.law(w, s, t))
    assert ck_check(kernel, w, s, r, t, grid) <= 1e-8


def test_gbm_kernel_composition(multiplicative_model):
    kernel = MultiplicativeGbmKernel(multiplicative_model)
    s, r, t, w = 0.2, 0.5, 1.0, 8.0
    grid = _kernel_grid(kernel.law(w, s, t))
    assert ck_check(kernel, w, s, r, t, grid) <= 1e-8
    # negative branch
    grid_neg = _kernel_grid(kernel.law(-w, s, t))
    assert ck_check(kernel, -w, s, r, t, grid_neg) <= 1e-8


def test_kpz_kernel_composition(kpz_model):
    kernel = KpzBrownianKernel(kpz_model)
    s, r, t, w = 0.2, 0.5, 1.0, -3.0
    grid = _kernel_grid(kernel.law(w, s, t))
    assert ck_check(kernel, w, s, r, t, grid) <= 1e-8


def test_composition_collapses_when_intermediate_equals_start(additive_moments):
    kernel = AdditiveModeKernel(additive_moments, 1, 0.5)
    s, t, w = 0.2, 1.0, 0.3
    grid = _kernel_grid(kernel.law(w, s, t))
    assert ck_check(kernel, w, s, s, t, grid) == 0.0


def test_composition_error_invariant_under_grid_translation(additive_moments):
    kernel = AdditiveModeKernel(additive_moments, 1, 0.5)
    s, r, t, w = 0.2, 0.5, 1.0, 0.3
    grid = _kernel_grid(kernel.law(w, s, t))
    base = ck_check(kernel, w, s, r, t, grid)
    shifted = ck_check(kernel, w, s, r, t, grid + 0.2)
    assert shifted <= 1e-8 and base <= 1e-8


# -- scalar-kernel smoke check ----------------------------------------------------------


def test_scalar_semigroup_smoke(additive_moments):
    report = ck_smoke_additive(additive_moments, 0.5, w=0.3, s=0.2, r=0.5, t=1.0,
                               n_samples=20000, seed=4)
    assert report.mean_ok, (report.mean_direct, report.mean_composed, report.mean_tolerance)
    assert report.var_ok, (report.var_direct, report.var_composed, report.var_tolerance)
