import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import lognorm

from spde_density import (
    AdditiveModeKernel,
    DegenerateAtomLaw,
    GaussianLaw,
    KpzBrownianKernel,
    MultiplicativeGbmKernel,
    SignedLogNormalLaw,
    additive_law,
    additive_pdf,
    classify_region,
    dirac_limit_mass,
    kpz_law,
    kpz_pdf,
    lognormal_partials,
    multiplicative_law,
    multiplicative_pdf,
)
from spde_density.densities import multiplicative_log_moments
from spde_density.errors import (
    DegenerateLaw,
    DegenerateVariance,
    RegionViolation,
    WindowViolation,
)
from spde_density.numerics import gauss_hermite_mean
from spde_density.oracle import sample_multiplicative


# -- additive law -----------------------------------------------------------------


def test_additive_pdf_peak_value(additive_moments):
    t, x = 1.0, 0.5
    mu = additive_moments.mu(t, x)
    nu = additive_moments.nu(t, x)
    assert additive_pdf(mu, t, x, additive_moments) == pytest.approx(
        1.0 / math.sqrt(2.0 * math.pi * nu), rel=1e-14
    )


def test_additive_pdf_normalization(additive_moments):
    t, x = 1.0, 0.5
    law = additive_law(t, x, additive_moments)
    total, _ = quad(law.pdf, law.mean - 12 * math.sqrt(law.variance),
                    law.mean + 12 * math.sqrt(law.variance), epsabs=1e-12)
    assert total == pytest.approx(1.0, abs=1e-10)


def test_additive_pdf_degenerate_at_boundary(additive_moments):
    with pytest.raises(DegenerateVariance):
        additive_pdf(0.0, 1.0, 1.0, additive_moments)
    law = additive_law(1.0, 1.0, additive_moments)
    assert isinstance(law, DegenerateAtomLaw)
    assert law.value == pytest.approx(math.sin(1.0), abs=1e-15)


# -- region classification -----------------------------------------------------------


def test_region_examples():
    assert classify_region(1.0, 0.25, 2).kind == "d1"
    assert classify_region(1.0, 0.25, 2).k == 0
    assert classify_region(-1.0, 0.75, 2).kind == "d2"
    assert classify_region(-1.0, 0.75, 2).k == 0
    assert classify_region(0.5, 0.5, 2).kind == "gamma"
    assert classify_region(-1.0, 0.25, 2).kind == "off_support"


def test_region_partition_against_scan_oracle():
    rng = np.random.default_rng(5)
    for m in (1, 2, 3, 5, 8):
        nodes = np.arange(m + 1) / m
        for _ in range(200):
            x = float(rng.uniform(0.0, 1.0))
            u = float(rng.normal())
            region = classify_region(u, x, m)
            if np.min(np.abs(x - nodes)) <= 1e-12:
                assert region.kind == "gamma"
                continue
            # brute-force lobe scan
            expected = "off_support"
            for k in range(0, (m - 1) // 2 + 1):
                if u > 0 and 2 * k / m < x < (2 * k + 1) / m:
                    expected = "d1"
                if u < 0 and (2 * k + 1) / m < x < min((2 * k + 2) / m, 1.0):
                    expected = "d2"
            if u == 0.0:
                expected = "off_support"
            assert region.kind == expected, (u, x, m)


def test_region_tolerance_snap():
    assert classify_region(2.0, 1.0 / 3.0, 3).kind == "gamma"
    assert classify_region(2.0, 1.0 / 3.0 + 5e-13, 3).kind == "gamma"
    assert classify_region(-2.0, 1.0 / 3.0 + 1e-9, 3).kind == "d2"
    assert classify_region(2.0, 1.0 / 3.0 + 1e-9, 3).kind == "off_support"


# -- multiplicative law ---------------------------------------------------------------


def test_reference_log_moments(multiplicative_model):
    rng = np.random.default_rng(9)
    for _ in range(100):
        t = float(rng.uniform(0.0, 1.0))
        x = float(rng.uniform(0.01, 0.49))
        mu, nu = multiplicative_log_moments(t, x, multiplicative_model)
        assert mu == pytest.approx(
            (4.0 + 21.0 * t) / 4.0 + math.log(abs(math.sqrt(2) * math.sin(2 * math.pi * x))),
            abs=1e-12,
        )
        assert nu == pytest.approx((1.0 + 2.0 * t) / 4.0, abs=1e-12)


def test_multiplicative_pdf_zero_off_support(multiplicative_model):
    assert multiplicative_pdf(-1.0, 0.3, 0.25, multiplicative_model) == 0.0
    assert multiplicative_pdf(1.0, 0.3, 0.75, multiplicative_model) == 0.0


def test_multiplicative_pdf_atom_on_nodes(multiplicative_model):
    with pytest.raises(DegenerateLaw):
        multiplicative_pdf(0.3, 0.3, 0.5, multiplicative_model)
    law = multiplicative_law(0.3, 0.5, multiplicative_model)
    assert isinstance(law, DegenerateAtomLaw)
    assert law.interval_mass(-1.0, 1.0) == 1.0
    assert law.interval_mass(0.5, 2.0) == 0.0


def test_multiplicative_pdf_mode_location(multiplicative_model):
    t, x = 0.3, 0.125
    mu, nu = multiplicative_log_moments(t, x, multiplicative_model)
    u_mode = math.exp(mu - nu)
    p_mode = multiplicative_pdf(u_mode, t, x, multiplicative_model)
    for bump in (0.97, 1.03):
        assert p_mode > multiplicative_pdf(u_mode * bump, t, x, multiplicative_model)


def test_multiplicative_matches_scipy_lognorm_on_positive_lobe(multiplicative_model):
    t, x = 0.4, 0.2
    mu, nu = multiplicative_log_moments(t, x, multiplicative_model)
    ref = lognorm(s=math.sqrt(nu), scale=math.exp(mu))
    for u in (0.5, 2.0, 8.0, 20.0):
        assert multiplicative_pdf(u, t, x, multiplicative_model) == pytest.approx(
            ref.pdf(u), rel=1e-12
        )


def test_multiplicative_negative_lobe_is_reflection(multiplicative_model):
    t = 0.4
    for u in (0.5, 2.0, 8.0):
        positive = multiplicative_pdf(u, t, 0.2, multiplicative_model)
        reflected = multiplicative_pdf(-u, t, 0.7, multiplicative_model)
        # x = 0.7 mirrors x = 0.2 across the node: |sin| equal there
        assert abs(math.sin(2 * math.pi * 0.7)) == pytest.approx(
            abs(math.sin(2 * math.pi * 0.2)), abs=1e-15
        )
        assert reflected == pytest.approx(positive, rel=1e-12)


def test_signed_lognormal_normalization(multiplicative_model):
    law = multiplicative_law(0.3, 0.625, multiplicative_model)
    assert isinstance(law, SignedLogNormalLaw) and law.sign == -1
    far = -math.exp(law.log_mean + 12.0 * math.sqrt(law.log_var))
    total, _ = quad(law.pdf, far, 0.0, epsabs=1e-12, limit=300)
    assert total == pytest.approx(1.0, abs=1e-8)
    assert law.cdf(0.0) == 1.0 and law.cdf(far) < 1e-12


# -- analytic partials ------------------------------------------------------------------


def test_partials_at_log_center(multiplicative_model):
    t, x = 0.3, 0.125
    mu, _ = multiplicative_log_moments(t, x, multiplicative_model)
    u = math.exp(mu)
    p = multiplicative_pdf(u, t, x, multiplicative_model)
    dp_dt, dp_du, _ = lognormal_partials(u, t, x, multiplicative_model)
    assert dp_du == pytest.approx(-p / u, rel=1e-12)


@pytest.mark.parametrize("u,x", [(5.0, 0.125), (12.0, 0.2), (-4.0, 0.7)])
def test_partials_match_finite_differences(multiplicative_model, u, x):
    t = 0.3
    dp_dt, dp_du, d2p_du2 = lognormal_partials(u, t, x, multiplicative_model)

    def fd_u(h):
        return (
            multiplicative_pdf(u + h, t, x, multiplicative_model)
            - multiplicative_pdf(u - h, t, x, multiplicative_model)
        ) / (2 * h)

    def fd_t(h):
        return (
            multiplicative_pdf(u, t + h, x, multiplicative_model)
            - multiplicative_pdf(u, t - h, x, multiplicative_model)
        ) / (2 * h)

    def fd_uu(h):
        return (
            multiplicative_pdf(u + h, t, x, multiplicative_model)
            - 2 * multiplicative_pdf(u, t, x, multiplicative_model)
            + multiplicative_pdf(u - h, t, x, multiplicative_model)
        ) / h**2

    h = 1e-5 * max(1.0, abs(u))
    assert fd_u(h) == pytest.approx(dp_du, rel=1e-7, abs=1e-12)
    assert fd_t(1e-5) == pytest.approx(dp_dt, rel=1e-7, abs=1e-12)
    assert fd_uu(h * 10) == pytest.approx(d2p_du2, rel=1e-5, abs=1e-10)
    # second-order refinement: halving h shrinks the first-derivative error ~4x
    e1 = abs(fd_u(2e-4 * abs(u)) - dp_du)
    e2 = abs(fd_u(1e-4 * abs(u)) - dp_du)
    assert e1 / e2 == pytest.approx(4.0, rel=0.4)


def test_partials_require_sign_lobe(multiplicative_model):
    with pytest.raises(RegionViolation):
        lognormal_partials(-1.0, 0.3, 0.125, multiplicative_model)


# -- atom-limit mass ----------------------------------------------------------------------


def test_dirac_mass_monotone_toward_node(multiplicative_model):
    masses = [
        dirac_limit_mass(0.3, 0.5 + 10.0**-j, 0.1, multiplicative_model)
        for j in range(1, 7)
    ]
    assert all(b > a for a, b in zip(masses, masses[1:]))
    assert masses[-1] > 0.999


def test_dirac_mass_total(multiplicative_model):
    assert dirac_limit_mass(0.3, 0.125, 1e12, multiplicative_model) == pytest.approx(
        1.0, abs=1e-12
    )


def test_dirac_mass_against_sampling_oracle(multiplicative_model):
    # empirical fraction of |field| <= 0.1 at the near-node point x = 99/200
    t, x, delta, n = 0.3, 99.0 / 200.0, 0.1, 100_000
    stats = sample_multiplicative(t, x, n, seed=123, model=multiplicative_model)
    frac = float(np.mean(np.abs(stats.samples) <= delta))
    mass = dirac_limit_mass(t, x, delta, multiplicative_model)
    se = math.sqrt(mass * (1.0 - mass) / n)
    assert abs(frac - mass) <= 3.0 * se


# -- interface-growth law ------------------------------------------------------------------


def test_kpz_reference_moments(kpz_model):
    rng = np.random.default_rng(2)
    for _ in range(50):
        t = float(rng.uniform(0.0, 1.0))
        x = float(rng.uniform(0.07, 0.93))
        law = kpz_law(t, x, kpz_model)
        expected_mean = 2.0 * (
            1.0
            - (math.pi**2 + 0.25) * t
            + math.log(abs(math.sqrt(2) * math.sin(math.pi * x)))
        )
        assert law.mean == pytest.approx(expected_mean, abs=1e-12)
        assert law.variance == pytest.approx(1.0 + 2.0 * t, abs=1e-12)


def test_kpz_frozen_point(kpz_model):
    law = kpz_law(0.0, 0.5, kpz_model)
    assert law.mean == pytest.approx(2.0 + math.log(2.0), abs=1e-14)
    assert law.variance == pytest.approx(1.0, abs=1e-14)


def test_kpz_normalization_and_window(kpz_model):
    law = kpz_law(0.3, 0.125, kpz_model)
    sd = math.sqrt(law.variance)
    total, _ = quad(law.pdf, law.mean - 12 * sd, law.mean + 12 * sd, epsabs=1e-12)
    assert total == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(WindowViolation):
        kpz_pdf(0.0, 0.3, 0.03, kpz_model)


# -- transition kernels ----------------------------------------------------------------------


def test_kernels_collapse_to_atom_at_equal_times(additive_moments, multiplicative_model, kpz_model):
    kernels = [
        AdditiveModeKernel(additive_moments, 1, 0.5),
        MultiplicativeGbmKernel(multiplicative_model),
        KpzBrownianKernel(kpz_model),
    ]
    for kernel in kernels:
        law = kernel.law(0.7, 0.4, 0.4)
        assert isinstance(law, DegenerateAtomLaw)
        assert law.value == 0.7


def test_gbm_kernel_preserves_negative_support(multiplicative_model):
    law = MultiplicativeGbmKernel(multiplicative_model).law(-2.0, 0.1, 0.6)
    assert isinstance(law, SignedLogNormalLaw) and law.sign == -1
    assert law.pdf(1.0) == 0.0 and law.pdf(-1.0) > 0.0


def test_additive_kernel_zero_rate_variance():
    # tune the reaction so the first mode's rate vanishes: the transition
    # variance must reduce to (sigma q_n e_n)^2 (t - s)
    from spde_density import AdditiveModel, NoiseSpec, SingleModeAmplitudes, validate
    from spde_density.bases import COSINE, basis_eval
    from spde_density.spectral import AdditiveMoments, lambda_additive

    b0 = (0.5 * math.pi) ** 2
    model = validate(
        AdditiveModel(
            a=1.0, b=b0, sigma=1.3,
            noise=NoiseSpec(SingleModeAmplitudes(1, 0.7), truncation_order=1),
            initial_mode_laws=[(0.2, 0.1)],
        )
    )
    assert abs(lambda_additive(1, 1.0, b0)) < 1e-12
    eng = AdditiveMoments(model, n_modes=1)
    law = AdditiveModeKernel(eng, 1, 0.3).law(0.5, 0.2, 0.6)
    e = basis_eval(COSINE, 1, 0.3)
    assert law.variance == pytest.approx((1.3 * 0.7 * e) ** 2 * 0.4, rel=1e-12)


def test_additive_kernel_marginalization(additive_moments):
    # kernel composed with the time-s law reproduces the time-t law
    s, t, x, n = 0.2, 0.9, 0.5, 1
    kernel = AdditiveModeKernel(additive_moments, n, x)
    mom_s = additive_moments.mode_moment(n, s, x)
    mom_t = additive_moments.mode_moment(n, t, x)

    def composed_pdf(u):
        return gauss_hermite_mean(
            lambda w: np.array([kernel.law(float(wi), s, t).pdf(u) for wi in w]),
            mom_s.mu_n,
            math.sqrt(mom_s.nu_n),
        )

    law_t = GaussianLaw(mom_t.mu_n, mom_t.nu_n)
    for u in np.linspace(mom_t.mu_n - 2, mom_t.mu_n + 2, 7):
        assert composed_pdf(float(u)) == pytest.approx(law_t.pdf(u), abs=1e-9)


def test_gbm_kernel_marginalization(multiplicative_model):
    s, t, x = 0.1, 0.5, 0.125
    kernel = MultiplicativeGbmKernel(multiplicative_model)
    law_s = multiplicative_law(s, x, multiplicative_model)
    law_t = multiplicative_law(t, x, multiplicative_model)

    def composed_pdf(u):
        return gauss_hermite_mean(
            lambda y: np.array(
                [kernel.law(law_s.sign * math.exp(float(yi)), s, t).pdf(u) for yi in y]
            ),
            law_s.log_mean,
            math.sqrt(law_s.log_var),
        )

    for u in (2.0, 8.0, 25.0):
        assert composed_pdf(u) == pytest.approx(float(law_t.pdf(u)), rel=1e-8)


def test_atom_law_contract():
    atom = DegenerateAtomLaw(1.5)
    with pytest.raises(DegenerateLaw):
        atom.pdf(1.5)
    assert atom.cdf(1.5) == 1.0
    assert atom.cdf(1.4999) == 0.0
    assert atom.interval_mass(1.0, 2.0) == 1.0
