import numpy as np
import pytest

from spde_density import (
    AdditiveModel,
    BoundaryCase,
    ExplicitAmplitudes,
    InvalidParameter,
    KpzModel,
    MultiplicativeModel,
    NoiseSpec,
    ReciprocalAmplitudes,
    SingleModeAmplitudes,
    stratonovich_from_ito,
    stratonovich_to_ito,
    validate,
)

PI_SQ_OVER_6 = np.pi**2 / 6.0


def test_alpha_outside_open_interval_rejected(multiplicative_model):
    bad = MultiplicativeModel(
        a=1.0, b=1.0, c=1.0, alpha=2.5, eps=0.5, m=1, q_m=1.0,
        log_mean0=0.0, log_var0=1.0,
    )
    with pytest.raises(InvalidParameter) as err:
        validate(bad)
    assert any(field == "alpha" for field, _ in err.value.violations)


def test_kpz_window_straddling_a_node_rejected():
    bad = KpzModel(
        theta=1.0, xi=1.0, eps=0.5, m=2, q_m=1.0,
        log_mean0=0.0, log_var0=1.0, window=(0.4, 0.6),
    )
    with pytest.raises(InvalidParameter) as err:
        validate(bad)
    assert any(field == "window" for field, _ in err.value.violations)


def test_kpz_window_endpoint_on_node_rejected():
    bad = KpzModel(
        theta=1.0, xi=1.0, eps=0.5, m=2, q_m=1.0,
        log_mean0=0.0, log_var0=1.0, window=(0.5, 0.75),
    )
    with pytest.raises(InvalidParameter):
        validate(bad)


def test_reference_additive_model_is_valid(additive_model):
    assert validate(additive_model) is additive_model


def test_validate_is_idempotent(additive_model, multiplicative_model, kpz_model):
    for model in (additive_model, multiplicative_model, kpz_model):
        assert validate(validate(model)) is model


def test_validate_collects_all_violations():
    bad = MultiplicativeModel(
        a=1.0, b=1.0, c=1.0, alpha=3.0, eps=-1.0, m=0, q_m=-2.0,
        log_mean0=0.0, log_var0=-1.0,
    )
    with pytest.raises(InvalidParameter) as err:
        validate(bad)
    fields = {field for field, _ in err.value.violations}
    assert {"alpha", "eps", "m", "q_m", "log_var0"} <= fields


def test_zero_initial_mode_variance_allowed():
    model = AdditiveModel(
        a=1.0, b=0.0, sigma=1.0,
        noise=NoiseSpec(SingleModeAmplitudes(1, 1.0), truncation_order=3),
        initial_mode_laws=[(0.5, 0.0), (0.0, 0.0)],
    )
    assert validate(model) is model


def test_negative_initial_mode_variance_rejected():
    model = AdditiveModel(
        a=1.0, b=0.0, sigma=1.0,
        noise=NoiseSpec(ReciprocalAmplitudes(), truncation_order=3),
        initial_mode_laws=[(0.5, -0.1)],
    )
    with pytest.raises(InvalidParameter) as err:
        validate(model)
    assert any("variance" in field for field, _ in err.value.violations)


def test_degenerate_robin_reported_as_invalid_parameter():
    model = AdditiveModel(
        a=1.0, b=0.0, sigma=1.0,
        noise=NoiseSpec(ReciprocalAmplitudes(), truncation_order=3),
        boundary=BoundaryCase(5, g=0.0, h=0.0, gamma=0.0),
    )
    with pytest.raises(InvalidParameter) as err:
        validate(model)
    assert any(field == "boundary" for field, _ in err.value.violations)


# -- noise amplitude rules ---------------------------------------------------


def test_reciprocal_trace_monotone_and_bounded():
    spec = NoiseSpec(ReciprocalAmplitudes(), truncation_order=1)
    traces = [spec.truncated_trace(n) for n in range(1, 60)]
    assert all(b > a for a, b in zip(traces, traces[1:]))
    assert all(t < PI_SQ_OVER_6 for t in traces)


def test_reciprocal_tail_complements_partial_sum():
    rule = ReciprocalAmplitudes()
    assert rule.tail_sum_squares(10) == pytest.approx(
        PI_SQ_OVER_6 - sum(1.0 / n**2 for n in range(1, 11)), abs=1e-15
    )


def test_explicit_amplitudes_tail_and_values():
    rule = ExplicitAmplitudes((1.0, 0.5, 0.25))
    assert rule.q(2) == 0.5
    assert rule.q(4) == 0.0
    assert rule.tail_sum_squares(1) == pytest.approx(0.25 + 0.0625)
    assert rule.tail_sum_squares(3) == 0.0


def test_single_mode_amplitudes():
    rule = SingleModeAmplitudes(3, 2.0)
    np.testing.assert_array_equal(rule.q(np.array([1, 2, 3, 4])), [0.0, 0.0, 2.0, 0.0])
    assert rule.tail_sum_squares(2) == 4.0
    assert rule.tail_sum_squares(3) == 0.0


# -- noise-calculus conversion -------------------------------------------------


def test_stratonovich_to_ito_recovers_full_rate():
    c, eps = 3.2, 0.8
    assert stratonovich_to_ito(c - eps**2 / 2.0, eps, 1.0) == pytest.approx(c, abs=1e-15)


def test_stratonovich_conversion_identity_without_noise():
    assert stratonovich_to_ito(4.7, 0.0, 1.0) == 4.7


def test_stratonovich_frozen_value():
    # (eps * q_m)^2 / 2 with eps = sqrt(2)/2, q_m = 1 is exactly 1/4
    assert stratonovich_to_ito(0.0, np.sqrt(2.0) / 2.0, 1.0) == pytest.approx(0.25, abs=1e-15)


def test_stratonovich_round_trip():
    rng = np.random.default_rng(7)
    for _ in range(50):
        c, eps, q = rng.normal(size=3)
        back = stratonovich_to_ito(stratonovich_from_ito(c, eps, q), eps, q)
        assert back == pytest.approx(c, rel=1e-14, abs=1e-14)
