import numpy as np
import pytest

from spde_density import (
    AdditiveModel,
    AdditiveMoments,
    BoundaryCase,
    KpzModel,
    MultiplicativeModel,
    NoiseSpec,
    ReciprocalAmplitudes,
    SeparableForcing,
    validate,
)
from spde_density.bases import COSINE, basis_eval
from spde_density.timefuncs import COS, SIN


def first_cosine_mode(x):
    return basis_eval(COSINE, 1, x)


@pytest.fixture(scope="session")
def additive_model():
    """Reciprocal amplitudes, trigonometric forcing/boundary, one random mode."""
    model = AdditiveModel(
        a=1.0,
        b=1.0,
        sigma=1.0,
        noise=NoiseSpec(ReciprocalAmplitudes(), truncation_order=10),
        initial_mode_laws=[(0.0, 1.0 / 16.0)],
        forcing=SeparableForcing([(COS, first_cosine_mode)]),
        boundary=BoundaryCase("main", g=SIN, h=COS),
    )
    return validate(model)


@pytest.fixture(scope="session")
def additive_moments(additive_model):
    return AdditiveMoments(additive_model, n_modes=10)


@pytest.fixture(scope="session")
def multiplicative_model():
    """Second sine mode excited; reaction rate tuned so lambda_m = 11/2."""
    c = 5.5 + np.sqrt(2.0 * np.pi) + (2.0 * np.pi) ** 2
    model = MultiplicativeModel(
        a=1.0,
        b=1.0,
        c=c,
        alpha=0.5,
        eps=np.sqrt(2.0) / 2.0,
        m=2,
        q_m=1.0,
        log_mean0=1.0,
        log_var0=0.25,
    )
    return validate(model)


@pytest.fixture(scope="session")
def kpz_model():
    model = KpzModel(
        theta=1.0,
        xi=1.0,
        eps=np.sqrt(2.0) / 2.0,
        m=1,
        q_m=1.0,
        log_mean0=1.0,
        log_var0=0.25,
        window=(0.0625, 0.9375),
    )
    return validate(model)
