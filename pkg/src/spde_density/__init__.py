"""Closed-form densities for Q-Wiener stochastic heat equations.

Library layout:

* :mod:`~spde_density.model` -- model types, validation, noise-calculus
  conversion;
* :mod:`~spde_density.homogenization` -- boundary lifting catalog;
* :mod:`~spde_density.spectral` -- eigenmode moments, series truncation
  with tail certificates, density drift/diffusion;
* :mod:`~spde_density.densities` -- Gaussian / signed log-normal /
  atomic laws, sign-region classification, transition kernels;
* :mod:`~spde_density.fokker_planck` -- density-equation residuals and
  semigroup checks;
* :mod:`~spde_density.feynman_kac` -- Monte Carlo estimators through the
  probabilistic representations;
* :mod:`~spde_density.oracle` -- exact spectral sampling and KS
  comparison;
* :mod:`~spde_density.cli` -- scenario-driven command line driver.
"""

from .bases import basis_eval, fourier_coefficient, lambda_additive, lambda_nonlocal
from .densities import (
    AdditiveModeKernel,
    DegenerateAtomLaw,
    GaussianLaw,
    KpzBrownianKernel,
    MultiplicativeGbmKernel,
    Region,
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
from .feynman_kac import (
    McEstimate,
    SdeCoefficients,
    estimate_additive_pdf,
    estimate_kpz_pdf,
    estimate_multiplicative_pdf,
    euler_maruyama,
)
from .fokker_planck import (
    MultiplicativeFpCoefficients,
    ResidualReport,
    ck_check,
    ck_smoke_additive,
    fp_identity_multiplicative,
    fp_residual_additive,
    fp_residual_kpz,
)
from .forcing import CallableForcing, SeparableForcing, SeparableTerm
from .homogenization import (
    BoundaryCase,
    LiftFunction,
    build_lift,
    effective_forcing,
    verify_boundary,
)
from .model import (
    AdditiveModel,
    ExplicitAmplitudes,
    InvalidParameter,
    KpzModel,
    ModeInitialLaw,
    MultiplicativeModel,
    NoiseSpec,
    ReciprocalAmplitudes,
    SingleModeAmplitudes,
    stratonovich_from_ito,
    stratonovich_to_ito,
    validate,
)
from .numerics import exprel2
from .oracle import (
    EnsembleStats,
    ks_statistic,
    sample_additive,
    sample_additive_paths,
    sample_kpz,
    sample_multiplicative,
)
from .spectral import AdditiveMoments, DriftDiffusion, ModeMoment, MomentField, mode_variance
from .timefuncs import COS, SIN, TrigPoly, constant

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
