"""Closed-form density laws and exact transition kernels.

The additive field is Gaussian at every interior point; the single-mode
multiplicative field is a signed log-normal away from the excited mode's
nodes and a point mass at the nodes; the transformed interface field is
Gaussian on its window.  Atomic laws answer interval masses only --
querying a pointwise density on an atom raises, because no finite value
is correct.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .bases import SINE, basis_eval
from .errors import (
    DegenerateKernel,
    DegenerateLaw,
    DegenerateVariance,
    RegionViolation,
    WindowViolation,
)
from .numerics import exprel2

GAMMA_X_TOL = 1e-12  # absolute tolerance deciding membership of x in the node set

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# density laws
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianLaw:
    mean: float
    variance: float

    def __post_init__(self):
        if not self.variance > 0.0:
            raise DegenerateVariance(f"variance {self.variance} must be positive")

    def pdf(self, u):
        u = np.asarray(u, dtype=float)
        out = np.exp(-((u - self.mean) ** 2) / (2.0 * self.variance)) / np.sqrt(
            TWO_PI * self.variance
        )
        return float(out) if out.ndim == 0 else out

    def cdf(self, u):
        u = np.asarray(u, dtype=float)
        out = ndtr((u - self.mean) / math.sqrt(self.variance))
        return float(out) if out.ndim == 0 else out

    def interval_mass(self, a, b):
        return float(self.cdf(b) - self.cdf(a))

    @property
    def median(self):
        return self.mean


@dataclass(frozen=True)
class SignedLogNormalLaw:
    """Law of sign * exp(Z) with Z ~ N(log_mean, log_var).

    Support is (0, inf) for sign +1 and (-inf, 0) for sign -1; the density
    on the negative half-line is the positive-side density reflected
    through u -> -u.
    """

    sign: int
    log_mean: float
    log_var: float

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if not self.log_var > 0.0:
            raise DegenerateVariance(f"log variance {self.log_var} must be positive")

    def pdf(self, u):
        u = np.asarray(u, dtype=float)
        on_support = (u * self.sign) > 0.0
        au = np.where(on_support, np.abs(u), 1.0)
        vals = np.exp(-((np.log(au) - self.log_mean) ** 2) / (2.0 * self.log_var)) / (
            au * np.sqrt(TWO_PI * self.log_var)
        )
        out = np.where(on_support, vals, 0.0)
        return float(out) if out.ndim == 0 else out

    def cdf(self, u):
        u = np.asarray(u, dtype=float)
        sd = math.sqrt(self.log_var)
        if self.sign > 0:
            pos = u > 0.0
            z = (np.log(np.where(pos, u, 1.0)) - self.log_mean) / sd
            out = np.where(pos, ndtr(z), 0.0)
        else:
            neg = u < 0.0
            z = (np.log(np.where(neg, -u, 1.0)) - self.log_mean) / sd
            out = np.where(neg, 1.0 - ndtr(z), 1.0)
        return float(out) if out.ndim == 0 else out

    def interval_mass(self, a, b):
        return float(self.cdf(b) - self.cdf(a))

    @property
    def median(self):
        return self.sign * math.exp(self.log_mean)


@dataclass(frozen=True)
class DegenerateAtomLaw:
    """Unit mass at a single value.  Pointwise pdf queries raise."""

    value: float

    def pdf(self, u):
        raise DegenerateLaw(
            "atomic law has no pointwise density; query interval_mass instead"
        )

    def cdf(self, u):
        u = np.asarray(u, dtype=float)
        out = np.where(u >= self.value, 1.0, 0.0)
        return float(out) if out.ndim == 0 else out

    def interval_mass(self, a, b):
        return float(self.cdf(b) - self.cdf(a))

    @property
    def median(self):
        return self.value


DensityLaw = GaussianLaw | SignedLogNormalLaw | DegenerateAtomLaw


# ---------------------------------------------------------------------------
# additive law
# ---------------------------------------------------------------------------


def additive_law(t, x, moments) -> DensityLaw:
    """Law of the additive field at (t, x) from a moment engine.

    Where the truncated variance vanishes (e.g. x = 1 in the cosine basis,
    or t = 0 with a deterministic start) the law is an atom at the mean.
    """
    mu = moments.mu(t, x)
    nu = moments.nu(t, x)
    if nu <= 0.0:
        return DegenerateAtomLaw(mu)
    return GaussianLaw(mu, nu)


def additive_pdf(u, t, x, moments) -> float:
    """Gaussian density of the additive field; raises on zero variance."""
    nu = moments.nu(t, x)
    if nu <= 0.0:
        raise DegenerateVariance(
            f"nu({t}, {x}) = {nu}: law is an atom; use additive_law / interval masses"
        )
    return GaussianLaw(moments.mu(t, x), nu).pdf(u)


# ---------------------------------------------------------------------------
# sign regions of the single-mode field
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """Sign-region classification of one (u, x) pair for mode count m."""

    kind: str  # "gamma" | "d1" | "d2" | "off_support"
    k: int | None = None


def classify_region(u, x, m) -> Region:
    """Classify (u, x) against the sign lobes of sin(m*pi*x).

    Node membership uses an absolute tolerance on |x - j/m| because grid
    values arrive in binary floating point.  The lobe index is recovered
    arithmetically and then re-checked against the open-interval
    definition.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x = {x} outside [0, 1]")
    j = round(m * x)
    if abs(x - j / m) <= GAMMA_X_TOL:
        return Region("gamma")
    if u > 0.0:
        k = math.floor(m * x / 2.0)
        if 2 * k / m < x < (2 * k + 1) / m and 0 <= 2 * k <= m - 1:
            return Region("d1", k)
        return Region("off_support")
    if u < 0.0:
        k = math.floor((m * x - 1.0) / 2.0)
        if k >= 0 and (2 * k + 1) / m < x < min((2 * k + 2) / m, 1.0):
            return Region("d2", k)
        return Region("off_support")
    return Region("off_support")  # u == 0 off the nodes carries no mass


def _lobe_sign(x, m):
    region = classify_region(1.0, x, m)
    if region.kind == "d1":
        return 1
    region = classify_region(-1.0, x, m)
    if region.kind == "d2":
        return -1
    return 0


# ---------------------------------------------------------------------------
# multiplicative law
# ---------------------------------------------------------------------------


def multiplicative_log_moments(t, x, model):
    """Log-mean mu(t, x) and log-variance nu(t) of the single-mode field."""
    e_val = basis_eval(SINE, model.m, x)
    if e_val == 0.0:
        raise DegenerateVariance(f"x = {x} is a node of the excited mode")
    mu = model.log_mean0 + model.b_m * t + math.log(abs(e_val))
    nu = model.log_var0 + model.eps_m**2 * t
    return mu, nu


def multiplicative_law(t, x, model) -> DensityLaw:
    """Law of the multiplicative field at (t, x): signed log-normal or atom."""
    region = classify_region(1.0, x, model.m)
    if region.kind == "gamma":
        return DegenerateAtomLaw(0.0)
    sign = _lobe_sign(x, model.m)
    mu, nu = multiplicative_log_moments(t, x, model)
    if nu <= 0.0:
        return DegenerateAtomLaw(sign * math.exp(mu))
    return SignedLogNormalLaw(sign, mu, nu)


def multiplicative_pdf(u, t, x, model) -> float:
    """Pointwise density of the multiplicative field.

    Zero off the support; raises on the node set, where the law is an atom
    and only interval masses are meaningful.
    """
    region = classify_region(u, x, model.m)
    if region.kind == "gamma":
        raise DegenerateLaw(
            f"x = {x} lies on the node set: the law is an atom at 0; "
            "use multiplicative_law(t, x, model).interval_mass"
        )
    if region.kind == "off_support":
        return 0.0
    law = multiplicative_law(t, x, model)
    return float(law.pdf(u))


def lognormal_partials(u, t, x, model):
    """Analytic (d/dt, d/du, d2/du2) of the signed log-normal density.

    Valid on the sign lobes (u != 0).  The time derivatives of the log
    moments are b_m and eps_m^2 respectively.
    """
    region = classify_region(u, x, model.m)
    if region.kind not in ("d1", "d2"):
        raise RegionViolation(f"(u, x) = ({u}, {x}) not inside a sign lobe")
    mu, nu = multiplicative_log_moments(t, x, model)
    p = multiplicative_pdf(u, t, x, model)
    L = (math.log(abs(u)) - mu) / nu  # standardized log deviation / nu
    dmu_dt = model.b_m
    dnu_dt = model.eps_m**2
    dp_dt = (0.5 * dnu_dt * (L * L - 1.0 / nu) + dmu_dt * L) * p
    dp_du = -(1.0 + L) * p / u
    d2p_du2 = (2.0 + 3.0 * L + L * L - 1.0 / nu) * p / (u * u)
    return dp_dt, dp_du, d2p_du2


def dirac_limit_mass(t, x, delta, model) -> float:
    """P(|field| <= delta) at (t, x); tends to 1 as x nears a node."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    mu, nu = multiplicative_log_moments(t, x, model)
    return float(ndtr((math.log(delta) - mu) / math.sqrt(nu)))


# ---------------------------------------------------------------------------
# interface-growth (log-transformed) law
# ---------------------------------------------------------------------------


def kpz_moments(t, x, model):
    """Mean and variance of the transformed field on its window."""
    if not model.contains(x):
        raise WindowViolation(f"x = {x} outside window {model.window}")
    scale = 2.0 * model.theta / model.xi
    e_val = basis_eval(SINE, model.m, x)
    mu = scale * (model.log_mean0 + model.b_tilde_m * t + math.log(abs(e_val)))
    nu = scale**2 * (model.log_var0 + (model.eps * model.q_m) ** 2 * t)
    return mu, nu


def kpz_law(t, x, model) -> GaussianLaw:
    mu, nu = kpz_moments(t, x, model)
    return GaussianLaw(mu, nu)


def kpz_pdf(kappa, t, x, model) -> float:
    return float(kpz_law(t, x, model).pdf(kappa))


# ---------------------------------------------------------------------------
# transition kernels
# ---------------------------------------------------------------------------


class AdditiveModeKernel:
    """Exact one-mode transition law at a fixed spatial point."""

    family = "additive-mode"

    def __init__(self, moments, n, x):
        self._data = moments.mode_transition_data(n, x)
        self.n = n
        self.x = x

    def law(self, w, s, t) -> DensityLaw:
        if t < s:
            raise ValueError("need t >= s")
        d = self._data
        if t == s:
            return DegenerateAtomLaw(w)
        decay = math.exp(d.lam * (t - s))
        mean = (
            (w - d.lift_coefficient(s) * d.e_x) * decay
            + d.forcing_integral(s, t) * d.e_x
            + d.lift_coefficient(t) * d.e_x
        )
        variance = (d.sigma_q * d.e_x) ** 2 * exprel2(d.lam, t - s)
        if variance <= 0.0:
            return DegenerateAtomLaw(mean)
        return GaussianLaw(mean, variance)


class MultiplicativeGbmKernel:
    """Sign-preserving log-normal transition of the excited mode field."""

    family = "multiplicative-gbm"

    def __init__(self, model):
        self.model = model

    def law(self, w, s, t) -> DensityLaw:
        if t < s:
            raise ValueError("need t >= s")
        if w == 0.0:
            raise DegenerateKernel("w = 0 has no log-normal transition")
        if t == s:
            return DegenerateAtomLaw(w)
        m = self.model
        log_var = m.eps_m**2 * (t - s)
        log_mean = math.log(abs(w)) + m.b_m * (t - s)
        if log_var <= 0.0:
            return DegenerateAtomLaw(math.copysign(math.exp(log_mean), w))
        return SignedLogNormalLaw(1 if w > 0 else -1, log_mean, log_var)


class KpzBrownianKernel:
    """Constant-coefficient Gaussian transition of the transformed field."""

    family = "kpz-brownian"

    def __init__(self, model):
        self.model = model

    def law(self, w, s, t) -> DensityLaw:
        if t < s:
            raise ValueError("need t >= s")
        if t == s:
            return DegenerateAtomLaw(w)
        m = self.model
        scale = 2.0 * m.theta / m.xi
        mean = w + scale * m.b_tilde_m * (t - s)
        variance = (scale * m.eps * m.q_m) ** 2 * (t - s)
        if variance <= 0.0:
            return DegenerateAtomLaw(mean)
        return GaussianLaw(mean, variance)


TransitionKernel = AdditiveModeKernel | MultiplicativeGbmKernel | KpzBrownianKernel
