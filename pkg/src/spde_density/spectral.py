"""Truncated eigenmode moments of the additive-noise equation.

Each mode coefficient follows a scalar linear SDE with the explicit
Gaussian solution; the field's mean and variance are mode sums.  The
engine below evaluates

* the per-mode mean and variance,
* the truncated series mean mu(t, x) and variance nu(t, x), with
  rigorous (crude) tail bounds certifying the dropped remainder,
* the drift/diffusion coefficients M = -d(mu)/dt and G = d(nu)/dt by
  term-wise analytic differentiation (no finite differences), and their
  time-reversed forms used by the probabilistic representation.

The lift Y(t, x) enters the mean in closed form rather than through its
own eigenfunction series, so boundary values are honored exactly
(mu(t, 1) equals the prescribed boundary datum; nu(t, 1) = 0 because the
cosine basis vanishes there).

Convolution integrals against the forcing use closed forms when every
time factor is trigonometric, otherwise adaptive Simpson quadrature with
absolute tolerance 1e-10.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bases
from .bases import COSINE, basis_eval, fourier_coefficient, lambda_additive, lambda_nonlocal  # noqa: F401
from .errors import NonPositiveDiffusion, TailNotCertified
from .forcing import SeparableForcing
from .homogenization import build_lift, effective_forcing
from .numerics import SQRT2, adaptive_simpson, exprel1, exprel2, gauss_legendre
from .timefuncs import TrigPoly

DEFAULT_MODES = 10
DEFAULT_CAP = 10_000
TIME_QUAD_TOL = 1e-10
SPACE_QUAD_ORDER = 64


def mode_variance(n, t, x, sigma, q_n, nu0, lam):
    """Variance contributed by one mode at (t, x).

    Uses the stable exprel2 helper so lam = 0 is the continuous limit of
    the generic formula, not a separate branch.
    """
    e = basis_eval(COSINE, n, x)
    growth = np.exp(2.0 * np.asarray(lam, dtype=float) * t)
    out = nu0 * e**2 * growth + (sigma * q_n * e) ** 2 * exprel2(lam, t)
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def _trig_convolution(tf: TrigPoly, lam, s, t):
    """Integral over [s, t] of exp(lam*(t-r)) * tf(r), vectorized in lam.

    Closed forms for the constant, cosine and sine parts:
      const: (exp(lam*d) - 1)/lam                         (d = t - s)
      cos:   [(sin t - lam cos t) - e^{lam d}(sin s - lam cos s)]/(1+lam^2)
      sin:   [-(lam sin t + cos t) + e^{lam d}(lam sin s + cos s)]/(1+lam^2)
    """
    lam = np.asarray(lam, dtype=float)
    d = t - s
    grow = np.exp(lam * d)
    out = np.zeros_like(lam)
    if tf.const != 0.0:
        out = out + tf.const * exprel1(lam, d)
    denom = 1.0 + lam * lam
    if tf.cos_coeff != 0.0:
        out = out + tf.cos_coeff * (
            (np.sin(t) - lam * np.cos(t)) - grow * (np.sin(s) - lam * np.cos(s))
        ) / denom
    if tf.sin_coeff != 0.0:
        out = out + tf.sin_coeff * (
            -(lam * np.sin(t) + np.cos(t)) + grow * (lam * np.sin(s) + np.cos(s))
        ) / denom
    return out


@dataclass(frozen=True)
class ModeMoment:
    """Per-mode mean/variance at one (t, x), with its building blocks."""

    n: int
    mu_n: float
    nu_n: float
    mu0: float
    nu0: float
    f_tilde_n: float
    y_n: float


@dataclass(frozen=True)
class MomentField:
    """Point values of the truncated series with tail certificates."""

    mu: float
    nu: float
    n_modes: int
    tail_bound_mu: float
    tail_bound_nu: float
    certified: bool


@dataclass(frozen=True)
class DriftDiffusion:
    """Density drift M = -d(mu)/dt and diffusion G = d(nu)/dt at (t, x)."""

    M: float
    G: float


class AdditiveMoments:
    """Moment engine for a validated :class:`~spde_density.model.AdditiveModel`.

    ``n_modes`` fixes the truncation used by every evaluation (the bundled
    scenarios use 10); ``n_cap`` bounds the certified-tolerance search in
    :meth:`at`.
    """

    def __init__(self, model, n_modes=DEFAULT_MODES, n_cap=DEFAULT_CAP):
        self.model = model
        self.n_modes = int(n_modes)
        self.n_cap = int(max(n_cap, n_modes))
        self.lift = build_lift(model.boundary)
        self.f_eff = effective_forcing(model.forcing, self.lift, model.b)
        self._separable = isinstance(self.f_eff, SeparableForcing)
        self._trig_fast = self._separable and self.f_eff.all_trig

        n = np.arange(1, self.n_modes + 1)
        self._n = n
        self._lam = lambda_additive(n, model.a, model.b)
        self._q = np.atleast_1d(model.noise.q(n)).astype(float)
        self._mu0 = np.array([model.initial_mean(k) for k in n])
        self._nu0 = np.array([model.initial_variance(k) for k in n])
        # lift Fourier data: <x^k, e_n> for the polynomial lift coefficients
        self._poly_coeffs = np.stack(
            [self._profile_coefficients(lambda x, k=k: np.asarray(x) ** k) for k in range(3)]
        )
        if self._separable:
            self._term_coeffs = np.stack(
                [self._profile_coefficients(term.space) for term in self.f_eff.terms]
            ) if self.f_eff.terms else np.zeros((0, self.n_modes))
        else:
            nodes, weights = gauss_legendre(0.0, 1.0, SPACE_QUAD_ORDER)
            self._quad_nodes = nodes
            self._quad_weights = weights
            self._basis_matrix = np.stack(
                [basis_eval(COSINE, k, nodes) for k in n]
            )  # (n_modes, nodes)
            self._ft_cache: dict[float, np.ndarray] = {}

    # -- spatial inner products -------------------------------------------

    def _profile_coefficients(self, profile):
        return np.array(
            [
                fourier_coefficient(profile, COSINE, int(k), order=SPACE_QUAD_ORDER)
                for k in self._n
            ]
        )

    # -- building blocks ---------------------------------------------------

    def basis_values(self, x):
        return basis_eval(COSINE, self._n, x)

    def lift_mode_coefficients(self, t):
        """<Y(t, .), e_n> for all kept modes."""
        c = np.array([ck(t) for ck in self.lift.coeffs])
        return c @ self._poly_coeffs

    def _lift_mode_coefficients_dt(self, t):
        c = np.array([ck(t) for ck in self.lift.dcoeffs])
        return c @ self._poly_coeffs

    def forcing_mode_values(self, t):
        """<f_eff(t, .), e_n> for all kept modes."""
        if self._separable:
            if not self.f_eff.terms:
                return np.zeros(self.n_modes)
            tvals = np.array([term.time(t) for term in self.f_eff.terms])
            return tvals @ self._term_coeffs
        key = float(t)
        cached = self._ft_cache.get(key)
        if cached is None:
            fvals = np.asarray(self.f_eff(key, self._quad_nodes), dtype=float)
            cached = self._basis_matrix @ (self._quad_weights * fvals)
            self._ft_cache[key] = cached
        return cached

    def _convolutions(self, t, s=0.0):
        """Integral over [s, t] of exp(lam_n (t - r)) <f_eff(r,.), e_n>, per mode."""
        if t == s:
            return np.zeros(self.n_modes)
        if self._trig_fast:
            out = np.zeros(self.n_modes)
            for term, coeffs in zip(self.f_eff.terms, self._term_coeffs):
                out = out + coeffs * _trig_convolution(term.time, self._lam, s, t)
            return out
        out = np.empty(self.n_modes)
        for i, lam in enumerate(self._lam):
            out[i] = adaptive_simpson(
                lambda r, i=i, lam=lam: float(
                    np.exp(lam * (t - r)) * self.forcing_mode_values(r)[i]
                ),
                s,
                t,
                tol=TIME_QUAD_TOL,
            )
        return out

    def _mean_core(self, t):
        """Per-mode mean coefficients of the homogenized field at time t."""
        ly0 = self.lift_mode_coefficients(0.0)
        return (self._mu0 - ly0) * np.exp(self._lam * t) + self._convolutions(t)

    def _variance_core(self, t):
        sigma = self.model.sigma
        return self._nu0 * np.exp(2.0 * self._lam * t) + (
            sigma * self._q
        ) ** 2 * exprel2(self._lam, t)

    # -- public evaluations --------------------------------------------------

    def mu(self, t, x):
        """Truncated series mean, with the lift added in closed form."""
        e = self.basis_values(x)
        return float(self.lift.y(t, x) + np.dot(self._mean_core(t), e))

    def nu(self, t, x):
        e = self.basis_values(x)
        return float(np.dot(self._variance_core(t), e * e))

    def mode_moment(self, n, t, x) -> ModeMoment:
        """Mean/variance of a single mode at (t, x)."""
        if not 1 <= n <= self.n_modes:
            raise ValueError(f"mode {n} outside the kept range 1..{self.n_modes}")
        i = n - 1
        e = float(basis_eval(COSINE, n, x))
        ly_t = float(self.lift_mode_coefficients(t)[i])
        core = float(self._mean_core(t)[i])
        mu_n = core * e + ly_t * e
        nu_n = float(self._variance_core(t)[i]) * e * e
        return ModeMoment(
            n=n,
            mu_n=mu_n,
            nu_n=nu_n,
            mu0=float(self._mu0[i]),
            nu0=float(self._nu0[i]),
            f_tilde_n=float(self.forcing_mode_values(t)[i]),
            y_n=ly_t * e,
        )

    def mode_mean(self, n, t, x) -> float:
        return self.mode_moment(n, t, x).mu_n

    def mode_variance(self, n, t, x) -> float:
        return self.mode_moment(n, t, x).nu_n

    def at(self, t, x, tol=None, strict=False) -> MomentField:
        """Point evaluation with tail certificates.

        With ``tol`` given, the truncation grows to the first mode count
        (up to the cap) whose tail bounds both fall below it; the result
        records the bounds and whether they met the tolerance.  With
        ``strict`` the cap being hit first raises instead of flagging.
        """
        if tol is None:
            tail_mu, tail_nu = self.tail_bounds(self.n_modes, t)
            return MomentField(
                mu=self.mu(t, x),
                nu=self.nu(t, x),
                n_modes=self.n_modes,
                tail_bound_mu=tail_mu,
                tail_bound_nu=tail_nu,
                certified=bool(np.isfinite(tail_mu) and np.isfinite(tail_nu)),
            )
        n_try = self.n_modes
        while True:
            tail_mu, tail_nu = self.tail_bounds(n_try, t)
            if (tail_mu <= tol and tail_nu <= tol) or n_try >= self.n_cap:
                break
            n_try += 1
        certified = bool(tail_mu <= tol and tail_nu <= tol)
        if strict and not certified:
            raise TailNotCertified(
                f"tail bounds ({tail_mu}, {tail_nu}) above {tol} at the cap {self.n_cap}"
            )
        engine = self if n_try == self.n_modes else AdditiveMoments(
            self.model, n_modes=n_try, n_cap=self.n_cap
        )
        return MomentField(
            mu=engine.mu(t, x),
            nu=engine.nu(t, x),
            n_modes=n_try,
            tail_bound_mu=tail_mu,
            tail_bound_nu=tail_nu,
            certified=certified,
        )

    # -- tail certificates --------------------------------------------------

    def tail_bounds(self, n_kept, t):
        """Crude rigorous bounds on the dropped mean/variance series, n > n_kept.

        Variance: |e_n| <= sqrt(2) and, once the eigenvalues have dropped
        below -1, the exponential factor of each dropped variance term is
        bounded by one, leaving 2*sum(nu0 tail) + sigma^2 * sum(q_n^2 tail).
        Mean: exponential-decay bounds with a geometric-series closure; the
        forcing part uses a grid-estimated sup of |f_eff|.  Returns inf for
        a piece that is not certifiable in this crude form (e.g. a = 0 with
        boundary data present).
        """
        model = self.model
        lam_next = lambda_additive(n_kept + 1, model.a, model.b)

        # ---- variance tail
        nu0_tail = sum(
            law.variance for law in model.initial_mode_laws[n_kept:]
        )
        if lam_next <= -1.0:
            tail_nu = 2.0 * nu0_tail + model.sigma**2 * model.noise.tail_sum_squares(
                n_kept
            )
        else:
            tail_nu = np.inf

        # ---- mean tail
        mu0_tail = sum(abs(law.mean) for law in model.initial_mode_laws[n_kept:])
        tail_mu = SQRT2 * mu0_tail * min(np.exp(lam_next * t), 1.0) if lam_next <= 0 else SQRT2 * mu0_tail * np.exp(lam_next * t)

        sup_y0 = self._sup_lift_at_zero()
        if sup_y0 > 0.0:
            if model.a != 0.0 and t > 0.0 and lam_next < 0.0:
                gap = 2.0 * (n_kept + 1) * (model.a * np.pi) ** 2 * t
                geom = np.exp(lam_next * t) / -np.expm1(-gap)
                tail_mu += 2.0 * sup_y0 * geom
            else:
                tail_mu = np.inf

        sup_f = self._sup_forcing(t)
        if sup_f > 0.0 and t > 0.0:
            beta_next_sq = float(bases.beta(n_kept + 1) ** 2)
            kappa = 1.0 - max(model.b, 0.0) / (model.a**2 * beta_next_sq) if model.a != 0.0 else 0.0
            if kappa > 0.0:
                inv_lambda_tail = 1.0 / (model.a**2 * kappa * np.pi**2) * (
                    1.0 / (n_kept - 0.5) if n_kept >= 1 else 2.0
                )
                tail_mu += 2.0 * sup_f * inv_lambda_tail
            else:
                tail_mu = np.inf
        return float(tail_mu), float(tail_nu)

    def _sup_lift_at_zero(self):
        c0, c1, c2 = (ck(0.0) for ck in self.lift.coeffs)
        candidates = [0.0, 1.0]
        if c2 != 0.0:
            vertex = -c1 / (2.0 * c2)
            if 0.0 < vertex < 1.0:
                candidates.append(vertex)
        return max(abs(c0 + c1 * x + c2 * x * x) for x in candidates)

    def _sup_forcing(self, t):
        if self._separable and not self.f_eff.terms:
            return 0.0
        ts = np.linspace(0.0, max(t, 1e-12), 33)
        xs = np.linspace(0.0, 1.0, 65)
        return float(max(np.max(np.abs(self.f_eff(tv, xs))) for tv in ts))

    # -- drift/diffusion -----------------------------------------------------

    def dmu_dt(self, t, x):
        """Term-wise analytic time derivative of the truncated mean."""
        e = self.basis_values(x)
        ly0 = self.lift_mode_coefficients(0.0)
        core = (
            self._lam * (self._mu0 - ly0) * np.exp(self._lam * t)
            + self.forcing_mode_values(t)
            + self._lam * self._convolutions(t)
        )
        return float(self.lift.dy_dt(t, x) + np.dot(core, e))

    def dnu_dt(self, t, x):
        e = self.basis_values(x)
        coeff = 2.0 * self._lam * self._nu0 + (self.model.sigma * self._q) ** 2
        return float(np.dot(coeff * np.exp(2.0 * self._lam * t), e * e))

    def drift_diffusion(self, t, x, require_positive_g=False) -> DriftDiffusion:
        g = self.dnu_dt(t, x)
        if require_positive_g and g <= 0.0:
            raise NonPositiveDiffusion(
                f"diffusion coefficient G({t}, {x}) = {g} is not positive"
            )
        return DriftDiffusion(M=-self.dmu_dt(t, x), G=g)

    def reversed_coefficients(self, T):
        """Time-reversed drift/diffusion over a horizon: s -> (T - s)."""
        return _ReversedCoefficients(self, float(T))

    # -- helpers used by the transition kernels / oracle ----------------------

    def mode_transition_data(self, n, x):
        if not 1 <= n <= self.n_modes:
            raise ValueError(f"mode {n} outside the kept range 1..{self.n_modes}")
        return _ModeTransitionData(self, int(n), float(x))


class _ReversedCoefficients:
    """M and G read backwards from a horizon T."""

    def __init__(self, engine: AdditiveMoments, T: float):
        self.engine = engine
        self.T = T

    def drift(self, s, x):
        return -self.engine.dmu_dt(self.T - s, x)

    def diffusion_squared(self, s, x):
        return self.engine.dnu_dt(self.T - s, x)


class _ModeTransitionData:
    """Frozen per-mode quantities needed by the one-mode transition kernel."""

    def __init__(self, engine: AdditiveMoments, n: int, x: float):
        self.engine = engine
        self.n = n
        self.x = x
        i = n - 1
        self.lam = float(engine._lam[i])
        self.sigma_q = float(engine.model.sigma * engine._q[i])
        self.e_x = float(basis_eval(COSINE, n, x))

    def lift_coefficient(self, t):
        return float(self.engine.lift_mode_coefficients(t)[self.n - 1])

    def forcing_integral(self, s, t):
        return float(self.engine._convolutions(t, s=s)[self.n - 1])
