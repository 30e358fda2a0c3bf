"""Model types and validation.

Three stochastic heat equations on (0, 1) are covered:

* additive trace-class noise with non-homogeneous boundary data,
* multiplicative single-mode noise with a nonlocal diffusion term and
  homogeneous Dirichlet boundaries,
* the associated interface-growth equation obtained from the second model
  by the logarithmic (Cole-Hopf) change of variables on a window that
  avoids the excited mode's zeros.

All types are immutable after validation and safe to share across
workers.  ``validate`` collects every violated invariant instead of
stopping at the first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bases
from .errors import DegenerateRobin, InvalidParameter
from .forcing import Forcing, ZERO_FORCING, as_forcing
from .homogenization import BoundaryCase, build_lift, homogeneous_main

PI_SQ_OVER_6 = math.pi**2 / 6.0


# ---------------------------------------------------------------------------
# noise amplitudes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReciprocalAmplitudes:
    """q_n = 1/n; squared tail sums have the closed form pi^2/6 - H_N^(2)."""

    def q(self, n):
        return 1.0 / np.asarray(n, dtype=float)

    def tail_sum_squares(self, n_kept: int) -> float:
        partial = float(np.sum(1.0 / np.arange(1, n_kept + 1, dtype=float) ** 2))
        return max(PI_SQ_OVER_6 - partial, 0.0)


@dataclass(frozen=True)
class ExplicitAmplitudes:
    """Finite list of amplitudes; q_n = 0 beyond the list."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def q(self, n):
        n = np.atleast_1d(np.asarray(n, dtype=int))
        vals = np.zeros(n.shape, dtype=float)
        inside = (n >= 1) & (n <= len(self.values))
        if len(self.values):
            arr = np.asarray(self.values)
            vals[inside] = arr[n[inside] - 1]
        return vals if vals.size > 1 else float(vals[0])

    def tail_sum_squares(self, n_kept: int) -> float:
        return float(sum(v * v for v in self.values[n_kept:]))


@dataclass(frozen=True)
class SingleModeAmplitudes:
    """Only mode ``mode`` carries noise."""

    mode: int
    amplitude: float

    def q(self, n):
        n = np.asarray(n, dtype=int)
        out = np.where(n == self.mode, float(self.amplitude), 0.0)
        return float(out) if out.ndim == 0 else out

    def tail_sum_squares(self, n_kept: int) -> float:
        return self.amplitude**2 if self.mode > n_kept else 0.0


AmplitudeRule = ReciprocalAmplitudes | ExplicitAmplitudes | SingleModeAmplitudes


@dataclass(frozen=True)
class NoiseSpec:
    """Amplitude rule plus the series truncation order."""

    rule: AmplitudeRule
    truncation_order: int = 10

    def q(self, n):
        return self.rule.q(n)

    def truncated_trace(self, n: int | None = None) -> float:
        n = self.truncation_order if n is None else n
        q = np.atleast_1d(self.rule.q(np.arange(1, n + 1)))
        return float(np.sum(q * q))

    def tail_sum_squares(self, n_kept: int) -> float:
        return self.rule.tail_sum_squares(n_kept)


@dataclass(frozen=True)
class ModeInitialLaw:
    """Normal law of one initial mode coefficient."""

    mean: float
    variance: float


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdditiveModel:
    """Additive-noise heat equation with boundary lifting data."""

    a: float
    b: float
    sigma: float
    noise: NoiseSpec
    initial_mode_laws: tuple = ()
    forcing: Forcing = field(default=ZERO_FORCING)
    boundary: BoundaryCase = field(default_factory=homogeneous_main)

    def __post_init__(self):
        object.__setattr__(self, "forcing", as_forcing(self.forcing))
        object.__setattr__(
            self,
            "initial_mode_laws",
            tuple(
                law if isinstance(law, ModeInitialLaw) else ModeInitialLaw(*law)
                for law in self.initial_mode_laws
            ),
        )

    def initial_mean(self, n: int) -> float:
        laws = self.initial_mode_laws
        return laws[n - 1].mean if 1 <= n <= len(laws) else 0.0

    def initial_variance(self, n: int) -> float:
        laws = self.initial_mode_laws
        return laws[n - 1].variance if 1 <= n <= len(laws) else 0.0

    def lambda_n(self, n):
        return bases.lambda_additive(n, self.a, self.b)


@dataclass(frozen=True)
class MultiplicativeModel:
    """Single-mode multiplicative-noise equation with nonlocal diffusion."""

    a: float
    b: float
    c: float
    alpha: float
    eps: float
    m: int
    q_m: float
    log_mean0: float  # E[ln of the initial mode amplitude]
    log_var0: float  # Var[ln of the initial mode amplitude]

    @property
    def eps_m(self) -> float:
        return self.eps * self.q_m

    @property
    def lambda_m(self) -> float:
        return bases.lambda_nonlocal(self.m, self.a, self.b, self.c, self.alpha)

    @property
    def b_m(self) -> float:
        return self.lambda_m - self.eps_m**2 / 2.0


@dataclass(frozen=True)
class KpzModel:
    """Interface-growth equation tied to the multiplicative model.

    ``window`` is an open interval that must stay strictly inside one lobe
    of the excited sine mode (no nodes of sin(m*pi*x) inside or at the
    endpoints), so the logarithmic transform is well defined on it.
    """

    theta: float
    xi: float
    eps: float
    m: int
    q_m: float
    log_mean0: float
    log_var0: float
    window: tuple

    def __post_init__(self):
        object.__setattr__(self, "window", (float(self.window[0]), float(self.window[1])))

    @property
    def eps_m(self) -> float:
        return self.eps * self.q_m

    @property
    def b_tilde_m(self) -> float:
        return -self.theta * (self.m * math.pi) ** 2 - (self.eps * self.q_m) ** 2 / 2.0

    def contains(self, x: float) -> bool:
        lo, hi = self.window
        return lo < x < hi


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _finite(value) -> bool:
    return isinstance(value, (int, float)) and math.isfinite(value)


def _validate_additive(model: AdditiveModel, bad):
    for name in ("a", "b", "sigma"):
        if not _finite(getattr(model, name)):
            bad(name, "must be a finite real")
    order = model.noise.truncation_order
    if not isinstance(order, int) or order < 1:
        bad("noise.truncation_order", "must be a positive integer")
        order = max(int(order), 1) if isinstance(order, (int, float)) else 1
    q = np.atleast_1d(model.noise.q(np.arange(1, order + 1)))
    if np.any(q < 0.0):
        bad("noise.amplitudes", "q_n must be nonnegative")
    if not np.isfinite(model.noise.truncated_trace(order)):
        bad("noise.amplitudes", "truncated trace must be finite")
    for i, law in enumerate(model.initial_mode_laws, start=1):
        if not _finite(law.mean):
            bad(f"initial_mode_laws[{i}].mean", "must be a finite real")
        if not _finite(law.variance) or law.variance < 0.0:
            bad(f"initial_mode_laws[{i}].variance", "must be finite and >= 0")
    abs_sums_finite = all(
        _finite(law.mean) and _finite(law.variance) for law in model.initial_mode_laws
    )
    if not abs_sums_finite:
        bad("initial_mode_laws", "summed means/variances must be finite")
    try:
        build_lift(model.boundary)
    except DegenerateRobin as exc:
        bad("boundary", str(exc))
    for name, fn, args in (
        ("forcing", model.forcing, (0.0, 0.5)),
        ("boundary.g", model.boundary.g, (0.0,)),
        ("boundary.h", model.boundary.h, (0.0,)),
    ):
        try:
            value = fn(*args)
            if not np.all(np.isfinite(value)):
                bad(name, "evaluates to a non-finite value")
        except Exception as exc:  # noqa: BLE001 - reported, not swallowed
            bad(name, f"not evaluable: {exc}")


def _validate_multiplicative(model: MultiplicativeModel, bad):
    for name in ("a", "b", "c"):
        if not _finite(getattr(model, name)):
            bad(name, "must be a finite real")
    if not (0.0 < model.alpha < 2.0):
        bad("alpha", "must lie in the open interval (0, 2)")
    if not (_finite(model.eps) and model.eps > 0.0):
        bad("eps", "must be a positive real")
    if not (isinstance(model.m, int) and model.m >= 1):
        bad("m", "must be a positive integer")
    if not (_finite(model.q_m) and model.q_m >= 0.0):
        bad("q_m", "must be a nonnegative real")
    if not _finite(model.log_mean0):
        bad("log_mean0", "must be a finite real")
    if not (_finite(model.log_var0) and model.log_var0 >= 0.0):
        bad("log_var0", "must be finite and >= 0 (0 only for a deterministic start)")
    try:
        if not (_finite(model.eps_m) and _finite(model.b_m)):
            bad("b_m", "derived drift must be finite")
    except Exception:
        bad("b_m", "derived drift must be computable")


def _validate_kpz(model: KpzModel, bad):
    if not (_finite(model.theta) and model.theta > 0.0):
        bad("theta", "must be a positive real")
    if not (_finite(model.xi) and model.xi != 0.0):
        bad("xi", "must be a nonzero real")
    if not (_finite(model.eps) and model.eps > 0.0):
        bad("eps", "must be a positive real")
    if not (isinstance(model.m, int) and model.m >= 1):
        bad("m", "must be a positive integer")
    if not (_finite(model.q_m) and model.q_m >= 0.0):
        bad("q_m", "must be a nonnegative real")
    if not _finite(model.log_mean0):
        bad("log_mean0", "must be a finite real")
    if not (_finite(model.log_var0) and model.log_var0 >= 0.0):
        bad("log_var0", "must be finite and >= 0")
    lo, hi = model.window
    if not (0.0 < lo < hi < 1.0):
        bad("window", "need 0 < lo < hi < 1")
    else:
        m = model.m
        nodes = np.arange(0, m + 1) / m
        if np.any(np.isclose(lo, nodes, atol=1e-15)) or np.any(
            np.isclose(hi, nodes, atol=1e-15)
        ):
            bad("window", "endpoints must avoid the sine nodes k/m")
        elif math.floor(m * lo) != math.floor(m * hi):
            bad("window", "must stay inside a single lobe of sin(m*pi*x)")
    if not _finite(model.b_tilde_m):
        bad("b_tilde_m", "derived drift must be finite")


def validate(model):
    """Return ``model`` if every invariant holds, else raise InvalidParameter.

    Idempotent: the validated object is the input object.
    """
    violations = []

    def bad(field_path, reason):
        violations.append((field_path, reason))

    if isinstance(model, AdditiveModel):
        _validate_additive(model, bad)
    elif isinstance(model, MultiplicativeModel):
        _validate_multiplicative(model, bad)
    elif isinstance(model, KpzModel):
        _validate_kpz(model, bad)
    else:
        bad("model", f"unsupported model type {type(model).__name__}")
    if violations:
        raise InvalidParameter(violations)
    return model


# ---------------------------------------------------------------------------
# noise-interpretation conversion
# ---------------------------------------------------------------------------


def stratonovich_to_ito(drift_constant: float, eps: float, q_m: float) -> float:
    """Map a Stratonovich reaction coefficient to its Ito counterpart.

    The single-mode multiplicative equation picks up +(eps*q_m)^2/2 in the
    zeroth-order coefficient when rewritten in the Ito sense.
    """
    return drift_constant + (eps * q_m) ** 2 / 2.0


def stratonovich_from_ito(drift_constant: float, eps: float, q_m: float) -> float:
    """Inverse of :func:`stratonovich_to_ito`."""
    return drift_constant - (eps * q_m) ** 2 / 2.0
