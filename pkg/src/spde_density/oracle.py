"""Independent ground truth by exact sampling of the mode representations.

The additive field is a finite sum of Gaussian mode coefficients whose
terminal laws are known exactly, so samples involve no time stepping: the
oracle shares no discretization bias with the estimators it is used to
check.  The multiplicative and transformed fields are single-mode
exponentials of Gaussians, sampled exactly as well.

A path-wise exact recursion over a time grid is also provided (same
per-mode transitions applied step by step); the scalar-kernel consistency
smoke check builds on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rng
from .bases import SINE, basis_eval
from .densities import DegenerateAtomLaw, additive_law, kpz_law, multiplicative_law
from .errors import DegenerateLaw, WindowViolation
from .numerics import exprel2

DEFAULT_KS_SEED_DOMAIN = rng.ORACLE


def ks_statistic(samples, law) -> float:
    """Sup distance between the empirical CDF and the law's CDF.

    Exact O(n log n) evaluation on sorted samples.  Atomic laws have no
    meaningful KS statistic; compare interval masses instead.
    """
    if isinstance(law, DegenerateAtomLaw):
        raise DegenerateLaw("KS statistic undefined against an atom; use interval masses")
    s = np.sort(np.asarray(samples, dtype=float))
    n = s.size
    if n == 0:
        raise ValueError("need at least one sample")
    cdf = np.asarray(law.cdf(s), dtype=float)
    grid = np.arange(1, n + 1) / n
    d_plus = float(np.max(grid - cdf))
    d_minus = float(np.max(cdf - (grid - 1.0 / n)))
    return max(d_plus, d_minus, 0.0)


@dataclass(frozen=True)
class EnsembleStats:
    """Sampled ensemble with empirical summaries and a KS comparison."""

    samples: np.ndarray
    mean: float
    variance: float
    ks: float | None
    n: int
    seed: int


def _stats(samples, law, seed) -> EnsembleStats:
    samples = np.asarray(samples, dtype=float)
    ks = None
    if not isinstance(law, DegenerateAtomLaw):
        ks = ks_statistic(samples, law)
    return EnsembleStats(
        samples=samples,
        mean=float(np.mean(samples)),
        variance=float(np.var(samples, ddof=1)) if samples.size > 1 else 0.0,
        ks=ks,
        n=samples.size,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# additive field
# ---------------------------------------------------------------------------


def _additive_mode_frames(moments, t):
    """Per-mode decay, forcing integral and noise s.d. for a jump 0 -> t."""
    lam = moments._lam
    decay = np.exp(lam * t)
    conv = moments._convolutions(t)
    noise_sd = moments.model.sigma * moments._q * np.sqrt(exprel2(lam, t))
    return decay, conv, noise_sd


def sample_additive(t, x, n_samples, seed, moments, n_modes=None) -> EnsembleStats:
    """Exact draws of the additive field at (t, x).

    The truncation follows ``moments`` unless ``n_modes`` overrides it, in
    which case a matching engine is built so samples and reference law use
    the same mode count.
    """
    if n_modes is not None and n_modes != moments.n_modes:
        from .spectral import AdditiveMoments

        moments = AdditiveMoments(moments.model, n_modes=n_modes)
    n_modes = moments.n_modes
    ly0 = moments.lift_mode_coefficients(0.0)
    init_mean = np.array([moments.model.initial_mean(k) for k in range(1, n_modes + 1)])
    init_sd = np.sqrt(
        [moments.model.initial_variance(k) for k in range(1, n_modes + 1)]
    )
    decay, conv, noise_sd = _additive_mode_frames(moments, t)
    e_x = moments.basis_values(x)
    y_t = moments.lift.y(t, x)

    out = np.empty(n_samples)
    for start in range(0, n_samples, 4096):
        count = min(4096, n_samples - start)
        z = rng.normal_block(seed, rng.ORACLE, start, count, 2 * n_modes)
        v0 = (init_mean - ly0) + init_sd * z[:, :n_modes]
        v_t = v0 * decay + conv + noise_sd * z[:, n_modes:]
        out[start : start + count] = v_t @ e_x + y_t
    return _stats(out, additive_law(t, x, moments), seed)


def sample_additive_paths(ts, x, n_samples, seed, moments):
    """Exact path samples of the additive field on a time grid.

    Applies the per-mode exact transition between consecutive grid times
    (no discretization error).  Returns an (n_samples, len(ts)) array.
    """
    ts = np.asarray(ts, dtype=float)
    if ts.ndim != 1 or ts.size < 1 or np.any(np.diff(ts) <= 0) or ts[0] < 0:
        raise ValueError("ts must be strictly increasing nonnegative times")
    n_modes = moments.n_modes
    ly0 = moments.lift_mode_coefficients(0.0)
    init_mean = np.array([moments.model.initial_mean(k) for k in range(1, n_modes + 1)])
    init_sd = np.sqrt(
        [moments.model.initial_variance(k) for k in range(1, n_modes + 1)]
    )
    e_x = moments.basis_values(x)
    lam = moments._lam
    sigma_q = moments.model.sigma * moments._q

    steps = [(0.0, ts[0])] + [(ts[j], ts[j + 1]) for j in range(ts.size - 1)]
    draws_per_sample = n_modes * (1 + len(steps))
    out = np.empty((n_samples, ts.size))
    for start in range(0, n_samples, 2048):
        count = min(2048, n_samples - start)
        z = rng.normal_block(seed, rng.ORACLE, start, count, draws_per_sample)
        v = (init_mean - ly0) + init_sd * z[:, :n_modes]
        col = n_modes
        for j, (s_lo, s_hi) in enumerate(steps):
            d = s_hi - s_lo
            conv = moments._convolutions(s_hi, s=s_lo)
            noise_sd = sigma_q * np.sqrt(exprel2(lam, d))
            v = v * np.exp(lam * d) + conv + noise_sd * z[:, col : col + n_modes]
            col += n_modes
            out[start : start + count, j] = v @ e_x + moments.lift.y(s_hi, x)
    return out


def conditional_mode_state(moments, t, x, value, z_normals):
    """Draw the mode vector at time t conditioned on the field value at x.

    Prior modes are independent Gaussians; conditioning on their weighted
    sum is done by drawing from the prior and applying the exact linear
    correction (Matheron's rule).  ``z_normals`` has one standard normal
    per mode; a 2D block of normals with a matching vector of values
    yields one conditioned state per row.
    """
    n_modes = moments.n_modes
    ly0 = moments.lift_mode_coefficients(0.0)
    init_mean = np.array([moments.model.initial_mean(k) for k in range(1, n_modes + 1)])
    init_var = np.array([moments.model.initial_variance(k) for k in range(1, n_modes + 1)])
    decay, conv, noise_sd = _additive_mode_frames(moments, t)
    prior_mean = (init_mean - ly0) * decay + conv
    prior_var = init_var * decay**2 + noise_sd**2
    e_x = moments.basis_values(x)
    total = float(np.dot(prior_var, e_x**2))
    if total <= 0.0:
        raise DegenerateLaw("field value at this point is deterministic")
    target = np.asarray(value, dtype=float) - moments.lift.y(t, x)
    prior_draw = prior_mean + np.sqrt(prior_var) * np.asarray(z_normals, dtype=float)
    gain = prior_var * e_x / total
    if prior_draw.ndim == 2:
        correction = target - prior_draw @ e_x
        return prior_draw + np.outer(correction, gain)
    return prior_draw + gain * (float(target) - float(np.dot(prior_draw, e_x)))


# ---------------------------------------------------------------------------
# multiplicative field
# ---------------------------------------------------------------------------


def sample_multiplicative(t, x, n_samples, seed, model) -> EnsembleStats:
    """Exact draws of the single-mode multiplicative field at (t, x)."""
    e_val = basis_eval(SINE, model.m, x)
    z = rng.normal_block(seed, rng.ORACLE, 0, n_samples, 2)
    log_u0 = model.log_mean0 + math.sqrt(model.log_var0) * z[:, 0]
    w_t = math.sqrt(t) * z[:, 1] if t > 0 else np.zeros(n_samples)
    samples = np.exp(log_u0 + model.b_m * t + model.eps_m * w_t) * e_val
    return _stats(samples, multiplicative_law(t, x, model), seed)


def sample_kpz(t, x, n_samples, seed, model) -> EnsembleStats:
    """Exact draws of the transformed interface field at (t, x)."""
    if not model.contains(x):
        raise WindowViolation(f"x = {x} outside window {model.window}")
    e_val = basis_eval(SINE, model.m, x)
    scale = 2.0 * model.theta / model.xi
    z = rng.normal_block(seed, rng.ORACLE, 0, n_samples, 2)
    log_u0 = model.log_mean0 + math.sqrt(model.log_var0) * z[:, 0]
    w_t = math.sqrt(t) * z[:, 1] if t > 0 else np.zeros(n_samples)
    log_mode = log_u0 + model.b_tilde_m * t + model.eps * model.q_m * w_t
    samples = scale * (log_mode + math.log(abs(e_val)))
    return _stats(samples, kpz_law(t, x, model), seed)
