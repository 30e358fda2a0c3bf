"""Monte Carlo density estimation through probabilistic representations.

Three estimators, one per model family:

* additive: simulate the time-reversed auxiliary SDE driven by the
  density drift/diffusion (M, G) backwards from the horizon and average
  the initial-time Gaussian density at the terminal point;
* multiplicative: forward geometric Brownian paths with a scalar
  exponential weight; the exact log-space sampler is the default (the SDE
  is linear, so exact sampling removes all time-discretization bias) and
  Euler-Maruyama is kept for comparison;
* interface growth: constant-coefficient Gaussian steps, where the
  Euler scheme is already exact in distribution.

Estimates are deterministic functions of (seed, n_paths, dt, inputs):
normals come from counter-based streams keyed by path index, chunk sizes
are fixed, and the final reduction is a single pairwise sum over the path
values in index order.  Thread counts never change results.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import rng
from .densities import GaussianLaw, kpz_law, multiplicative_law, classify_region
from .errors import (
    DegenerateInitialLaw,
    NegativeDiffusion,
    NonPositiveDiffusion,
    RegionViolation,
    WindowViolation,
)

CHUNK = 1024  # fixed path chunk; independent of the thread count


@dataclass(frozen=True)
class McEstimate:
    """A Monte Carlo value with its sampling error and provenance."""

    value: float
    stderr: float
    n_paths: int
    seed: int
    dt: float


@dataclass(frozen=True)
class SdeCoefficients:
    """Scalar drift/diffusion over a fixed horizon [s0, T]."""

    drift: Callable  # (s, state) -> float or vector
    diffusion: Callable  # (s, state) -> float or vector, must be >= 0
    s0: float
    T: float


def _time_grid(s0, T, dt):
    """Step times and sizes; the last step is shortened to land on T."""
    length = T - s0
    if length <= 0.0:
        return np.empty(0), np.empty(0)
    n_full = max(int(math.ceil(length / dt - 1e-9)), 1)
    times = s0 + dt * np.arange(n_full)
    sizes = np.full(n_full, dt)
    sizes[-1] = T - times[-1]
    return times, sizes


def euler_maruyama(coeffs: SdeCoefficients, init, dt, seed, path_index=0):
    """Terminal value of one Euler-Maruyama path.

    Step rule: X <- X + drift(s, X)*h + diffusion(s, X)*sqrt(h)*Z with Z
    from the counter-based stream of this path index.
    """
    times, sizes = _time_grid(coeffs.s0, coeffs.T, dt)
    if times.size == 0:
        return float(init)
    z = rng.normals(seed, rng.FEYNMAN_KAC, path_index, times.size)
    x = float(init)
    for s, h, zk in zip(times, sizes, z):
        dif = coeffs.diffusion(s, x)
        if dif < 0.0:
            raise NegativeDiffusion(f"diffusion {dif} < 0 at s = {s}")
        x = x + coeffs.drift(s, x) * h + dif * math.sqrt(h) * zk
    return x


def _em_terminal_ensemble(coeffs, init, dt, seed, n_paths, threads=1):
    """Terminal values of n_paths Euler-Maruyama paths (vectorized chunks).

    Elementwise identical to :func:`euler_maruyama` with the same
    (seed, path_index).
    """
    times, sizes = _time_grid(coeffs.s0, coeffs.T, dt)
    if times.size == 0:
        return np.full(n_paths, float(init))

    def run_chunk(start):
        count = min(CHUNK, n_paths - start)
        z = rng.normal_block(seed, rng.FEYNMAN_KAC, start, count, times.size)
        x = np.full(count, float(init))
        for k, (s, h) in enumerate(zip(times, sizes)):
            dif = np.asarray(coeffs.diffusion(s, x), dtype=float)
            if np.any(dif < 0.0):
                raise NegativeDiffusion(f"diffusion < 0 at s = {s}")
            x = x + np.asarray(coeffs.drift(s, x)) * h + dif * math.sqrt(h) * z[:, k]
        return x

    starts = range(0, n_paths, CHUNK)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(run_chunk, starts))
    else:
        chunks = [run_chunk(s) for s in starts]
    return np.concatenate(chunks) if chunks else np.empty(0)


def _mc_reduce(values, n_paths, seed, dt):
    value = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0
    return McEstimate(value=value, stderr=stderr, n_paths=n_paths, seed=seed, dt=dt)


# ---------------------------------------------------------------------------
# additive estimator
# ---------------------------------------------------------------------------


def estimate_additive_pdf(u, t, x, T, dt, n_paths, seed, moments, threads=1) -> McEstimate:
    """Density of the additive field at (u, t, x) by backward simulation.

    Requires the reversed diffusion to stay positive on the horizon and a
    non-degenerate initial law (the terminal average evaluates the
    initial-time Gaussian).
    """
    if not 0.0 <= t <= T:
        raise ValueError(f"need 0 <= t <= T, got t = {t}, T = {T}")
    nu0 = moments.nu(0.0, x)
    if nu0 <= 0.0:
        raise DegenerateInitialLaw(f"nu(0, {x}) = {nu0}: initial law is an atom")
    p0 = GaussianLaw(moments.mu(0.0, x), nu0)
    if t == 0.0:
        return McEstimate(float(p0.pdf(u)), 0.0, n_paths, seed, dt)

    rev = moments.reversed_coefficients(T)
    times, _ = _time_grid(T - t, T, dt)
    g_vals = np.array([rev.diffusion_squared(s, x) for s in times])
    if np.any(g_vals <= 0.0):
        bad = times[np.argmax(g_vals <= 0.0)]
        raise NonPositiveDiffusion(f"reversed diffusion not positive at s = {bad}")
    m_vals = np.array([rev.drift(s, x) for s in times])
    root_g = np.sqrt(g_vals)
    lookup = {float(s): i for i, s in enumerate(times)}

    coeffs = SdeCoefficients(
        drift=lambda s, state: m_vals[lookup[float(s)]],
        diffusion=lambda s, state: root_g[lookup[float(s)]] * np.ones_like(state)
        if np.ndim(state)
        else root_g[lookup[float(s)]],
        s0=T - t,
        T=T,
    )
    terminal = _em_terminal_ensemble(coeffs, u, dt, seed, n_paths, threads)
    return _mc_reduce(p0.pdf(terminal), n_paths, seed, dt)


# ---------------------------------------------------------------------------
# multiplicative estimator
# ---------------------------------------------------------------------------


def estimate_multiplicative_pdf(
    u, t, x, dt, n_paths, seed, model, scheme="exact-gbm", threads=1
) -> McEstimate:
    """Weighted forward representation of the signed log-normal density.

    ``scheme`` is "exact-gbm" (log-space sampling, no time-discretization
    error) or "euler".  The path diffusion uses eps_m*|state| so the
    coefficient stays nonnegative on the negative support branch; the law
    of the paths is unchanged.
    """
    if scheme not in ("exact-gbm", "euler"):
        raise ValueError(f"unknown scheme {scheme!r}")
    region = classify_region(u, x, model.m)
    if region.kind not in ("d1", "d2"):
        raise RegionViolation(f"(u, x) = ({u}, {x}) not inside a sign lobe")
    if model.log_var0 <= 0.0:
        raise DegenerateInitialLaw("deterministic start: initial law is an atom")
    p0 = multiplicative_law(0.0, x, model)
    if t == 0.0:
        return McEstimate(float(p0.pdf(u)), 0.0, n_paths, seed, dt)

    eps_m = model.eps_m
    b_m = model.b_m
    weight = math.exp((eps_m**2 / 2.0 - b_m) * t)
    drift_rate = 1.5 * eps_m**2 - b_m

    if scheme == "exact-gbm":
        log_rate = drift_rate - eps_m**2 / 2.0  # eps_m^2 - b_m
        sd = eps_m * math.sqrt(t)
        chunks = []
        for start in range(0, n_paths, CHUNK):
            count = min(CHUNK, n_paths - start)
            z = rng.normal_block(seed, rng.FEYNMAN_KAC, start, count, 1)[:, 0]
            chunks.append(u * np.exp(log_rate * t + sd * z))
        terminal = np.concatenate(chunks)
    else:
        coeffs = SdeCoefficients(
            drift=lambda s, state: drift_rate * state,
            diffusion=lambda s, state: eps_m * np.abs(state),
            s0=0.0,
            T=t,
        )
        terminal = _em_terminal_ensemble(coeffs, u, dt, seed, n_paths, threads)
    return _mc_reduce(weight * p0.pdf(terminal), n_paths, seed, dt)


# ---------------------------------------------------------------------------
# interface-growth estimator
# ---------------------------------------------------------------------------


def estimate_kpz_pdf(kappa, t, x, T, dt, n_paths, seed, model, threads=1) -> McEstimate:
    """Backward representation of the transformed field's Gaussian density."""
    if not model.contains(x):
        raise WindowViolation(f"x = {x} outside window {model.window}")
    if not 0.0 <= t <= T:
        raise ValueError(f"need 0 <= t <= T, got t = {t}, T = {T}")
    if model.log_var0 <= 0.0:
        raise DegenerateInitialLaw("deterministic start: initial law is an atom")
    p0 = kpz_law(0.0, x, model)
    if t == 0.0:
        return McEstimate(float(p0.pdf(kappa)), 0.0, n_paths, seed, dt)

    scale = 2.0 * model.theta / model.xi
    drift = -scale * model.b_tilde_m
    diffusion = abs(scale * model.eps * model.q_m)
    coeffs = SdeCoefficients(
        drift=lambda s, state: drift,
        diffusion=lambda s, state: diffusion,
        s0=T - t,
        T=T,
    )
    terminal = _em_terminal_ensemble(coeffs, kappa, dt, seed, n_paths, threads)
    return _mc_reduce(p0.pdf(terminal), n_paths, seed, dt)
