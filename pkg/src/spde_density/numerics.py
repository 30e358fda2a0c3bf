"""Small numerical kernels: trig evaluation with exact zeros, the stable
exponential-relative helper, and quadrature rules.

Everything here is deterministic and pure; the rest of the package builds
on these primitives.
"""

from functools import lru_cache

import numpy as np

from .errors import QuadratureFailure

SQRT2 = float(np.sqrt(2.0))


def sinpi(y):
    """sin(pi * y) with exact zeros at integer y.

    Plain ``np.sin(np.pi * y)`` returns ~1e-16 at representable integer
    arguments because ``np.pi`` is rounded; eigenfunctions must vanish
    exactly at their nodes, so integers are special-cased after range
    reduction mod 2.
    """
    y = np.asarray(y, dtype=float)
    r = np.mod(y, 2.0)
    out = np.sin(np.pi * r)
    exact = r * 2.0 == np.round(r * 2.0)  # r in {0, 0.5, 1, 1.5}
    table = np.select(
        [r == 0.0, r == 0.5, r == 1.0, r == 1.5], [0.0, 1.0, 0.0, -1.0], default=0.0
    )
    out = np.where(exact, table, out)
    if out.ndim == 0:
        return float(out)
    return out


def cospi(y):
    """cos(pi * y) with exact zeros at half-integer y (see :func:`sinpi`)."""
    y = np.asarray(y, dtype=float)
    r = np.mod(y, 2.0)
    out = np.cos(np.pi * r)
    exact = r * 2.0 == np.round(r * 2.0)
    table = np.select(
        [r == 0.0, r == 0.5, r == 1.0, r == 1.5], [1.0, 0.0, -1.0, 0.0], default=0.0
    )
    out = np.where(exact, table, out)
    if out.ndim == 0:
        return float(out)
    return out


def exprel2(lam, t):
    """Stable evaluation of (exp(2*lam*t) - 1) / (2*lam).

    Continuous through lam = 0 with limit t.  For |2*lam*t| < 1e-4 the
    truncated series t*(1 + lam*t + (2*lam*t)^2/6) avoids the catastrophic
    cancellation of the direct formula.
    """
    lam = np.asarray(lam, dtype=float)
    t = np.asarray(t, dtype=float)
    z = 2.0 * lam * t
    small = np.abs(z) < 1e-4
    # np.where evaluates both branches; guard the division against lam == 0.
    lam_safe = np.where(lam == 0.0, 1.0, lam)
    direct = np.expm1(z) / (2.0 * lam_safe)
    series = t * (1.0 + lam * t + z * z / 6.0)
    out = np.where(small, series, direct)
    if out.ndim == 0:
        return float(out)
    return out


def exprel1(lam, t):
    """Stable (exp(lam*t) - 1) / lam, the one-sided sibling of exprel2."""
    return exprel2(np.asarray(lam, dtype=float) / 2.0, t)


@lru_cache(maxsize=64)
def _leggauss(order):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


def gauss_legendre(a, b, order):
    """Gauss-Legendre nodes and weights mapped to [a, b]."""
    nodes, weights = _leggauss(order)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return mid + half * nodes, half * weights


def integrate_gauss_legendre(f, a, b, order=64, panels=1):
    """Composite Gauss-Legendre integral of a vectorized integrand."""
    edges = np.linspace(a, b, panels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(lo, hi, order)
        total += float(np.dot(w, f(x)))
    return total


@lru_cache(maxsize=16)
def _hermgauss(order):
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    return nodes, weights


def gauss_hermite_mean(f, mean, std, order=160):
    """E[f(Z)] for Z ~ N(mean, std^2) by Gauss-Hermite quadrature."""
    nodes, weights = _hermgauss(order)
    z = mean + SQRT2 * std * nodes
    return float(np.dot(weights, f(z)) / np.sqrt(np.pi))


def adaptive_simpson(f, a, b, tol=1e-10, max_depth=48, min_panels=8):
    """Adaptive Simpson integration of a scalar integrand.

    The interval is pre-split into ``min_panels`` panels so narrow features
    cannot hide from the initial error estimate, then each panel is refined
    recursively with the standard Richardson error control.
    """
    if b == a:
        return 0.0
    if b < a:
        return -adaptive_simpson(f, b, a, tol, max_depth, min_panels)

    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, eps, depth):
        xm = 0.5 * (x0 + x2)
        xl = 0.5 * (x0 + xm)
        xr = 0.5 * (xm + x2)
        fl = f(xl)
        fr = f(xr)
        left = simpson(x0, xm, f0, fl, f1)
        right = simpson(xm, x2, f1, fr, f2)
        delta = left + right - whole
        if depth >= max_depth:
            raise QuadratureFailure(
                f"adaptive Simpson exceeded depth {max_depth} on [{x0}, {x2}]"
            )
        if abs(delta) <= 15.0 * eps:
            return left + right + delta / 15.0
        return recurse(x0, xm, f0, fl, f1, left, eps / 2.0, depth + 1) + recurse(
            xm, x2, f1, fr, f2, right, eps / 2.0, depth + 1
        )

    edges = np.linspace(a, b, min_panels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        f0, f1, f2 = f(lo), f(mid), f(hi)
        whole = simpson(lo, hi, f0, f1, f2)
        total += recurse(lo, hi, f0, f1, f2, whole, tol / min_panels, 0)
    return total
