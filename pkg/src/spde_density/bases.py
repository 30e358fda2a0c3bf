"""Eigenbases and eigenvalues of the spatial operators on (0, 1).

Two orthonormal families are used:

* cosine basis ``sqrt(2)*cos(beta_n x)`` with ``beta_n = (n - 1/2)*pi``,
  satisfying a Neumann condition at x = 0 and a Dirichlet condition at
  x = 1 (all members vanish exactly at x = 1);
* sine basis ``sqrt(2)*sin(n*pi*x)`` for Dirichlet conditions at both ends.

Evaluation goes through :func:`numerics.cospi`/:func:`numerics.sinpi` so
nodal zeros are exact in floating point, which the degenerate-law handling
downstream relies on.
"""

import numpy as np

from .numerics import SQRT2, cospi, integrate_gauss_legendre, sinpi

COSINE = "cosine"
SINE = "sine"


def beta(n):
    """Cosine-basis wavenumber (n - 1/2) * pi."""
    return (np.asarray(n, dtype=float) - 0.5) * np.pi


def basis_eval(basis, n, x):
    """Evaluate the n-th basis function at x (vectorized in either arg)."""
    n = np.asarray(n, dtype=float)
    x = np.asarray(x, dtype=float)
    if basis == COSINE:
        out = SQRT2 * cospi((n - 0.5) * x)
    elif basis == SINE:
        out = SQRT2 * sinpi(n * x)
    else:
        raise ValueError(f"unknown basis {basis!r}")
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def lambda_additive(n, a, b):
    """Eigenvalue b - (a*beta_n)^2 of the additive-noise generator."""
    out = b - (a * beta(n)) ** 2
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def lambda_nonlocal(n, a, b, c, alpha):
    """Eigenvalue c - [a^2 (n pi)^2 + b (n pi)^alpha] with the nonlocal term."""
    n = np.asarray(n, dtype=float)
    out = c - ((a * n * np.pi) ** 2 + b * (n * np.pi) ** alpha)
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def fourier_coefficient(func, basis, n, order=64, panels=None):
    """Inner product of ``func`` with the n-th basis function on [0, 1].

    Composite Gauss-Legendre quadrature; the panel count grows with n so
    the oscillation stays resolved.  Deterministic for fixed order.
    """
    if panels is None:
        panels = max(1, int(np.ceil(n / 24)))
    return integrate_gauss_legendre(
        lambda x: np.asarray(func(x), dtype=float) * basis_eval(basis, n, x),
        0.0,
        1.0,
        order=order,
        panels=panels,
    )
