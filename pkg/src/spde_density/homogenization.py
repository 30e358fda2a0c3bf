"""Boundary lifting.

Non-homogeneous boundary data is absorbed by a polynomial-in-x lift
Y(t, x); subtracting it reduces the problem to homogeneous boundary
conditions with an adjusted forcing.  The lift catalog is closed: the
principal case (Neumann at 0 / Dirichlet at 1) plus eight further
condition pairs, each with its printed polynomial.  A general two-point
solver is deliberately avoided -- explicit formulas plus the residual
check in :func:`verify_boundary` make transcription errors visible
instead of masking them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRobin
from .forcing import CallableForcing, Forcing, SeparableForcing, SeparableTerm
from .timefuncs import CallableTimeFunction, TimeFunction, TrigPoly, as_time_function

MAIN_CASE = "main"
_TABLE_CASES = (1, 2, 3, 4, 5, 6, 7, 8)


@dataclass(frozen=True)
class BoundaryCase:
    """One boundary-condition pair with its data.

    ``case`` is ``"main"`` (derivative prescribed at x = 0, value at x = 1)
    or an integer 1..8 selecting a catalog row.  ``g`` and ``h`` are the
    data at x = 0 and x = 1 respectively (the main case swaps roles:
    there h is the x = 0 slope and g the x = 1 value).
    """

    case: int | str
    g: TimeFunction
    h: TimeFunction
    gamma: float | None = None
    gamma1: float | None = None
    gamma2: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "g", as_time_function(self.g))
        object.__setattr__(self, "h", as_time_function(self.h))
        if self.case != MAIN_CASE and self.case not in _TABLE_CASES:
            raise ValueError(f"unknown boundary case {self.case!r}")

    @property
    def is_homogeneous_data(self) -> bool:
        return (
            isinstance(self.g, TrigPoly)
            and self.g.is_zero
            and isinstance(self.h, TrigPoly)
            and self.h.is_zero
        )


def homogeneous_main() -> BoundaryCase:
    return BoundaryCase(MAIN_CASE, TrigPoly(), TrigPoly())


class LiftFunction:
    """Y(t, x) = c0(t) + c1(t) x + c2(t) x^2 with time derivatives."""

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)  # (c0, c1, c2) TimeFunctions
        self.dcoeffs = tuple(c.derivative() for c in self.coeffs)

    def __call__(self, t, x):
        return self.y(t, x)

    def _poly(self, coeff_values, x):
        x = np.asarray(x, dtype=float)
        c0, c1, c2 = coeff_values
        out = c0 + x * (c1 + x * c2)
        return float(out) if np.ndim(out) == 0 else out

    def y(self, t, x):
        return self._poly([c(t) for c in self.coeffs], x)

    def dy_dt(self, t, x):
        return self._poly([c(t) for c in self.dcoeffs], x)

    def dy_dx(self, t, x):
        x = np.asarray(x, dtype=float)
        _, c1, c2 = (c(t) for c in self.coeffs)
        out = c1 + 2.0 * c2 * x
        return float(out) if np.ndim(out) == 0 else out

    @property
    def is_zero(self) -> bool:
        return all(isinstance(c, TrigPoly) and c.is_zero for c in self.coeffs)


def _combo(cg: float, ch: float, g: TimeFunction, h: TimeFunction) -> TimeFunction:
    """The time function cg*g + ch*h, keeping trig form when possible."""
    if isinstance(g, TrigPoly) and isinstance(h, TrigPoly):
        return g.scaled(cg).plus(h.scaled(ch))
    dg = g.derivative()
    dh = h.derivative()
    return CallableTimeFunction(
        fn=lambda t: cg * g(t) + ch * h(t),
        deriv=lambda t: cg * dg(t) + ch * dh(t),
    )


def build_lift(case: BoundaryCase) -> LiftFunction:
    """Construct the catalog lift for the given boundary case.

    Raises :class:`DegenerateRobin` when a Robin denominator vanishes.
    """
    g, h = case.g, case.h
    zero = TrigPoly()
    c = case.case
    if c == MAIN_CASE:
        # slope h at x = 0, value g at x = 1: Y = h*(x - 1) + g
        coeffs = (_combo(1.0, -1.0, g, h), _combo(0.0, 1.0, g, h), zero)
    elif c == 1:
        coeffs = (_combo(1.0, 0.0, g, h), _combo(-1.0, 1.0, g, h), zero)
    elif c == 2:
        coeffs = (_combo(1.0, 0.0, g, h), _combo(0.0, 1.0, g, h), zero)
    elif c == 3:
        coeffs = (zero, _combo(1.0, 0.0, g, h), _combo(-0.5, 0.5, g, h))
    elif c == 4:
        gam = _require(case.gamma, "gamma", c)
        den = 1.0 + gam
        _nonzero(den, "1 + gamma", c)
        coeffs = (_combo(1.0, 0.0, g, h), _combo(-gam / den, 1.0 / den, g, h), zero)
    elif c == 5:
        gam = _require(case.gamma, "gamma", c)
        _nonzero(gam, "gamma", c)
        coeffs = (
            _combo(-(1.0 + gam) / gam, 1.0 / gam, g, h),
            _combo(1.0, 0.0, g, h),
            zero,
        )
    elif c == 6:
        gam = _require(case.gamma, "gamma", c)
        den = 1.0 + gam
        _nonzero(den, "1 + gamma", c)
        coeffs = (
            _combo(-1.0 / den, 1.0 / den, g, h),
            _combo(1.0 / den, gam / den, g, h),
            zero,
        )
    elif c == 7:
        gam = _require(case.gamma, "gamma", c)
        _nonzero(gam, "gamma", c)
        coeffs = (_combo(-1.0 / gam, 1.0 / gam, g, h), _combo(0.0, 1.0, g, h), zero)
    elif c == 8:
        g1 = _require(case.gamma1, "gamma1", c)
        g2 = _require(case.gamma2, "gamma2", c)
        den = g1 + g2 + g1 * g2
        _nonzero(den, "gamma1 + gamma2 + gamma1*gamma2", c)
        coeffs = (
            _combo(-(1.0 + g2) / den, 1.0 / den, g, h),
            _combo(g2 / den, g1 / den, g, h),
            zero,
        )
    else:  # pragma: no cover - guarded in BoundaryCase
        raise ValueError(f"unknown boundary case {c!r}")
    return LiftFunction(coeffs)


def _require(value, name, case):
    if value is None:
        raise DegenerateRobin(f"case {case} needs {name}")
    return float(value)


def _nonzero(value, name, case):
    if value == 0.0:
        raise DegenerateRobin(f"case {case}: {name} must be nonzero")


def effective_forcing(f: Forcing, lift: LiftFunction, b: float) -> Forcing:
    """Forcing of the homogenized problem: f - dY/dt + b*Y.

    Separability (and with it the closed-form convolution path) is
    preserved when the input forcing is separable: the lift contributes
    one polynomial term per coefficient.
    """
    lift_terms = []
    for k, (ck, dck) in enumerate(zip(lift.coeffs, lift.dcoeffs)):
        tf = _combo_b(ck, dck, b)
        if isinstance(tf, TrigPoly) and tf.is_zero:
            continue
        lift_terms.append(SeparableTerm(tf, _monomial(k)))

    if isinstance(f, SeparableForcing):
        return SeparableForcing(list(f.terms) + lift_terms)
    lift_part = SeparableForcing(lift_terms)
    return CallableForcing(lambda t, x: f(t, x) + lift_part(t, x))


def _combo_b(ck: TimeFunction, dck: TimeFunction, b: float) -> TimeFunction:
    """b*ck - dck as a time function."""
    if isinstance(ck, TrigPoly) and isinstance(dck, TrigPoly):
        return ck.scaled(b).plus(dck.scaled(-1.0))
    return CallableTimeFunction(fn=lambda t: b * ck(t) - dck(t))


def _monomial(k: int):
    if k == 0:
        return lambda x: np.ones_like(np.asarray(x, dtype=float))
    if k == 1:
        return lambda x: np.asarray(x, dtype=float)
    return lambda x: np.asarray(x, dtype=float) ** k


def boundary_residuals(lift: LiftFunction, case: BoundaryCase, t):
    """Residuals of the two boundary conditions at time t."""
    g_val, h_val = case.g(t), case.h(t)
    y0, y1 = lift.y(t, 0.0), lift.y(t, 1.0)
    dy0, dy1 = lift.dy_dx(t, 0.0), lift.dy_dx(t, 1.0)
    c = case.case
    if c == MAIN_CASE:
        return dy0 - h_val, y1 - g_val
    if c == 1:
        return y0 - g_val, y1 - h_val
    if c == 2:
        return y0 - g_val, dy1 - h_val
    if c == 3:
        return dy0 - g_val, dy1 - h_val
    if c == 4:
        return y0 - g_val, dy1 + case.gamma * y1 - h_val
    if c == 5:
        return dy0 - g_val, dy1 + case.gamma * y1 - h_val
    if c == 6:
        return dy0 - case.gamma * y0 - g_val, y1 - h_val
    if c == 7:
        return dy0 - case.gamma * y0 - g_val, dy1 - h_val
    if c == 8:
        return dy0 - case.gamma1 * y0 - g_val, dy1 + case.gamma2 * y1 - h_val
    raise ValueError(f"unknown boundary case {c!r}")  # pragma: no cover


def verify_boundary(lift: LiftFunction, case: BoundaryCase, t_samples) -> float:
    """Max absolute boundary-condition residual over the time samples.

    Contract: <= 1e-12 with analytic g', h'; <= 1e-6 when derivatives come
    from the finite-difference fallback.
    """
    worst = 0.0
    for t in np.asarray(t_samples, dtype=float):
        r0, r1 = boundary_residuals(lift, case, float(t))
        worst = max(worst, abs(r0), abs(r1))
    return worst
