"""Time-dependent scalar coefficients with derivatives.

Boundary data g(t), h(t) and forcing time factors are represented either as
a :class:`TrigPoly` (a + b*cos(t) + c*sin(t)) with exact derivatives, or as
an arbitrary callable wrapped with a central finite-difference derivative.
The trigonometric form is what the bundled scenarios use; it unlocks
closed-form convolution integrals downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

FD_STEP = 1e-6  # central-difference step for user-supplied derivatives


@dataclass(frozen=True)
class TrigPoly:
    """const + cos_coeff*cos(t) + sin_coeff*sin(t)."""

    const: float = 0.0
    cos_coeff: float = 0.0
    sin_coeff: float = 0.0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = self.const + self.cos_coeff * np.cos(t) + self.sin_coeff * np.sin(t)
        return float(out) if out.ndim == 0 else out

    def derivative(self) -> "TrigPoly":
        return TrigPoly(0.0, self.sin_coeff, -self.cos_coeff)

    def scaled(self, factor: float) -> "TrigPoly":
        return TrigPoly(
            factor * self.const, factor * self.cos_coeff, factor * self.sin_coeff
        )

    def plus(self, other: "TrigPoly") -> "TrigPoly":
        return TrigPoly(
            self.const + other.const,
            self.cos_coeff + other.cos_coeff,
            self.sin_coeff + other.sin_coeff,
        )

    @property
    def is_zero(self) -> bool:
        return self.const == 0.0 and self.cos_coeff == 0.0 and self.sin_coeff == 0.0


@dataclass(frozen=True)
class CallableTimeFunction:
    """Arbitrary scalar function of time with an optional analytic derivative.

    When ``deriv`` is not supplied, the derivative falls back to central
    finite differences with step 1e-6 (balances truncation against
    round-off in double precision).
    """

    fn: Callable[[float], float]
    deriv: Callable[[float], float] | None = None

    def __call__(self, t):
        return self.fn(t)

    def derivative(self) -> "CallableTimeFunction":
        if self.deriv is not None:
            return CallableTimeFunction(self.deriv)
        f = self.fn
        return CallableTimeFunction(
            lambda t: (f(t + FD_STEP) - f(t - FD_STEP)) / (2.0 * FD_STEP)
        )


TimeFunction = TrigPoly | CallableTimeFunction

ZERO = TrigPoly()
ONE = TrigPoly(const=1.0)
COS = TrigPoly(cos_coeff=1.0)
SIN = TrigPoly(sin_coeff=1.0)


def constant(value: float) -> TrigPoly:
    return TrigPoly(const=float(value))


def as_time_function(obj) -> TimeFunction:
    """Coerce a number, TrigPoly, CallableTimeFunction or bare callable."""
    if isinstance(obj, (TrigPoly, CallableTimeFunction)):
        return obj
    if isinstance(obj, (int, float)):
        return constant(obj)
    if callable(obj):
        return CallableTimeFunction(obj)
    raise TypeError(f"cannot interpret {obj!r} as a time function")
