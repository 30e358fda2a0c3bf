"""Forcing terms f(t, x).

A forcing is either separable -- a sum of (time function) * (spatial
profile) terms -- or a bare callable.  Separable forcings with
:class:`~spde_density.timefuncs.TrigPoly` time factors admit closed-form
convolution integrals against exponentials; everything else goes through
adaptive quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .timefuncs import TimeFunction, TrigPoly, as_time_function


@dataclass(frozen=True)
class SeparableTerm:
    time: TimeFunction
    space: Callable  # vectorized profile on [0, 1]


class SeparableForcing:
    """Sum of separable terms; evaluable and decomposable."""

    def __init__(self, terms: Sequence[SeparableTerm | tuple]):
        self.terms = tuple(
            t if isinstance(t, SeparableTerm) else SeparableTerm(as_time_function(t[0]), t[1])
            for t in terms
        )

    def __call__(self, t, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x, dtype=float)
        for term in self.terms:
            out = out + term.time(t) * np.asarray(term.space(x), dtype=float)
        return float(out) if out.ndim == 0 else out

    @property
    def all_trig(self) -> bool:
        return all(isinstance(term.time, TrigPoly) for term in self.terms)


class CallableForcing:
    """Arbitrary f(t, x); evaluated pointwise, no closed-form shortcuts."""

    def __init__(self, fn: Callable):
        self.fn = fn

    def __call__(self, t, x):
        x = np.asarray(x, dtype=float)
        out = np.asarray(self.fn(t, x), dtype=float)
        return float(out) if out.ndim == 0 else out


Forcing = SeparableForcing | CallableForcing

ZERO_FORCING = SeparableForcing([])


def as_forcing(obj) -> Forcing:
    if isinstance(obj, (SeparableForcing, CallableForcing)):
        return obj
    if obj is None:
        return ZERO_FORCING
    if callable(obj):
        return CallableForcing(obj)
    raise TypeError(f"cannot interpret {obj!r} as a forcing")
