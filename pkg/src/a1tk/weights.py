"""Weights on (0, 1]: exact piecewise-constant and power-law representations.

Two concrete weight classes are supported:

* :class:`StepWeight` -- positive and constant on each half-open cell
  ``(t[k-1], t[k]]``, hence left-continuous.
* :class:`PowerWeight` -- ``a * t**alpha`` with ``alpha`` in ``(-1, 0]``,
  singular (if at all) only at ``t = 0``.

All integrals are evaluated exactly (up to floating rounding): overlap sums
for step weights, closed-form antiderivatives for power weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple, Union

import numpy as np

from a1tk.errors import DomainError, InvalidWeightError, UnsupportedOperationError

#: Value of a divergent L^p integral. A divergent positive integral is +inf.
DIVERGES = math.inf

# 1 + p*alpha at or below this is treated as the non-integrable case.
POLE_EPS = 1e-12


def is_divergent(value: float) -> bool:
    return math.isinf(value)


@dataclass(frozen=True)
class Interval:
    """Subinterval ``(lo, hi)`` of ``(0, 1)``."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"interval endpoints must be finite, got ({lo}, {hi})")
        if lo < 0.0 or hi > 1.0:
            raise DomainError(f"interval ({lo}, {hi}) is not contained in (0, 1)")
        if not lo < hi:
            raise DomainError(f"interval requires lo < hi, got ({lo}, {hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}


UNIT = Interval(0.0, 1.0)


def as_interval(i: Union[Interval, Tuple[float, float]]) -> Interval:
    if isinstance(i, Interval):
        return i
    lo, hi = i
    return Interval(lo, hi)


@dataclass(frozen=True)
class StepWeight:
    """Positive piecewise-constant weight with cells ``(t[k-1], t[k]]``.

    ``breakpoints`` must start at 0, end at 1 and increase strictly;
    ``values[k]`` is the (positive, finite) value on the k-th cell.
    """

    breakpoints: Tuple[float, ...]
    values: Tuple[float, ...]

    def __post_init__(self):
        t = tuple(float(x) for x in self.breakpoints)
        v = tuple(float(x) for x in self.values)
        if len(t) < 2:
            raise InvalidWeightError("a step weight needs at least two breakpoints")
        if len(v) != len(t) - 1:
            raise InvalidWeightError(
                f"expected {len(t) - 1} values for {len(t)} breakpoints, got {len(v)}"
            )
        if t[0] != 0.0 or t[-1] != 1.0:
            raise InvalidWeightError(
                f"breakpoints must start at 0 and end at 1, got {t[0]} ... {t[-1]}"
            )
        for k in range(1, len(t)):
            if not t[k - 1] < t[k]:
                raise InvalidWeightError(
                    f"breakpoints must increase strictly: t[{k - 1}]={t[k - 1]} >= t[{k}]={t[k]}"
                )
        for k, x in enumerate(v):
            if not (math.isfinite(x) and x > 0.0):
                raise InvalidWeightError(f"cell {k} has non-positive or non-finite value {x}")
        object.__setattr__(self, "breakpoints", t)
        object.__setattr__(self, "values", v)

    @classmethod
    def constant(cls, value: float = 1.0) -> "StepWeight":
        return cls((0.0, 1.0), (value,))

    @classmethod
    def uniform(cls, values: Sequence[float]) -> "StepWeight":
        """Cells of equal length ``1/len(values)``."""
        n = len(values)
        t = [k / n for k in range(n + 1)]
        return cls(t, values)

    @classmethod
    def from_lengths(cls, lengths: Sequence[float], values: Sequence[float]) -> "StepWeight":
        """Lay cells of the given (positive) lengths out from 0; lengths are normalized."""
        total = math.fsum(lengths)
        t = [0.0]
        acc = 0.0
        for length in lengths[:-1]:
            acc += length
            t.append(acc / total)
        t.append(1.0)
        return cls(t, values)

    @property
    def n(self) -> int:
        return len(self.values)

    @cached_property
    def t(self) -> np.ndarray:
        return np.asarray(self.breakpoints, dtype=float)

    @cached_property
    def v(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    @cached_property
    def lengths(self) -> np.ndarray:
        return np.diff(self.t)

    def __call__(self, x: float) -> float:
        if not 0.0 < x <= 1.0:
            raise DomainError(f"{x} is outside (0, 1]")
        k = int(np.searchsorted(self.t, x, side="left"))
        return self.values[k - 1]

    def is_nonincreasing(self) -> bool:
        return all(a >= b for a, b in zip(self.values, self.values[1:]))

    def scaled(self, s: float) -> "StepWeight":
        return StepWeight(self.breakpoints, [s * x for x in self.values])

    def canonical_indices(self) -> Tuple[int, ...]:
        """Indices of the breakpoints kept by :meth:`canonical`."""
        keep = [0]
        for k in range(1, self.n):
            if self.values[k] != self.values[k - 1]:
                keep.append(k)
        keep.append(self.n)
        return tuple(keep)

    def canonical(self) -> "StepWeight":
        """Equal function with adjacent equal-value cells merged."""
        keep = self.canonical_indices()
        if len(keep) == self.n + 1:
            return self
        return StepWeight(
            [self.breakpoints[k] for k in keep], [self.values[k] for k in keep[:-1]]
        )

    def equals(self, other: "StepWeight", rtol: float = 1e-12) -> bool:
        """Equality of canonical forms, breakpoints and values to ``rtol``."""
        a, b = self.canonical(), other.canonical()
        if a.n != b.n:
            return False
        return bool(
            np.allclose(a.t, b.t, rtol=0.0, atol=rtol)
            and np.allclose(a.v, b.v, rtol=rtol, atol=0.0)
        )

    def to_dict(self) -> dict:
        return {"type": "step", "breakpoints": list(self.breakpoints), "values": list(self.values)}


@dataclass(frozen=True)
class PowerWeight:
    """The weight ``a * t**alpha`` on (0, 1], with ``a > 0`` and ``-1 < alpha <= 0``."""

    a: float
    alpha: float

    def __post_init__(self):
        a, alpha = float(self.a), float(self.alpha)
        if not (math.isfinite(a) and a > 0.0):
            raise InvalidWeightError(f"power weight coefficient must be positive, got {a}")
        if not (math.isfinite(alpha) and -1.0 < alpha <= 0.0):
            raise InvalidWeightError(f"power weight exponent must lie in (-1, 0], got {alpha}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "alpha", alpha)

    def __call__(self, x: float) -> float:
        if not 0.0 < x <= 1.0:
            raise DomainError(f"{x} is outside (0, 1]")
        return self.a * x**self.alpha

    def is_nonincreasing(self) -> bool:
        return True

    def antiderivative(self, x: float) -> float:
        """``∫_0^x a t^alpha dt``."""
        q = self.alpha + 1.0
        return self.a * x**q / q

    def to_dict(self) -> dict:
        return {"type": "power", "a": self.a, "alpha": self.alpha}


Weight = Union[StepWeight, PowerWeight]


def _check_weight(w) -> None:
    if not isinstance(w, (StepWeight, PowerWeight)):
        raise TypeError(f"expected StepWeight or PowerWeight, got {type(w).__name__}")


def overlaps(w: StepWeight, i: Interval) -> np.ndarray:
    """Length of ``i ∩ cell_k`` for every cell."""
    lo = np.maximum(w.t[:-1], i.lo)
    hi = np.minimum(w.t[1:], i.hi)
    return np.clip(hi - lo, 0.0, None)


def integral(w: Weight, i) -> float:
    """``∫_i w``."""
    _check_weight(w)
    i = as_interval(i)
    if isinstance(w, StepWeight):
        return math.fsum(w.v * overlaps(w, i))
    return w.antiderivative(i.hi) - w.antiderivative(i.lo)


def average(w: Weight, i) -> float:
    i = as_interval(i)
    return integral(w, i) / i.length


def ess_inf(w: Weight, i) -> float:
    """Essential infimum on ``i``; zero-length contacts with a cell are ignored."""
    _check_weight(w)
    i = as_interval(i)
    if isinstance(w, StepWeight):
        return float(np.min(w.v[overlaps(w, i) > 0.0]))
    # non-increasing, so the infimum is the value at the right endpoint
    return w.a * i.hi**w.alpha


def lp_integral(w: Weight, i, p: float) -> float:
    """``∫_i w**p``; returns :data:`DIVERGES` when the integral is infinite."""
    _check_weight(w)
    i = as_interval(i)
    if not p >= 1.0:
        raise DomainError(f"p must be >= 1, got {p}")
    if isinstance(w, StepWeight):
        return math.fsum(w.v**p * overlaps(w, i))
    q = p * w.alpha + 1.0
    if q <= POLE_EPS:
        if i.lo == 0.0:
            return DIVERGES
        if abs(q) <= POLE_EPS:
            return w.a**p * math.log(i.hi / i.lo)
    return w.a**p * (i.hi**q - i.lo**q) / q


def renormalize(w: Weight, i) -> Weight:
    """The restriction of ``w`` to ``i`` pulled back to (0, 1): ``x -> w(lo + x*|i|)``."""
    _check_weight(w)
    i = as_interval(i)
    if isinstance(w, PowerWeight):
        if i.lo != 0.0:
            raise UnsupportedOperationError(
                "power weights can only be renormalized on intervals (0, hi)"
            )
        return PowerWeight(w.a * i.hi**w.alpha, w.alpha)
    cells = np.nonzero(overlaps(w, i) > 0.0)[0]
    first, last = int(cells[0]), int(cells[-1])
    inner = [(w.breakpoints[k] - i.lo) / i.length for k in range(first + 1, last + 1)]
    return StepWeight([0.0, *inner, 1.0], w.values[first : last + 1]).canonical()
