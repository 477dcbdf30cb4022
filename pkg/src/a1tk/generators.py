"""Seeded test corpora of step weights.

All randomness comes from :class:`a1tk.rng.XorShift64Star`, so a
``(kind, n, parameter, seed)`` tuple always produces the same weight,
bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

from a1tk.rng import XorShift64Star
from a1tk.weights import StepWeight

KINDS = ("bounded_ratio", "nonincreasing_hardy", "shuffle", "extremal_discretized")

# added to every exponential length draw so no cell is vanishingly thin
LENGTH_FLOOR = 0.25
VALUE_FLOOR = 1e-300
# keeps sampled values strictly inside the Hardy window after rounding
HARDY_MARGIN = 1e-12
DEFAULT_T0 = 1e-6


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    parameter: float
    seed: int = 0
    t0: float = DEFAULT_T0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; expected one of {KINDS}")
        if int(self.n) < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not float(self.parameter) >= 1.0:
            raise ValueError(f"parameter must be >= 1, got {self.parameter}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "parameter", float(self.parameter))
        object.__setattr__(self, "seed", int(self.seed))

    @classmethod
    def parse(cls, text: str, seed: int = 0, t0: float = DEFAULT_T0) -> "GenSpec":
        """From ``"KIND,n,param"``."""
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected KIND,n,param, got {text!r}")
        return cls(parts[0], int(parts[1]), float(parts[2]), seed, t0)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "n": self.n, "parameter": self.parameter, "seed": self.seed}
        if self.kind == "extremal_discretized":
            d["t0"] = self.t0
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GenSpec":
        return cls(d["kind"], d["n"], d["parameter"], d.get("seed", 0), d.get("t0", DEFAULT_T0))


def _random_lengths(rng: XorShift64Star, n: int) -> List[float]:
    return [LENGTH_FLOOR - math.log(rng.uniform_open()) for _ in range(n)]


def gen_bounded_ratio(n: int, ratio: float, seed: int) -> StepWeight:
    """``n`` cells with log-uniform values in ``[1, ratio]``.

    Since average <= max <= ratio * min on any interval, the A_1 constant is
    at most ``ratio``.
    """
    if n < 1 or not ratio >= 1.0:
        raise ValueError("need n >= 1 and ratio >= 1")
    rng = XorShift64Star(seed)
    lengths = _random_lengths(rng, n)
    values = [ratio ** rng.uniform() for _ in range(n)]
    return StepWeight.from_lengths(lengths, values)


def gen_nonincreasing_hardy(n: int, c: float, seed: int) -> StepWeight:
    """Non-increasing weight whose running average never exceeds ``c`` times it.

    Cell values are drawn left to right, log-uniformly from
    ``[A/c, min(v_prev, A)]`` with ``A`` the running average so far.
    """
    if n < 1 or not c >= 1.0:
        raise ValueError("need n >= 1 and c >= 1")
    rng = XorShift64Star(seed)
    lengths = _random_lengths(rng, n)
    first = 10.0 ** rng.uniform()
    if c == 1.0:
        return StepWeight.from_lengths(lengths, [first] * n)
    t = StepWeight.from_lengths(lengths, [1.0] * n).breakpoints
    values = [first]
    acc = first * (t[1] - t[0])
    for k in range(1, n):
        running = acc / t[k]
        hi = min(values[-1], running)
        lo = max(running / c, VALUE_FLOOR) * (1.0 + HARDY_MARGIN)
        if lo >= hi:
            value = hi
        else:
            value = min(max(lo * (hi / lo) ** rng.uniform(), lo), hi)
        values.append(value)
        acc += value * (t[k + 1] - t[k])
    return StepWeight(t, values)


def shuffle_cells(w: StepWeight, seed: int) -> StepWeight:
    """Seeded permutation of the (length, value) cells, laid out again from 0."""
    rng = XorShift64Star(seed)
    order = list(range(w.n))
    for k in range(w.n - 1, 0, -1):  # Fisher-Yates
        j = rng.below(k + 1)
        order[k], order[j] = order[j], order[k]
    lengths = [float(w.lengths[k]) for k in order]
    return StepWeight.from_lengths(lengths, [w.values[k] for k in order])


def _cell_average(c: float, a: float, b: float) -> float:
    """Average of ``t^(1/c-1)/c`` over ``(a, b)``, i.e. ``(b^s - a^s)/(b - a)``, s = 1/c."""
    s = 1.0 / c
    r = math.log(b / a)
    return a ** (s - 1.0) * math.expm1(s * r) / math.expm1(r)


def discretize_extremal(c: float, n: int, t0: float) -> StepWeight:
    """Cell averages of the extremal ``t^(1/c-1)/c`` on a geometric grid.

    The first cell is ``(0, t0]``; ``n`` more cells split ``(t0, 1]`` at
    ``t0^(1 - k/n)``.
    """
    if not c > 1.0 or n < 1 or not 0.0 < t0 < 1.0:
        raise ValueError("need c > 1, n >= 1 and 0 < t0 < 1")
    t = [0.0] + [t0 ** (1.0 - k / n) for k in range(n + 1)]
    values = [t0 ** (1.0 / c - 1.0)]
    values += [_cell_average(c, t[k], t[k + 1]) for k in range(1, n + 1)]
    return StepWeight(t, values)


def generate(spec: GenSpec) -> StepWeight:
    if spec.kind == "bounded_ratio":
        return gen_bounded_ratio(spec.n, spec.parameter, spec.seed)
    if spec.kind == "nonincreasing_hardy":
        return gen_nonincreasing_hardy(spec.n, spec.parameter, spec.seed)
    if spec.kind == "shuffle":
        base = gen_bounded_ratio(spec.n, spec.parameter, spec.seed)
        return shuffle_cells(base, spec.seed)
    return discretize_extremal(spec.parameter, spec.n, spec.t0)
