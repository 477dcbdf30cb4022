"""Decreasing rearrangement and distribution functions."""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from a1tk.weights import PowerWeight, StepWeight, Weight

EQUIMEASURABLE_ATOL = 1e-12


def decreasing_rearrangement(w: Weight) -> Weight:
    """The non-increasing, left-continuous weight equimeasurable with ``w``.

    For a step weight the cells are sorted by value (largest first) carrying
    their lengths, then laid out from 0 and merged into canonical form.
    Power weights are already non-increasing and come back unchanged.
    """
    if isinstance(w, PowerWeight):
        return w
    order = sorted(range(w.n), key=lambda k: -w.values[k])
    lengths = w.lengths
    t = [0.0]
    acc = 0.0
    for k in order[:-1]:
        acc += float(lengths[k])
        t.append(acc)
    t.append(1.0)
    return StepWeight(t, [w.values[k] for k in order]).canonical()


def distribution(w: Weight, level: float) -> float:
    """Lebesgue measure of ``{x in (0,1) : w(x) > level}``."""
    if not level > 0.0:
        raise ValueError(f"level must be positive, got {level}")
    if isinstance(w, PowerWeight):
        if w.alpha == 0.0:
            return 1.0 if w.a > level else 0.0
        return min(1.0, (level / w.a) ** (1.0 / w.alpha))
    return math.fsum(w.lengths[w.v > level])


def value_levels(*weights: StepWeight) -> list[float]:
    """Sorted distinct values of the given step weights."""
    return sorted({x for w in weights for x in w.values})


def is_equimeasurable(w1: Weight, w2: Weight, levels: Iterable[float]) -> bool:
    """Whether the distribution functions agree at every level to 1e-12."""
    levels = list(levels)
    if not levels:
        raise ValueError("at least one level is required")
    return all(
        abs(distribution(w1, lam) - distribution(w2, lam)) <= EQUIMEASURABLE_ATOL
        for lam in levels
    )


def distribution_boundary(w: StepWeight, level: float) -> float:
    """``sup{t : w(t) > level}`` for a non-increasing step weight (0 if empty)."""
    above = np.nonzero(w.v > level)[0]
    if above.size == 0:
        return 0.0
    return float(w.t[above[-1] + 1])
