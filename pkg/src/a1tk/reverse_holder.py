"""Sharp reverse Hölder inequality for A_1 weights.

For a weight with A_1 constant ``c`` and ``1 <= p < c/(c-1)``::

    (1/|I|) ∫_I w^p  <=  K(c, p) * ((1/|I|) ∫_I w)^p,
    K(c, p) = 1 / (c^(p-1) * (c + p - p c)),

and ``K`` cannot be lowered: ``g(t) = t^(1/c - 1) / c`` gives equality.
This module evaluates both sides exactly on step and power weights, checks
the running-average integration-by-parts identity behind the proof by
quadrature, and provides the extremal family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from a1tk.a1 import a1_constant, hardy_constant, power_a1_constant
from a1tk.errors import DomainError, PreconditionError, RangeError
from a1tk.quadrature import integrate_cells
from a1tk.rearrange import decreasing_rearrangement
from a1tk.rng import XorShift64Star
from a1tk.weights import (
    DIVERGES,
    POLE_EPS,
    UNIT,
    Interval,
    PowerWeight,
    StepWeight,
    Weight,
    integral,
    is_divergent,
    lp_integral,
    renormalize,
)

INFINITE = math.inf
# verification refuses exponents this close to the critical one
POLE_MARGIN = 1e-9
SPOT_CHECKS = 1000


@dataclass(frozen=True)
class RHReport:
    """Worst ratio ``lhs/rhs`` of the sharp reverse Hölder inequality.

    ``lhs`` and ``rhs`` are the two sides on the witness interval.
    """

    p: float
    c: float
    worst_ratio: float
    witness: Interval
    holds: bool
    lhs: float = 0.0
    rhs: float = 0.0
    intervals_checked: int = 0
    pipeline_discrepancy: Optional[float] = field(default=None)

    def to_dict(self) -> dict:
        d = {
            "p": self.p,
            "c": self.c,
            "worst_ratio": self.worst_ratio,
            "witness": self.witness.to_dict(),
            "holds": self.holds,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "intervals_checked": self.intervals_checked,
        }
        if self.pipeline_discrepancy is not None:
            d["pipeline_discrepancy"] = self.pipeline_discrepancy
        return d


@dataclass(frozen=True)
class Lemma1Report:
    delta: float
    p: float
    lhs: float
    rhs: float
    residual: float
    quadrature_cells: int

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "p": self.p,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "quadrature_cells": self.quadrature_cells,
        }


def p_critical(c: float) -> float:
    """``c/(c-1)``; :data:`INFINITE` for ``c == 1``."""
    if not c >= 1.0:
        raise DomainError(f"A_1 constants are >= 1, got {c}")
    if c == 1.0:
        return INFINITE
    return c / (c - 1.0)


def sharp_constant(c: float, p: float) -> float:
    """``1/(c^(p-1) (c + p - pc))``. Unreliable within ~1e-12 of the pole."""
    if not c >= 1.0:
        raise DomainError(f"A_1 constants are >= 1, got {c}")
    if not p >= 1.0:
        raise RangeError(f"p must be >= 1, got {p}")
    denom = c + p * (1.0 - c)
    if denom <= 0.0:
        raise RangeError(f"p={p} is not below the critical exponent {p_critical(c)} for c={c}")
    return 1.0 / (c ** (p - 1.0) * denom)


def midpoint_exponent(c: float) -> float:
    """``(1 + c/(c-1))/2``; 2 when every exponent is admissible (c = 1)."""
    pc = p_critical(c)
    return 2.0 if math.isinf(pc) else 0.5 * (1.0 + pc)


def check_exponent(c: float, p: float) -> None:
    pc = p_critical(c)
    if not 1.0 <= p < pc or pc - p <= POLE_MARGIN:
        raise RangeError(f"p={p} must lie in [1, {pc}) for c={c}, at least {POLE_MARGIN} below")


def _aligned_sides(w: StepWeight, p: float):
    """Per left index i: both sides over (t_i, t_j) for every j > i."""
    v, lengths = w.v, w.lengths
    vp = v**p
    out = []
    for i in range(w.n):
        span = np.cumsum(lengths[i:])
        lhs = np.cumsum(lengths[i:] * vp[i:]) / span
        mean = np.cumsum(lengths[i:] * v[i:]) / span
        out.append((lhs, mean, i))
    return out


def _random_intervals(rng: XorShift64Star, count: int) -> list[Interval]:
    res = []
    while len(res) < count:
        a, b = sorted((rng.uniform(), rng.uniform()))
        if a < b:
            res.append(Interval(a, b))
    return res


def verify_theorem2(
    w: Weight,
    p: float,
    tol: float = 1e-9,
    spot_checks: int = SPOT_CHECKS,
    seed: int = 0,
    via_rearrangement: bool = False,
    skew: float = 1.0,
) -> RHReport:
    """Check the sharp reverse Hölder bound on every aligned subinterval.

    ``c`` is the exact A_1 constant of ``w``. Step weights are checked on all
    cell-aligned intervals plus ``spot_checks`` seeded random intervals; power
    weights on a grid of intervals that includes the singular end.

    ``via_rearrangement`` additionally re-derives each aligned interval's
    ratio by restricting, rescaling to (0, 1), rearranging and applying
    :func:`verify_lemma2`, and reports the largest relative disagreement.
    ``skew`` divides the sharp constant (a self-test hook for the harness).
    """
    if isinstance(w, PowerWeight):
        return _verify_theorem2_power(w, p, tol, spot_checks, seed, skew)
    cw = w.canonical()
    c = a1_constant(cw).constant
    check_exponent(c, p)
    k = sharp_constant(c, p) / skew

    best, witness, best_sides = -math.inf, UNIT, (0.0, 0.0)
    checked = 0
    for lhs, mean, i in _aligned_sides(cw, p):
        rhs = k * mean**p
        ratio = lhs / rhs
        j = int(np.argmax(ratio))
        checked += ratio.size
        if ratio[j] > best:
            best = float(ratio[j])
            witness = Interval(cw.breakpoints[i], cw.breakpoints[i + 1 + j])
            best_sides = (float(lhs[j]), float(rhs[j]))

    if spot_checks:
        rng = XorShift64Star(seed)
        for iv in _random_intervals(rng, spot_checks):
            lhs = lp_integral(cw, iv, p) / iv.length
            rhs = k * (integral(cw, iv) / iv.length) ** p
            if lhs / rhs > best:
                best, witness, best_sides = lhs / rhs, iv, (lhs, rhs)
        checked += spot_checks

    discrepancy = None
    if via_rearrangement:
        discrepancy = 0.0
        for lhs, mean, i in _aligned_sides(cw, p):
            for j in range(lhs.size):
                iv = Interval(cw.breakpoints[i], cw.breakpoints[i + 1 + j])
                g = decreasing_rearrangement(renormalize(cw, iv))
                rep = verify_lemma2(g, p, 1.0, c=c, skew=skew)
                direct = lhs[j] / (k * mean[j] ** p)
                whole = _lemma2_ratio(g, p, 1.0, k)
                discrepancy = max(discrepancy, float(abs(whole - direct) / direct))
                if rep.worst_ratio > best:
                    best, witness, best_sides = rep.worst_ratio, iv, (rep.lhs, rep.rhs)

    return RHReport(
        p, c, best, witness, best <= 1.0 + tol, best_sides[0], best_sides[1], checked, discrepancy
    )


def _power_intervals(spot_checks: int, seed: int) -> list[Interval]:
    points = sorted({0.0, *(2.0**-k for k in range(41)), *(k / 16 for k in range(17))})
    ivs = [Interval(a, b) for ai, a in enumerate(points) for b in points[ai + 1 :]]
    return ivs + _random_intervals(XorShift64Star(seed), spot_checks)


def _verify_theorem2_power(w, p, tol, spot_checks, seed, skew):
    c = power_a1_constant(w)
    check_exponent(c, p)
    k = sharp_constant(c, p) / skew
    best, witness, sides = -math.inf, UNIT, (0.0, 0.0)
    ivs = _power_intervals(spot_checks, seed)
    for iv in ivs:
        lhs = lp_integral(w, iv, p) / iv.length
        rhs = k * (integral(w, iv) / iv.length) ** p
        if lhs / rhs > best:
            best, witness, sides = lhs / rhs, iv, (lhs, rhs)
    return RHReport(p, c, best, witness, best <= 1.0 + tol, sides[0], sides[1], len(ivs))


def _lemma2_ratio(g: StepWeight, p: float, delta: float, k: float) -> float:
    iv = Interval(0.0, delta)
    return (lp_integral(g, iv, p) / delta) / (k * (integral(g, iv) / delta) ** p)


def verify_lemma2(
    g: StepWeight,
    p: float,
    delta: float,
    c: Optional[float] = None,
    tol: float = 1e-9,
    skew: float = 1.0,
) -> RHReport:
    """Sharp bound for the initial segments ``(0, δ)`` of a non-increasing weight.

    ``c`` defaults to the exact Hardy constant of ``g``. Both sides are
    evaluated exactly at every breakpoint and at ``delta``.
    """
    if not g.is_nonincreasing():
        raise PreconditionError("verify_lemma2 requires a non-increasing weight")
    if not 0.0 < delta <= 1.0:
        raise DomainError(f"delta must lie in (0, 1], got {delta}")
    if c is None:
        c = hardy_constant(g).constant
    check_exponent(c, p)
    k = sharp_constant(c, p) / skew

    t = g.t[1:]
    lhs = np.cumsum(g.lengths * g.v**p) / t
    rhs = k * (np.cumsum(g.lengths * g.v) / t) ** p
    deltas = [float(x) for x in t]
    lhs, rhs = [float(x) for x in lhs], [float(x) for x in rhs]
    iv = Interval(0.0, delta)
    deltas.append(delta)
    lhs.append(lp_integral(g, iv, p) / delta)
    rhs.append(k * (integral(g, iv) / delta) ** p)

    ratios = np.asarray(lhs) / np.asarray(rhs)
    j = int(np.argmax(ratios))
    worst = float(ratios[j])
    return RHReport(
        p, c, worst, Interval(0.0, float(deltas[j])), worst <= 1.0 + tol, lhs[j], rhs[j], len(deltas)
    )


# -- integration-by-parts identity for the running average --------------------


def _check_lemma1_args(g: Weight, p: float, delta: float) -> None:
    if not p > 1.0:
        raise DomainError(f"p must be > 1, got {p}")
    if not 0.0 < delta <= 1.0:
        raise DomainError(f"delta must lie in (0, 1], got {delta}")
    if not g.is_nonincreasing():
        raise PreconditionError("the running-average identity is checked on non-increasing weights")


def _running_cells(g: StepWeight, delta: float):
    """Cell pieces of (0, delta] with the prefix integral at each left end."""
    m = int(np.searchsorted(g.t, delta, side="left"))  # cells 0..m-1 meet (0, delta]
    lo = g.t[:m]
    hi = np.minimum(g.t[1 : m + 1], delta)
    prefix = np.concatenate([[0.0], np.cumsum(g.lengths * g.v)])[:m]
    return lo, hi, prefix, g.v[:m]


def _avg_power_integrand(x, lo, prefix, v, p):
    return ((prefix + v * (x - lo)) / x) ** p


def _avg_power_times_g_integrand(x, lo, prefix, v, p):
    return ((prefix + v * (x - lo)) / x) ** (p - 1.0) * v


def _lemma1_lhs(g: Weight, p: float, delta: float):
    if isinstance(g, PowerWeight):
        q = p * g.alpha + 1.0
        if q <= POLE_EPS:
            return DIVERGES, 1
        s = g.a / (g.alpha + 1.0)
        return s**p * delta**q / q, 1
    lo, hi, prefix, v = _running_cells(g, delta)
    return integrate_cells(_avg_power_integrand, lo, hi, (lo, prefix, v, p))


def _lemma1_rhs(g: Weight, p: float, delta: float):
    boundary = -(integral(g, Interval(0.0, delta)) ** p) / delta ** (p - 1.0) / (p - 1.0)
    if isinstance(g, PowerWeight):
        q = p * g.alpha + 1.0
        if q <= POLE_EPS:
            return DIVERGES, 1
        s = g.a / (g.alpha + 1.0)
        second = s ** (p - 1.0) * g.a * delta**q / q
        return boundary + p / (p - 1.0) * second, 1
    lo, hi, prefix, v = _running_cells(g, delta)
    second, cells = integrate_cells(_avg_power_times_g_integrand, lo, hi, (lo, prefix, v, p))
    return boundary + p / (p - 1.0) * second, cells


def lemma1_lhs(g: Weight, p: float, delta: float) -> float:
    """``∫_0^δ A(t)^p dt`` with ``A(t) = (1/t) ∫_0^t g``."""
    _check_lemma1_args(g, p, delta)
    return _lemma1_lhs(g, p, delta)[0]


def lemma1_rhs(g: Weight, p: float, delta: float) -> float:
    """``-(∫_0^δ g)^p / ((p-1) δ^(p-1)) + p/(p-1) ∫_0^δ A(t)^(p-1) g(t) dt``."""
    _check_lemma1_args(g, p, delta)
    return _lemma1_rhs(g, p, delta)[0]


def lemma1_residual(g: Weight, p: float, delta: float) -> Lemma1Report:
    """Both sides of the identity and their relative difference.

    When both sides diverge (power weights past the critical exponent) they
    are reported as :data:`DIVERGES` with residual 0.
    """
    _check_lemma1_args(g, p, delta)
    lhs, lcells = _lemma1_lhs(g, p, delta)
    rhs, rcells = _lemma1_rhs(g, p, delta)
    if is_divergent(lhs) or is_divergent(rhs):
        residual = 0.0 if lhs == rhs else math.inf
    else:
        residual = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
    cells = lcells if isinstance(g, PowerWeight) else lcells + rcells
    return Lemma1Report(delta, p, lhs, rhs, residual, cells)


# -- pointwise step of the sharp bound ----------------------------------------


def hy(x, y, p):
    """``x^(p-1) y - (p-1)/p x^p``; works elementwise on arrays."""
    return x ** (p - 1.0) * y - (p - 1.0) / p * x**p


def verify_hy_monotone(y: float, c: float, p: float, samples: int = 100) -> bool:
    """``hy(., y, p)`` is non-increasing on ``[y, c y]`` (sampled and by derivative sign)."""
    if samples < 2:
        raise ValueError("need at least two samples")
    x = np.linspace(y, c * y, samples)
    h = hy(x, y, p)
    slack = 1e-12 * np.maximum(1.0, np.abs(h[:-1]))
    sampled = bool(np.all(h[1:] <= h[:-1] + slack))
    derivative = (p - 1.0) * x ** (p - 2.0) * (y - x)
    return sampled and bool(np.all(derivative <= 0.0))


# -- extremal family -----------------------------------------------------------


def extremal_weight(c: float) -> PowerWeight:
    """``t^(1/c - 1) / c``; the constant 1 for ``c = 1``."""
    if not c >= 1.0:
        raise DomainError(f"A_1 constants are >= 1, got {c}")
    if c == 1.0:
        return PowerWeight(1.0, 0.0)
    return PowerWeight(1.0 / c, 1.0 / c - 1.0)


def sharpness_gap(c: float, p: float, skew: float = 1.0) -> float:
    """``|lhs/rhs - 1|`` for the extremal weight on (0, 1); zero up to rounding."""
    check_exponent(c, p)
    g = extremal_weight(c)
    lhs = lp_integral(g, UNIT, p)
    rhs = sharp_constant(c, p) / skew * integral(g, UNIT) ** p
    return abs(lhs / rhs - 1.0)


def p_sweep(w: Weight, points: int = 50, margin: float = 1e-3, p_max: float = 4.0, tol: float = 1e-9):
    """Rows ``(p, lhs, rhs, ratio, holds)`` on an exponent grid from 1 to
    ``p_critical - margin`` (or ``p_max`` when every exponent is admissible).
    Each row is the worst interval found by :func:`verify_theorem2`."""
    c = power_a1_constant(w) if isinstance(w, PowerWeight) else a1_constant(w).constant
    pc = p_critical(c)
    top = p_max if math.isinf(pc) else pc - margin
    rows = []
    for p in np.linspace(1.0, top, points):
        rep = verify_theorem2(w, float(p), tol=tol)
        rows.append((float(p), rep.lhs, rep.rhs, rep.worst_ratio, rep.holds))
    return rows
