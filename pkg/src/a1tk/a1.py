"""A_1 constants, Hardy running averages and the rearrangement check.

The A_1 constant of a weight is the least ``c`` with
``average(w, I) <= c * ess_inf(w, I)`` for every subinterval ``I``.

For a step weight the supremum is found by scanning cell-aligned intervals
``(t_i, t_j)``. Inside a fixed set of touched cells the average is monotone in
each endpoint, so only cell boundaries matter, except that an arbitrarily thin
extension ("sliver") into a neighbouring cell pulls that neighbour's value
into the essential infimum while leaving the average unchanged in the limit.
The scan therefore divides each aligned average by the minimum over the
interior cells *and* the two adjacent cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from a1tk.errors import PreconditionError
from a1tk.rearrange import decreasing_rearrangement
from a1tk.weights import Interval, PowerWeight, StepWeight, Weight, average

THEOREM1_RTOL = 1e-12


@dataclass(frozen=True)
class A1Report:
    """Exact A_1 constant with the supremizing aligned interval.

    ``witness_lo_index``/``witness_hi_index`` index the breakpoints of the
    input weight. A sliver flag means the supremum is reached only in the
    limit, by extending the witness an infinitesimal amount into that
    neighbouring cell.
    """

    constant: float
    witness_lo_index: int
    witness_hi_index: int
    sliver_left: bool = False
    sliver_right: bool = False

    def witness(self, w: StepWeight) -> Interval:
        return Interval(w.breakpoints[self.witness_lo_index], w.breakpoints[self.witness_hi_index])

    def to_dict(self) -> dict:
        return {
            "constant": self.constant,
            "witness_lo_index": self.witness_lo_index,
            "witness_hi_index": self.witness_hi_index,
            "sliver_left": self.sliver_left,
            "sliver_right": self.sliver_right,
        }


@dataclass(frozen=True)
class HardyReport:
    """``sup_t A(t)/g(t)`` with ``A`` the running average from 0.

    When ``from_right`` is set the supremum is the limit as ``t`` decreases
    to ``witness_t`` (the value of ``g`` jumps down just after it).
    """

    constant: float
    witness_t: float
    from_right: bool = False

    def to_dict(self) -> dict:
        return {"constant": self.constant, "witness_t": self.witness_t, "from_right": self.from_right}


@dataclass(frozen=True)
class Theorem1Report:
    a1_original: float
    a1_rearranged: float
    hardy_rearranged: float
    holds: bool

    def to_dict(self) -> dict:
        return {
            "a1_original": self.a1_original,
            "a1_rearranged": self.a1_rearranged,
            "hardy_rearranged": self.hardy_rearranged,
            "holds": self.holds,
        }


def a1_constant(w: StepWeight, max_span: Optional[int] = None) -> A1Report:
    """Exact A_1 constant of a step weight by an O(n^2) aligned-interval scan.

    ``max_span`` restricts the scan to intervals covering at most that many
    (canonical) cells; the result is then only a lower bound.
    """
    keep = w.canonical_indices()
    cw = w.canonical()
    n = cw.n
    v = cw.v
    lengths = cw.lengths
    # v_next[j] is the value of the cell right of breakpoint j (inf past the end)
    v_next = np.append(v, math.inf)

    best, best_i, best_j = -math.inf, 0, n
    best_left, best_right = False, False
    for i in range(n):
        stop = n if max_span is None else min(n, i + max_span)
        seg_v = v[i:stop]
        # running sums from the left endpoint avoid prefix-sum cancellation
        avg = np.cumsum(lengths[i:stop] * seg_v) / np.cumsum(lengths[i:stop])
        inner = np.minimum.accumulate(seg_v)
        left = v[i - 1] if i > 0 else math.inf
        right = v_next[i + 1 : stop + 1]
        eff = np.minimum(inner, np.minimum(left, right))
        ratio = avg / eff
        k = int(np.argmax(ratio))
        if ratio[k] > best:
            best, best_i, best_j = float(ratio[k]), i, i + 1 + k
            best_left = bool(left == eff[k] and left < inner[k])
            best_right = bool(not best_left and right[k] == eff[k] and right[k] < inner[k])
    return A1Report(max(best, 1.0), keep[best_i], keep[best_j], best_left, best_right)


def _candidate_endpoints(w: StepWeight, grid: int, exhaustive: bool) -> np.ndarray:
    t = w.t
    h = float(np.min(w.lengths)) / grid
    uniform = np.arange(grid + 1) / grid
    points = [t]
    for k in range(w.n):
        a, b = t[k], t[k + 1]
        inside = uniform[(uniform > a) & (uniform < b)]
        if exhaustive:
            points.append(inside)
        elif inside.size:
            points.append(inside[[0, -1]])
        points.append(np.array([a + h, b - h]))
    s = np.unique(np.concatenate(points))
    return s[(s >= 0.0) & (s <= 1.0)]


def a1_constant_bruteforce(w: StepWeight, grid: int, exhaustive: bool = False) -> float:
    """Lower bound for the A_1 constant from explicit finite intervals.

    Endpoints range over the breakpoints, the uniform grid ``k/grid`` and the
    breakpoints shifted by ``±min_cell/grid``. Each candidate interval's
    average and essential infimum are computed directly from cell overlaps,
    so the value is a true ratio of a real interval and converges to the
    supremum from below as ``grid`` grows.

    Unless ``exhaustive`` is set, only the grid points nearest each breakpoint
    are kept inside a cell: with the touched cells fixed, the average is a
    monotone function of either endpoint, so interior grid points never beat
    the outermost ones.
    """
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    s = _candidate_endpoints(w, grid, exhaustive)
    t, v = w.t, w.v
    best = 1.0
    for a in s[:-1]:
        b = s[s > a]
        lo = np.maximum(t[:-1][None, :], a)
        hi = np.minimum(t[1:][None, :], b[:, None])
        ov = np.clip(hi - lo, 0.0, None)
        avg = (ov * v).sum(axis=1) / (b - a)
        inf = np.where(ov > 0.0, v, np.inf).min(axis=1)
        best = max(best, float(np.max(avg / inf)))
    return best


def power_a1_constant(w: PowerWeight) -> float:
    """A_1 constant of ``a t^alpha``: ``1/(1+alpha)``, attained on every ``(0, hi)``."""
    return 1.0 / (1.0 + w.alpha)


def a1_constant_of(w: Weight) -> float:
    if isinstance(w, PowerWeight):
        return power_a1_constant(w)
    return a1_constant(w).constant


def hardy_average(g: Weight, t: float) -> float:
    """``(1/t) ∫_0^t g``."""
    return average(g, Interval(0.0, t))


def hardy_constant(g: StepWeight, require_nonincreasing: bool = True) -> HardyReport:
    """Exact ``sup_{t in (0,1]} A(t)/g(t)`` for a step weight.

    On each cell ``g`` is constant and ``A`` moves monotonically toward it,
    so the supremum over the cell is at one of its ends: the right-hand limit
    at ``t_{k-1}`` or the value at ``t_k``. For non-increasing ``g`` the
    right-hand limit always wins.
    """
    g = g.canonical()
    if require_nonincreasing and not g.is_nonincreasing():
        raise PreconditionError("hardy_constant requires a non-increasing weight")
    t, v = g.t, g.v
    running = np.cumsum(g.lengths * v) / t[1:]  # A(t_k), k = 1..n
    best, best_t, from_right = 1.0, float(t[1]), False
    for k in range(g.n):
        # right-hand limit at t_k-1 (A(0+) = v_0), then the value at t_k
        start = running[k - 1] if k > 0 else v[0]
        for ratio, at, right in ((start / v[k], t[k], k > 0), (running[k] / v[k], t[k + 1], False)):
            if ratio > best:
                best, best_t, from_right = float(ratio), float(at), right
    return HardyReport(best, best_t, from_right)


def verify_theorem1(w: Weight) -> Theorem1Report:
    """Rearranging must not increase the A_1 constant, and the rearrangement
    must satisfy the Hardy bound with the original constant."""
    if isinstance(w, PowerWeight):
        # already non-increasing; A(t)/g(t) = 1/(1+alpha) for every t
        c = power_a1_constant(w)
        return Theorem1Report(c, c, c, True)
    original = a1_constant(w).constant
    ws = decreasing_rearrangement(w)
    rearranged = a1_constant(ws).constant
    hardy = hardy_constant(ws).constant
    bound = original * (1.0 + THEOREM1_RTOL)
    return Theorem1Report(original, rearranged, hardy, rearranged <= bound and hardy <= bound)
