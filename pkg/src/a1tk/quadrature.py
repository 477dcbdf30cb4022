"""Composite Gauss-Legendre quadrature with batched adaptive bisection."""

from __future__ import annotations

import math
import warnings

import numpy as np

ORDER = 16
RTOL = 1e-10
MAX_CELLS = 2**20

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(ORDER)


def _gauss(f, lo, hi, args):
    half = 0.5 * (hi - lo)
    x = (0.5 * (hi + lo))[:, None] + half[:, None] * _NODES[None, :]
    fx = f(x, *(a[:, None] for a in args))
    return half * (fx @ _WEIGHTS)


def integrate_cells(f, lo, hi, args=(), rtol=RTOL, max_cells=MAX_CELLS):
    """Sum of ``∫_{lo[k]}^{hi[k]} f(x, *args_k) dx`` over all cells.

    ``f`` must broadcast: it is called with ``x`` of shape ``(m, ORDER)`` and
    each parameter of shape ``(m, 1)``. Every cell is bisected until the
    two-half estimate agrees with the whole-cell estimate to ``rtol``
    (relative); at most ``max_cells`` subcells are produced in total.

    Returns ``(value, subcells)``.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    args = tuple(np.broadcast_to(np.asarray(a, dtype=float), lo.shape) for a in args)
    coarse = _gauss(f, lo, hi, args)
    parts = []
    cells = 0
    while lo.size:
        mid = 0.5 * (lo + hi)
        left = _gauss(f, lo, mid, args)
        right = _gauss(f, mid, hi, args)
        fine = left + right
        done = np.abs(fine - coarse) <= rtol * np.abs(fine)
        if cells + 2 * lo.size > max_cells:
            warnings.warn("quadrature subcell cap reached; accepting unconverged cells")
            done[:] = True
        parts.append(fine[done])
        cells += 2 * int(done.sum())
        todo = ~done
        lo, hi = np.concatenate([lo[todo], mid[todo]]), np.concatenate([mid[todo], hi[todo]])
        args = tuple(np.concatenate([a[todo], a[todo]]) for a in args)
        coarse = np.concatenate([left[todo], right[todo]])
    return math.fsum(np.concatenate(parts)) if parts else 0.0, cells
