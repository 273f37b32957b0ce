"""Fixed and adaptive Gauss-Legendre rules used by the permittivity and
Lifshitz code.

Both rules are vectorised over panels so that numpy does the inner loops.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ConvergenceError


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_nodes(a, b, n_panels: int, order: int):
    """Composite Gauss-Legendre nodes on ``[a, b]`` split in equal panels.

    ``a`` and ``b`` may be arrays of shape ``(m,)``; the result then has
    shape ``(m, n_panels * order)`` for both nodes and weights, so that
    ``(f(nodes) * weights).sum(-1)`` integrates each row.
    """
    a = np.asarray(a, dtype=float)[..., None]
    b = np.asarray(b, dtype=float)[..., None]
    x, w = gauss_legendre(order)
    h = (b - a) / n_panels
    starts = a + h * np.arange(n_panels)
    nodes = starts[..., None] + 0.5 * h[..., None] * (x + 1.0)
    weights = np.broadcast_to(0.5 * h[..., None] * w, nodes.shape)
    shape = nodes.shape[:-2] + (n_panels * order,)
    return nodes.reshape(shape), weights.reshape(shape)


def adaptive_panels(f, edges, rel_tol=1e-6, abs_tol=0.0, max_iter=40, order=8):
    """Integrate a vectorised ``f`` over the union of panels ``edges``.

    Each panel is estimated with an ``order``-point and a ``2*order``-point
    Gauss-Legendre rule; panels whose difference is not small enough get
    bisected. Returns ``(value, error_estimate)``.
    """
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1], edges[1:]
    keep = hi > lo
    lo, hi = lo[keep], hi[keep]
    xs, ws = gauss_legendre(order)
    xl, wl = gauss_legendre(2 * order)

    def rule(a, b, x, w):
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        pts = mid[:, None] + half[:, None] * x
        return (f(pts) * w).sum(axis=1) * half

    done_val = 0.0
    done_err = 0.0
    for _ in range(max_iter):
        if lo.size == 0:
            return done_val, done_err
        coarse = rule(lo, hi, xs, ws)
        fine = rule(lo, hi, xl, wl)
        err = np.abs(fine - coarse)
        total = done_val + fine.sum()
        budget = max(rel_tol * abs(total), abs_tol)
        # a panel is accepted if its share of the error budget is respected
        share = budget * (hi - lo) / max((hi - lo).sum(), 1e-300)
        ok = err <= np.maximum(share, 1e-15 * np.abs(fine))
        done_val += fine[ok].sum()
        done_err += err[ok].sum()
        if ok.all():
            return done_val, done_err
        bad_lo, bad_hi = lo[~ok], hi[~ok]
        mid = 0.5 * (bad_lo + bad_hi)
        lo = np.concatenate([bad_lo, mid])
        hi = np.concatenate([mid, bad_hi])
    estimate = done_val + rule(lo, hi, xl, wl).sum()
    raise ConvergenceError(
        f"adaptive quadrature did not reach rel_tol={rel_tol}",
        estimate=estimate,
        error_bound=done_err + np.abs(rule(lo, hi, xl, wl) - rule(lo, hi, xs, ws)).sum(),
    )
