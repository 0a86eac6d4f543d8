"""Adaptive panel Gauss-Legendre quadrature, vectorized over evaluation points.

scipy.integrate.quad invokes the integrand one scalar at a time, which makes
singular-integral evaluation at thousands of field points unusably slow.
This integrator instead evaluates the integrand on whole (panel x node)
arrays, with an optional leading batch axis so one call computes the
integral for many target points x at once.

Error control is panel-wise Richardson: each panel is evaluated with p and
2p nodes and bisected while the difference exceeds its share of the
tolerance. Integrands are assumed smooth inside panels; integrable endpoint
singularities are handled by the caller through graded panel edges.
"""

from __future__ import annotations

import numpy as np


class QuadratureError(RuntimeError):
    """Raised when panel refinement fails to reach the requested tolerance."""


_rule_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _rule(p: int):
    if p not in _rule_cache:
        _rule_cache[p] = np.polynomial.legendre.leggauss(p)
    return _rule_cache[p]


def _panel_values(f, a, b, p):
    """Integral estimates of f over panels [a_i, b_i] with p-node Gauss rules.

    a, b : arrays of panel edges (m,)
    f    : callable taking points shaped (m, p) -> values (..., m, p)
    returns array (..., m)
    """
    x, w = _rule(p)
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    pts = mid[:, None] + half[:, None] * x[None, :]
    vals = f(pts)
    return (vals * w).sum(axis=-1) * half


def integrate_panels(f, edges, tol=1e-10, p=16, max_levels=28, max_panels=20000):
    """Adaptively integrate f over [edges[0], edges[-1]] split at the given edges.

    f takes an array of abscissae of shape (m, p) and returns values, possibly
    with leading batch axes, shaped (..., m, p). The result sums panels away,
    returning shape (...,). tol is treated as an absolute tolerance on the
    total integral.
    """
    a = np.asarray(edges[:-1], dtype=float)
    b = np.asarray(edges[1:], dtype=float)
    keep = b > a
    a, b = a[keep], b[keep]
    total = None
    for _ in range(max_levels):
        coarse = _panel_values(f, a, b, p)
        fine = _panel_values(f, a, b, 2 * p)
        err = np.abs(fine - coarse)
        # reduce batch axes: refine a panel if any batch entry needs it
        err_panel = err if err.ndim == 1 else err.max(axis=tuple(range(err.ndim - 1)))
        contrib = fine
        bad = err_panel > tol / max(len(a), 1)
        if not bad.any():
            total = contrib.sum(axis=-1) if total is None else total + contrib.sum(axis=-1)
            return total
        good_sum = contrib[..., ~bad].sum(axis=-1)
        total = good_sum if total is None else total + good_sum
        mid = 0.5 * (a[bad] + b[bad])
        a = np.concatenate([a[bad], mid])
        b = np.concatenate([mid, b[bad]])
        if len(a) > max_panels:
            raise QuadratureError(f"panel count exceeded {max_panels}")
    raise QuadratureError(f"no convergence to tol={tol} after {max_levels} refinement levels")


def graded_edges(r_min: float, r_max: float, per_decade: int = 3) -> np.ndarray:
    """Geometrically graded panel edges from r_min to r_max, plus the 0 edge."""
    decades = np.log10(r_max / r_min)
    m = max(int(np.ceil(decades * per_decade)), 1)
    edges = r_min * (r_max / r_min) ** (np.arange(m + 1) / m)
    return np.concatenate([[0.0], edges])
