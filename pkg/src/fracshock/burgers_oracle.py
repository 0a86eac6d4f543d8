"""Exact pre-shock solutions of inviscid Burgers by characteristics.

u(x,t) = u0(x0) where x0 solves x = x0 + t*u0(x0). Before the first shock
the map x0 -> x0 + t*u0(x0) is strictly increasing, so the root is unique
and bracketed bisection is unconditionally robust; a Newton polish with a
finite-difference slope finishes the job. This module is the correctness
anchor for the alpha=0 limit of the solvers.
"""

from __future__ import annotations

import numpy as np


class ShockedError(RuntimeError):
    """Raised when root bracketing detects multiple characteristics (post-shock)."""


def blowup_time_burgers(u0_deriv_min: float) -> float:
    """First shock time -1/min(u0') measured from the initial time."""
    if not u0_deriv_min < 0:
        raise ValueError("data with nonnegative slope never shocks")
    return -1.0 / u0_deriv_min


def _bracket(u0, t, x, lo, hi):
    """Expand [lo, hi] until F(x0) = x0 + t*u0(x0) - x changes sign."""
    def F(x0):
        return x0 + t * u0(x0) - x
    width = hi - lo
    for _ in range(80):
        if F(lo) <= 0.0 <= F(hi):
            return lo, hi
        lo, hi = lo - width, hi + width
        width *= 2.0
    raise RuntimeError("could not bracket the characteristic foot")


def eval_characteristics(u0, t: float, x: float, tol: float = 1e-13) -> float:
    """Solution value u(x,t) from tracing the characteristic back to t=0."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0.0:
        return float(u0(np.float64(x)))

    def F(x0):
        return x0 + t * float(u0(np.float64(x0))) - x

    lo, hi = _bracket(lambda z: float(u0(np.float64(z))), t, x, x - 1.0, x + 1.0)
    # pre-shock F is monotone; more than one sign change means t is past the shock
    probe = np.linspace(lo, hi, 33)
    signs = np.sign([F(p) for p in probe])
    if np.count_nonzero(np.diff(signs) != 0) > 1:
        raise ShockedError("multiple characteristic feet: t appears past the shock time")

    while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if F(mid) <= 0:
            lo = mid
        else:
            hi = mid
    x0 = 0.5 * (lo + hi)
    h = 1e-7 * max(1.0, abs(x0))
    slope = (F(x0 + h) - F(x0 - h)) / (2 * h)
    if slope > 0:
        x0 -= F(x0) / slope
    return float(u0(np.float64(x0)))


def eval_characteristics_grid(u0, t: float, xs: np.ndarray, tol: float = 1e-13,
                              u_bound: float | None = None) -> np.ndarray:
    """Vectorized characteristics solve on many points at once.

    Bisection runs simultaneously on all targets with a shared iteration
    count; u_bound (default max|u0| over the targets) sets the initial
    bracket x - t*u_bound <= x0 <= x + t*u_bound.
    """
    xs = np.asarray(xs, dtype=float)
    if t == 0.0:
        return np.asarray(u0(xs), dtype=float)
    if u_bound is None:
        u_bound = float(np.max(np.abs(u0(xs)))) + 1.0
    lo = xs - t * u_bound
    hi = xs + t * u_bound

    def F(x0):
        return x0 + t * u0(x0) - xs

    if np.any(F(lo) > 0) or np.any(F(hi) < 0):
        raise RuntimeError("initial bracket failed; increase u_bound")
    span = float(np.max(hi - lo))
    iters = int(np.ceil(np.log2(span / tol))) + 2
    for _ in range(min(iters, 200)):
        mid = 0.5 * (lo + hi)
        take_lo = F(mid) <= 0
        lo = np.where(take_lo, mid, lo)
        hi = np.where(take_lo, hi, mid)
    x0 = 0.5 * (lo + hi)
    return np.asarray(u0(x0), dtype=float)


def max_gradient_burgers(u0_deriv_min: float, t: float) -> float:
    """Exact max|du/dx| growth |m|/(1 - |m| t) for m = min u0' < 0."""
    m = abs(u0_deriv_min)
    return m / (1.0 - m * t)
