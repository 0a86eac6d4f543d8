"""Pseudo-spectral evolution of the fractal Burgers equation in (x, t).

The advection term is advanced in conservative form d_x(u^2/2) with 2/3-rule
dealiasing by a 4-stage Runge-Kutta scheme; the dissipation |k|^{2a} is
diagonal in the spectral view and handled exactly through an integrating
factor. The time step follows min(CFL, 0.25/max|u_x|) so the 1/(T-t)
gradient growth stays resolved in time; the run ends at a configured
gradient amplification (or absolute gradient cap matched to the grid).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fraclap import Alpha, multiplier
from .grid import Field, Grid, smooth_bump
from .profiles import eval_psi
from .series import FitError, ResolutionError, SolverInstabilityError, TimeSeries


@dataclass(frozen=True)
class BootstrapParams:
    """All small/large constants of the construction in one place.

    h, m, ell, q, s0 are derived from (epsilon, bigM, alpha) by their
    defining formulas; they are attributes rather than free fields so the
    invariant "each field equals its formula" holds by construction.
    """

    epsilon: float
    bigM: float = 20.0
    alpha: float = 0.2

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0,1)")
        if not self.bigM > 1.0:
            raise ValueError("M must exceed 1")

    @property
    def h(self) -> float:
        return np.log(self.bigM) ** -2.0

    @property
    def m(self) -> float:
        return (3.0 / 16.0) * (1.0 - 3.0 * self.alpha)

    @property
    def ell(self) -> float:
        return (7.0 / 8.0) * (1.0 - 3.0 * self.alpha)

    @property
    def q(self) -> float:
        return min((2.0 / 3.0) * (1.0 - 3.0 * self.alpha), 1.0 / 6.0)

    @property
    def s0(self) -> float:
        return -np.log(self.epsilon)


@dataclass
class PhysState:
    u: Field
    t: float


@dataclass
class BlowupFit:
    T_star_hat: float
    x_star_hat: float
    fit_residual: float
    last_valid_t: float
    slope: float = 0.0


def make_initial_data(p: BootstrapParams, kappa0: float, g: Grid) -> Field:
    """Shock-forming datum eps^{1/2} eta(x) Psi(x eps^{-3/2}) + kappa0.

    eta is a C^inf window, identically 1 on |x| <= L/4 and 0 beyond L/2, so
    the inner profile region sits well inside the periodic box. The grid must
    resolve the inner scale: spacing <= eps^{3/2} h / 8.
    """
    inner_scale = p.epsilon ** 1.5
    if g.spacing > inner_scale * p.h / 8.0:
        raise ResolutionError(
            f"spacing {g.spacing:.3e} exceeds eps^(3/2) h/8 = {inner_scale * p.h / 8:.3e}")
    x = g.points
    eta = smooth_bump(x, g.half_length / 4.0, g.half_length / 2.0)
    u0 = Field(g, np.sqrt(p.epsilon) * eta * eval_psi(x / inner_scale) + kappa0)

    i0 = g.n // 2  # x = 0 is a grid node
    if abs(u0.values[i0] - kappa0) > 1e-12 * max(1.0, abs(kappa0)):
        raise ResolutionError("u0(0) != kappa0")
    slope0 = u0.deriv(1).values[i0]
    target = -1.0 / p.epsilon
    if abs(slope0 - target) > 1e-3 * abs(target):
        raise ResolutionError(
            f"spectral slope at 0 is {slope0:.6e}, expected {target:.6e} to 0.1%")
    return u0


def _nonlinear(u_hat: np.ndarray, g: Grid, mask: np.ndarray, ik: np.ndarray) -> np.ndarray:
    u = np.fft.irfft(u_hat, n=g.n)
    w_hat = np.fft.rfft(0.5 * u * u)
    return -ik * (w_hat * mask)


def step(st: PhysState, a: Alpha, dt: float, advect: bool = True) -> PhysState:
    """One integrating-factor RK4 step. advect=False isolates the dissipation
    (used by eigenfunction-decay tests)."""
    g = st.u.grid
    umax = st.u.max_abs()
    if dt > 0.5 * g.spacing / max(umax, 1e-30) * (1.0 + 1e-9) and advect:
        raise ValueError(f"dt={dt:.3e} violates the CFL bound {0.5*g.spacing/max(umax,1e-30):.3e}")
    k = g.wavenumbers
    ik = 1j * k
    lam = multiplier(g, a)
    E1 = np.exp(-0.5 * dt * lam)
    E2 = E1 * E1
    cut = int((2.0 / 3.0) * (g.n // 2))
    mask = np.ones(g.n // 2 + 1)
    mask[cut + 1:] = 0.0

    v = st.u.hat * mask
    if advect:
        N = lambda z: _nonlinear(z, g, mask, ik)
    else:
        N = lambda z: np.zeros_like(z)

    k1 = N(v)
    ua = E1 * (v + 0.5 * dt * k1)
    k2 = N(ua)
    ub = E1 * v + 0.5 * dt * k2
    k3 = N(ub)
    uc = E2 * v + dt * E1 * k3
    k4 = N(uc)
    v_new = E2 * v + (dt / 6.0) * (E2 * k1 + 2.0 * E1 * (k2 + k3) + k4)

    u_new = Field.from_spectrum(g, v_new)
    if not u_new.is_finite():
        raise SolverInstabilityError(f"non-finite state at t={st.t + dt:.6e}")
    return PhysState(u_new, st.t + dt)


def holder_seminorm(f: Field, beta: float, window: float) -> float:
    """Max of |f(x)-f(z)| / |x-z|^beta over grid pairs at dyadic separations.

    Separations run through spacing * 2^j up to `window`; within each
    separation the max is exact over all grid pairs (periodic wrap included).
    """
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0,1)")
    vals = f.values
    dx = f.grid.spacing
    best = 0.0
    m = 1
    while m * dx <= window and m < f.grid.n:
        diff = np.max(np.abs(np.roll(vals, -m) - vals))
        best = max(best, diff / (m * dx) ** beta)
        m *= 2
    return float(best)


@dataclass
class PhysRunConfig:
    t0: float = 0.0
    cfl: float = 0.5
    grad_dt_factor: float = 0.25
    grad_cap_amp: float = 1e6
    grad_stop: float | None = None      # absolute gradient cap (resolution-aware)
    dt_min: float = 1e-13
    t_max: float | None = None
    max_steps: int = 2_000_000
    record_every: int = 1
    holder_window: float | None = None
    probes: tuple = ()                  # fixed x locations whose gradient is recorded
    fit_decade: float = 10.0


PHYS_COLUMNS = ["t", "dt", "max_u", "max_grad", "argmin_grad_x",
                "holder13", "holder04", "l2_u", "max_u_increase"]


def _record(ts: TimeSeries, st: PhysState, dt: float, window: float,
            probes, prev_max_u: float):
    du = st.u.deriv(1)
    i = int(np.argmin(du.values))
    row = dict(
        t=st.t, dt=dt,
        max_u=st.u.max_abs(),
        max_grad=float(np.max(np.abs(du.values))),
        argmin_grad_x=float(st.u.grid.points[i]),
        holder13=holder_seminorm(st.u, 1.0 / 3.0, window),
        holder04=holder_seminorm(st.u, 0.4, window),
        l2_u=st.u.l2(),
        max_u_increase=st.u.max_abs() - prev_max_u if prev_max_u is not None else 0.0,
    )
    for j, xp in enumerate(probes):
        row[f"grad_probe{j}"] = du.interp_scalar(xp)
    ts.append(**row)


def fit_blowup(ts: TimeSeries, decade: float = 10.0) -> BlowupFit:
    """Least-squares line through 1/max_grad over the final decade of growth;
    T_hat is its root, x_hat the argmin position extrapolated to T_hat."""
    g = ts["max_grad"]
    t = ts["t"]
    if g[-1] < 10.0 * g[0]:
        raise FitError(f"gradient grew only {g[-1]/g[0]:.2f}x; need 10x for a fit")
    sel = ts.tail_mask("max_grad", decade)
    y = 1.0 / g[sel]
    tt = t[sel]
    b, c = np.polyfit(tt, y, 1)
    T_hat = -c / b
    resid = float(np.sqrt(np.mean((np.polyval([b, c], tt) - y) ** 2)) / np.mean(y))
    xs = ts["argmin_grad_x"][sel]
    z = T_hat - tt
    bx, cx = np.polyfit(z, xs, 1)
    return BlowupFit(T_star_hat=float(T_hat), x_star_hat=float(cx),
                     fit_residual=resid, last_valid_t=float(t[-1]), slope=float(b))


def run_to_blowup(u0: Field, a: Alpha, cfg: PhysRunConfig) -> tuple[TimeSeries, BlowupFit]:
    """Integrate from u0 until the gradient cap (or dt underflow), then fit."""
    g = u0.grid
    window = cfg.holder_window if cfg.holder_window is not None else g.half_length / 2.0
    cols = PHYS_COLUMNS + [f"grad_probe{j}" for j in range(len(cfg.probes))]
    ts = TimeSeries(cols)
    st = PhysState(u0, cfg.t0)
    _record(ts, st, 0.0, window, cfg.probes, None)
    g0 = ts["max_grad"][0]
    cap = min(cfg.grad_cap_amp * g0, cfg.grad_stop if cfg.grad_stop else np.inf)

    for n in range(cfg.max_steps):
        du_max = ts["max_grad"][-1] if len(ts) else g0
        dt = min(cfg.cfl * g.spacing / max(st.u.max_abs(), 1e-30),
                 cfg.grad_dt_factor / max(du_max, 1e-30))
        if cfg.t_max is not None:
            dt = min(dt, cfg.t_max - st.t)
        if dt < cfg.dt_min:
            break
        prev_max = st.u.max_abs()
        st = step(st, a, dt)
        if (n + 1) % cfg.record_every == 0:
            _record(ts, st, dt, window, cfg.probes, prev_max)
        else:
            continue
        if ts["max_grad"][-1] >= cap:
            break
        if cfg.t_max is not None and st.t >= cfg.t_max:
            break
    return ts, fit_blowup(ts, cfg.fit_decade)
