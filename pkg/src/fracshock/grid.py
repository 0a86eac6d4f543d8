"""Periodic uniform grid and sampled real field with a spectral view.

The solvers live on [-L, L) with n equispaced points. A Field stores the
point values; its rfft coefficients are computed lazily and cached, so
repeated derivative / multiplier operations on the same field reuse one
transform. All operators here are the standard pseudo-spectral ones:
differentiation and Fourier multipliers act mode-by-mode, point evaluation
between grid nodes is trigonometric interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on [-half_length, half_length)."""

    n: int
    half_length: float

    def __post_init__(self):
        if self.n < 16 or (self.n & (self.n - 1)) != 0:
            raise ValueError(f"grid size must be a power of two >= 16, got {self.n}")
        if not self.half_length > 0:
            raise ValueError("half_length must be positive")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_length / self.n

    @property
    def points(self) -> np.ndarray:
        return -self.half_length + self.spacing * np.arange(self.n)

    @property
    def wavenumbers(self) -> np.ndarray:
        """Nonnegative wavenumbers k_j = pi*j/L matching rfft layout."""
        return (np.pi / self.half_length) * np.arange(self.n // 2 + 1)


class Field:
    """Real-valued samples on a Grid plus a cached spectral view."""

    def __init__(self, grid: Grid, values: np.ndarray):
        values = np.asarray(values, dtype=float)
        if values.shape != (grid.n,):
            raise ValueError(f"expected {grid.n} values, got shape {values.shape}")
        self.grid = grid
        self.values = values
        self._hat = None

    @classmethod
    def from_function(cls, grid: Grid, f) -> "Field":
        return cls(grid, f(grid.points))

    @classmethod
    def from_spectrum(cls, grid: Grid, hat: np.ndarray) -> "Field":
        fld = cls(grid, np.fft.irfft(hat, n=grid.n))
        fld._hat = np.array(hat, dtype=complex)
        return fld

    @property
    def hat(self) -> np.ndarray:
        if self._hat is None:
            self._hat = np.fft.rfft(self.values)
        return self._hat

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values)))

    def deriv(self, order: int = 1) -> "Field":
        """Spectral derivative; Nyquist mode zeroed for odd orders."""
        k = self.grid.wavenumbers
        mult = (1j * k) ** order
        if order % 2 == 1:
            mult = mult.copy()
            mult[-1] = 0.0
        return Field.from_spectrum(self.grid, self.hat * mult)

    def dealias(self, frac: float = 2.0 / 3.0) -> "Field":
        """Zero all modes with index above frac * n/2 (2/3 rule)."""
        hat = self.hat.copy()
        cut = int(frac * (self.grid.n // 2))
        hat[cut + 1:] = 0.0
        return Field.from_spectrum(self.grid, hat)

    def shift(self, delta: float) -> "Field":
        """Return the field y -> f(y + delta), exactly (phase multiplication)."""
        k = self.grid.wavenumbers
        return Field.from_spectrum(self.grid, self.hat * np.exp(1j * k * delta))

    def interp(self, x) -> np.ndarray:
        """Trigonometric interpolation at arbitrary points (periodic extension)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        theta = (x + self.grid.half_length) * (np.pi / self.grid.half_length)
        c = self.hat
        n = self.grid.n
        j = np.arange(1, n // 2)
        ang = np.outer(theta, j)
        # interior modes counted twice (conjugate pairs), Nyquist as pure cosine
        out = (c[0].real
               + 2.0 * (np.cos(ang) @ c[1:n // 2].real - np.sin(ang) @ c[1:n // 2].imag)
               + c[n // 2].real * np.cos(theta * (n // 2)))
        return out / n

    def interp_scalar(self, x: float) -> float:
        return float(self.interp(np.array([x]))[0])

    def deriv_at(self, x: float, order: int = 1) -> float:
        """Value of the order-th spectral derivative at a single point."""
        return self.deriv(order).interp_scalar(x) if order > 0 else self.interp_scalar(x)

    def rescale_linearized(self, rho: float) -> "Field":
        """First-order approximation of y -> rho^{3/2}-argument dilation.

        Used by the renormalization step where |rho-1| is at round-off scale:
        f(rho^{3/2} y) ~ f(y) + (rho^{3/2}-1) y f'(y).
        """
        a = rho ** 1.5 - 1.0
        return Field(self.grid, self.values + a * self.grid.points * self.deriv(1).values)

    def resample_scaled(self, scale: float) -> "Field":
        """Exact resampling f(scale * y) by trig interpolation (O(n^2))."""
        return Field(self.grid, self.interp(scale * self.grid.points))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def l2(self) -> float:
        """Discrete L2 norm, sqrt(sum f^2 dx)."""
        return float(np.sqrt(np.sum(self.values ** 2) * self.grid.spacing))

    def copy(self) -> "Field":
        return Field(self.grid, self.values.copy())

    def __add__(self, other):
        if isinstance(other, Field):
            return Field(self.grid, self.values + other.values)
        return Field(self.grid, self.values + other)

    def __sub__(self, other):
        if isinstance(other, Field):
            return Field(self.grid, self.values - other.values)
        return Field(self.grid, self.values - other)

    def __mul__(self, a):
        if isinstance(a, Field):
            return Field(self.grid, self.values * a.values)
        return Field(self.grid, a * self.values)

    __rmul__ = __mul__


def roundtrip_error(f: Field) -> float:
    """Relative error of irfft(rfft(values)) against the stored values."""
    back = np.fft.irfft(f.hat, n=f.grid.n)
    scale = max(np.max(np.abs(f.values)), 1e-300)
    return float(np.max(np.abs(back - f.values)) / scale)


def smooth_bump(x, inner: float, outer: float):
    """C^inf window: 1 on |x| <= inner, 0 on |x| >= outer.

    Uses the standard exp(-1/t) partition-of-unity ramp on inner < |x| < outer.
    """
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    out = np.zeros_like(ax)
    out[ax <= inner] = 1.0
    mid = (ax > inner) & (ax < outer)
    t = (ax[mid] - inner) / (outer - inner)

    def ramp(u):
        # exp(-1/u) ramp, vanishing to all orders at u=0
        with np.errstate(divide="ignore", over="ignore"):
            v = np.where(u > 0, np.exp(-1.0 / np.maximum(u, 1e-300)), 0.0)
        return v

    r1 = ramp(1.0 - t)
    r2 = ramp(t)
    out[mid] = r1 / (r1 + r2)
    return out
