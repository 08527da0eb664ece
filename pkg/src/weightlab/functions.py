"""Sampled function types on the circle and the disk.

A ``singular_exponent`` s on a boundary or disk function declares that its
modulus behaves like |1 - e^{i theta}|^s times a bounded factor near
theta = 0.  Quadratures then integrate the singular factor exactly over each
grid cell (product integration) instead of trusting the sample at node 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from .geometry import GridCircle, PolarGrid


def _power_profile(grid: GridCircle, s: float) -> np.ndarray:
    """|1 - e^{i theta_j}|^s with node 0 left as nan."""
    d = np.abs(1.0 - grid.nodes)
    out = np.full(grid.N, np.nan)
    out[1:] = d[1:] ** s
    return out


def smooth_factor(grid: GridCircle, values: np.ndarray, s: Optional[float]) -> np.ndarray:
    """values / |1 - e^{i theta}|^s with node 0 filled by neighbour averaging.

    ``values`` may be complex or carry a leading batch axis (last axis = angle).
    """
    if s is None:
        return values
    prof = _power_profile(grid, s)
    out = np.array(values, dtype=np.result_type(values, float), copy=True)
    out[..., 1:] = values[..., 1:] / prof[1:]
    out[..., 0] = 0.5 * (out[..., 1] + out[..., -1])
    return out


def _exact_cell0(fn, p: float, weight0, total: float, N: int) -> float:
    """Mean over [-pi/N, pi/N] of |fn|^p * weight0.

    With t = h x^m, m = 1/(1 + total), the endpoint factor t^total dt becomes
    m h^(1+total) dx, leaving a bounded integrand in x.
    """
    h = np.pi / N
    if total <= -1.0:
        raise ValueError("cell integrand is not integrable")
    m = 1.0 / (1.0 + total)
    acc = 0.0
    for sign in (1.0, -1.0):
        def g(x, sign=sign):
            t = max(h * x**m, 1e-300)
            v = np.abs(fn(np.array([sign * t]))[0])
            if v == 0.0:
                return 0.0
            return float(np.exp(p * np.log(v) - total * np.log(t / h)) * weight0(sign * t))
        val, _ = quad(g, 0.0, 1.0, limit=200)
        acc += m * h * val
    return acc / (2.0 * h)


def exact_profile(fn, theta: float) -> float:
    """(int_0^1 |fn(1 - r, theta)|^2 2r dr/(1 - r^2))^{1/2} by adaptive
    quadrature in y = -log(1 - r), split where 1 - r meets |theta|."""
    def g(y):
        x = np.exp(-y)
        v = np.abs(fn(np.array([x]), np.array([theta]))[0]) ** 2
        return float(v * 2.0 * (1.0 - x) / (2.0 - x))

    knee = -np.log(max(abs(theta), 1e-300))
    total = 0.0
    for a, b in ((0.0, max(knee, 1.0)), (max(knee, 1.0), max(knee, 1.0) + 40.0)):
        total += quad(g, a, b, limit=200)[0]
    return float(np.sqrt(total))


def cell_integrand(grid: GridCircle, smooth: np.ndarray, s: Optional[float]) -> np.ndarray:
    """Node values whose plain 1/N average integrates smooth * |1-e^{it}|^s exactly
    in the singular factor."""
    if s is None:
        return smooth
    return smooth * grid.singular_cell_means(s)


@dataclass(frozen=True)
class BoundaryFunction:
    grid: GridCircle
    samples: np.ndarray = field(repr=False)
    singular_exponent: Optional[float] = None
    # theta -> values; when given, |psi|^p on the singular cell is integrated
    # adaptively instead of through the smooth-factor model
    exact: Optional[Callable] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        samples = np.asarray(self.samples)
        if samples.shape != (self.grid.N,):
            raise ValueError(f"expected {self.grid.N} samples, got shape {samples.shape}")
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_callable(cls, grid: GridCircle, fn, singular_exponent=None):
        return cls(grid, np.asarray(fn(grid.nodes)), singular_exponent)

    @classmethod
    def from_coefficients(cls, grid: GridCircle, coeffs: dict | np.ndarray):
        """Build from Fourier coefficients given in numpy FFT order (length N)
        or as a {k: value} mapping."""
        N = grid.N
        full = np.zeros(N, dtype=complex)
        if isinstance(coeffs, dict):
            for k, c in coeffs.items():
                full[k % N] += c
        else:
            full[:] = coeffs
        return cls(grid, np.fft.ifft(full) * N)

    @property
    def N(self) -> int:
        return self.grid.N

    @cached_property
    def smooth(self) -> np.ndarray:
        return smooth_factor(self.grid, self.samples, self.singular_exponent)

    @cached_property
    def quadrature_samples(self) -> np.ndarray:
        """Samples with node 0 replaced by its cell-exact value; used by every
        linear functional (Fourier coefficients, pairings, averages)."""
        if self.singular_exponent is None:
            return self.samples
        q = np.array(self.samples, dtype=np.result_type(self.samples, float), copy=True)
        q[0] = self.smooth[0] * self.grid.singular_cell_means(self.singular_exponent)[0]
        return q

    @cached_property
    def fft(self) -> np.ndarray:
        """Fourier coefficients psi_hat(k) in numpy FFT order."""
        return np.fft.fft(self.quadrature_samples) / self.N

    def coef(self, k) -> np.ndarray:
        k = np.asarray(k)
        return self.fft[k % self.N]

    def abs_power_integrand(self, p: float, weight=None) -> np.ndarray:
        """Node values v_j with mean(v) = int |psi|^p omega dsigma (product rule)."""
        s = self.singular_exponent
        ws = None if weight is None else weight.singular_exponent
        if s is None and ws is None:
            vals = np.abs(self.samples) ** p
            return vals if weight is None else vals * weight.samples
        total = (s or 0.0) * p + (ws or 0.0)
        # take moduli first: averaging complex neighbours at node 0 would cancel phases
        fs = smooth_factor(self.grid, np.abs(self.samples), s) ** p
        wsm = None
        if weight is not None:
            wsm = smooth_factor(self.grid, weight.samples, ws)
            fs = fs * wsm
        out = fs * self.grid.singular_cell_means(total)
        if self.exact is not None:
            w0 = (lambda t: 1.0) if weight is None else (
                lambda t: wsm[0] * np.abs(2.0 * np.sin(t / 2.0)) ** (ws or 0.0))
            out[0] = _exact_cell0(self.exact, p, w0, total, self.N)
        return out

    def with_samples(self, samples, singular_exponent=None):
        # derived samples no longer match any closed form
        return BoundaryFunction(self.grid, samples, singular_exponent)


@dataclass(frozen=True)
class HoloFunction:
    """Holomorphic function on the disk given by Taylor coefficients a_0..a_K."""

    coeffs: np.ndarray = field(repr=False)
    warnings: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex))

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for a in self.coeffs[::-1]:
            acc = acc * z + a
        return acc

    def on_circle(self, grid: GridCircle, r: float | np.ndarray = 1.0) -> np.ndarray:
        """Values at r e^{i theta_j}; r may be an array, giving shape (len(r), N).

        Coefficient k lands in bin k mod N, which is exact for sampling.
        """
        r_arr = np.atleast_1d(np.asarray(r, dtype=float))
        N = grid.N
        k = np.arange(len(self.coeffs))
        scaled = self.coeffs[None, :] * r_arr[:, None] ** k[None, :]
        binned = np.zeros((len(r_arr), N), dtype=complex)
        if len(k) <= N:
            binned[:, : len(k)] = scaled
        else:
            np.add.at(binned, (slice(None), k % N), scaled)
        vals = np.fft.ifft(binned, axis=1) * N
        return vals[0] if np.ndim(r) == 0 else vals

    def on_polar(self, grid: PolarGrid) -> np.ndarray:
        return self.on_circle(grid.circle, grid.r)

    def tail_estimate(self) -> float:
        """Geometric extrapolation of sum_{k > K} |a_k|^2 from the last quarter
        of the coefficients."""
        a2 = np.abs(self.coeffs) ** 2
        n = len(a2)
        if n < 8:
            return 0.0
        k = np.arange(n)
        sel = slice(3 * n // 4, n)
        ok = a2[sel] > 0
        if ok.sum() < 2:
            return 0.0
        slope, icpt = np.polyfit(np.log(k[sel][ok] + 1.0), np.log(a2[sel][ok]), 1)
        if slope >= -1.0:
            return float("inf")
        # power-law tail: sum_{k>K} C k^slope ~ C K^(slope+1)/(-slope-1)
        K = n - 1
        return float(np.exp(icpt) * (K + 1.0) ** (slope + 1.0) / (-slope - 1.0))


@dataclass(frozen=True)
class DiskFunction:
    grid: PolarGrid
    values: np.ndarray = field(repr=False)
    singular_exponent: Optional[float] = None
    # (x, theta) -> values with x = 1 - r, accurate for x and theta far below
    # grid resolution; enables exact radial profiles on the singular cell
    exact: Optional[Callable] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        values = np.asarray(self.values)
        shape = (len(self.grid.r), self.grid.N)
        if values.shape != shape:
            raise ValueError(f"expected shape {shape}, got {values.shape}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, grid: PolarGrid, fn, singular_exponent=None):
        return cls(grid, np.asarray(fn(grid.points), dtype=complex), singular_exponent)

    @cached_property
    def quadrature_values(self) -> np.ndarray:
        """Values with the theta = 0 column replaced by its cell-exact value."""
        s = self.singular_exponent
        if s is None:
            return self.values
        q = np.array(self.values, dtype=complex, copy=True)
        sm = smooth_factor(self.grid.circle, self.values, s)
        q[:, 0] = sm[:, 0] * self.grid.circle.singular_cell_means(s)[0]
        return q

    @cached_property
    def angular_fft(self) -> np.ndarray:
        """Per-radius Fourier coefficients, shape (n_r, N)."""
        return np.fft.fft(self.quadrature_values, axis=1) / self.grid.N

    def radial_profile(self) -> BoundaryFunction:
        """(int_0^1 |phi(r zeta)|^2 2r dr/(1 - r^2))^{1/2} at each node."""
        inner = np.sqrt(self.grid.w_lp @ (np.abs(self.values) ** 2))
        prof = None
        if self.exact is not None:
            fn = self.exact
            prof = lambda th: np.array([exact_profile(fn, t) for t in np.atleast_1d(th)])
        return BoundaryFunction(self.grid.circle, inner, self.singular_exponent, exact=prof)
