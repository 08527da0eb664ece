"""Explicit witness families: f = ((1+z)/(1-z))^{delta/p}, the weighted
Carleson-square family phi_delta, and the log spike."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .functions import BoundaryFunction, DiskFunction, HoloFunction
from .geometry import GridCircle, PolarGrid, square_indicator
from .weights import Weight, omega_delta

RHO = 0.25


def binomial_series(alpha: float, K: int, sign: float = 1.0) -> np.ndarray:
    """Coefficients of (1 + sign*z)^alpha up to z^K."""
    c = np.empty(K + 1)
    c[0] = 1.0
    for k in range(1, K + 1):
        c[k] = c[k - 1] * (alpha - k + 1) / k * sign
    return c


def f_delta_p(delta: float, p: float, K: int, tail_tol: float = 1e-3) -> HoloFunction:
    """Taylor coefficients of ((1+z)/(1-z))^{delta/p}."""
    if not 0 < delta < 1 or not p > 1:
        raise ValueError("need 0 < delta < 1 and p > 1")
    a = delta / p
    coeffs = np.convolve(binomial_series(a, K), binomial_series(-a, K, -1.0))[: K + 1]
    warnings = ()
    # coefficients decay like k^{a-1}; the squared tail beyond K is infinite
    # in l^1 terms once a > 0, so report the relative size of the last one
    if coeffs[-1] / coeffs[1] > tail_tol:
        warnings = (f"slow coefficient decay: a_K/a_1 = {coeffs[-1] / coeffs[1]:.2e}",)
    return HoloFunction(coeffs, warnings)


def f_on_circle(delta: float, p: float, theta: np.ndarray) -> np.ndarray:
    """f(e^{i theta}) = |cot(theta/2)|^a e^{+-i a pi/2}, zero at theta = pi."""
    a = delta / p
    theta = np.asarray(theta, dtype=float)
    cot = np.cos(theta / 2) / np.sin(theta / 2)
    vals = np.abs(cot) ** a * np.exp(1j * np.sign(cot) * a * np.pi / 2)
    return np.where(np.abs(cot) < 1e-15, 0.0, vals)


def _closed(grid: GridCircle, fn, s: float) -> BoundaryFunction:
    # node 0 is sampled at theta = pi/N; quadratures never use it raw
    theta = grid.theta.copy()
    theta[0] = np.pi / grid.N
    return BoundaryFunction(grid, fn(theta), singular_exponent=s, exact=fn)


def f_boundary(delta: float, p: float, grid: GridCircle) -> BoundaryFunction:
    return _closed(grid, lambda t: f_on_circle(delta, p, t), -delta / p)


def u_v_boundary(delta: float, p: float, grid: GridCircle) -> tuple[BoundaryFunction, BoundaryFunction]:
    s = -delta / p
    return (_closed(grid, lambda t: f_on_circle(delta, p, t).real, s),
            _closed(grid, lambda t: f_on_circle(delta, p, t).imag, s))


def cauchy_u_boundary(delta: float, p: float, grid: GridCircle) -> BoundaryFunction:
    """C(u) = (f + conj f(0))/2 = (f + 1)/2 on the circle."""
    return _closed(grid, lambda t: (f_on_circle(delta, p, t) + 1.0) / 2.0, -delta / p)


def cauchy_v_boundary(delta: float, p: float, grid: GridCircle) -> BoundaryFunction:
    """C(i v) = (f - 1)/2, so |C(v)| = |f - 1|/2 on the circle."""
    return _closed(grid, lambda t: (f_on_circle(delta, p, t) - 1.0) / 2.0, -delta / p)


def riesz_witness(delta: float, p: float, t: float, grid: GridCircle) -> tuple[BoundaryFunction, BoundaryFunction]:
    """psi_t = u + i t v and its Cauchy projection (f + 1)/2 + t (f - 1)/2."""
    s = -delta / p

    def psi(th):
        f = f_on_circle(delta, p, th)
        return f.real + 1j * t * f.imag

    def proj(th):
        f = f_on_circle(delta, p, th)
        return (f + 1.0) / 2.0 + t * (f - 1.0) / 2.0

    return _closed(grid, psi, s), _closed(grid, proj, s)


def _disk_parts(a: float, x, theta):
    """z, 1 - |z|^2 and f(z) for z = (1 - x) e^{i theta}, stable for tiny x, theta."""
    x = np.asarray(x, dtype=float)
    theta = np.asarray(theta, dtype=float)
    e = np.exp(1j * theta)
    z = (1.0 - x) * e
    one_minus_z = x * e - 2j * np.sin(theta / 2.0) * np.exp(0.5j * theta)
    f = ((1.0 + z) / one_minus_z) ** a
    return z, one_minus_z, x * (2.0 - x), f


def _on_polar(grid: PolarGrid, fn, s: float) -> DiskFunction:
    x = (1.0 - grid.r)[:, None]
    th = grid.circle.theta[None, :]
    vals = fn(np.broadcast_to(x, (len(grid.r), grid.N)), np.broadcast_to(th, (len(grid.r), grid.N)))
    return DiskFunction(grid, vals, singular_exponent=s, exact=fn)


def f_triebel_fn(delta: float, p: float):
    """(x, theta) -> (1 - |z|^2)(I + R) f, using (I + R) f = f (1 + 2 a z / (1 - z^2))."""
    a = delta / p

    def fn(x, theta):
        z, omz, w, f = _disk_parts(a, x, theta)
        return w * f * (1.0 + 2.0 * a * z / (omz * (1.0 + z)))

    return fn


def f_triebel_disk(delta: float, p: float, grid: PolarGrid) -> DiskFunction:
    return _on_polar(grid, f_triebel_fn(delta, p), -delta / p)


def cauchy_v_triebel_disk(delta: float, p: float, grid: PolarGrid) -> DiskFunction:
    """(1 - |z|^2)(I + R) C(i v) = (1 - |z|^2)((I + R) f - 1)/2."""
    base = f_triebel_fn(delta, p)

    def fn(x, theta):
        x = np.asarray(x, dtype=float)
        return (base(x, theta) - x * (2.0 - x)) / 2.0

    return _on_polar(grid, fn, -delta / p)


def f_pieces(delta: float, p: float, grid: PolarGrid) -> tuple[DiskFunction, DiskFunction]:
    """g = (1 - |z|^2) R f and h = (1 - |z|^2) f."""
    a = delta / p

    def g(x, theta):
        z, omz, w, f = _disk_parts(a, x, theta)
        return w * f * 2.0 * a * z / (omz * (1.0 + z))

    def h(x, theta):
        _, _, w, f = _disk_parts(a, x, theta)
        return w * f

    return _on_polar(grid, g, -a), _on_polar(grid, h, -a)


def delta_threshold(p: float) -> float:
    """1 - p^{-p/2}."""
    return 1.0 - p ** (-p / 2.0)


def phi_delta(p: float, delta: float, grid: PolarGrid, rho: float = RHO) -> tuple[DiskFunction, Weight]:
    """|1 - e^{i theta}|^{delta-1}(1 - r) on the square S_{rho,1}, with omega_delta."""
    if not 0 < rho < 0.5 or not 0 < delta < 1:
        raise ValueError("need 0 < rho < 1/2 and 0 < delta < 1")
    circ = grid.circle
    d = np.abs(1.0 - circ.nodes)
    d[0] = abs(1.0 - np.exp(1j * np.pi / circ.N))
    ind = square_indicator(grid, rho, 1.0)
    vals = ind * (d[None, :] ** (delta - 1.0)) * (1.0 - grid.r)[:, None]
    return DiskFunction(grid, vals.astype(complex), delta - 1.0), omega_delta(circ, p, delta)


def far_test_function(grid: PolarGrid, rho: float = RHO) -> DiskFunction:
    """(1 - |z|^2) on the opposite square S_{rho,-1}."""
    ind = square_indicator(grid, rho, -1.0)
    return DiskFunction(grid, (ind * (1.0 - grid.r**2)[:, None]).astype(complex))


def log_spike(grid: PolarGrid) -> DiskFunction:
    """(log(2/(1 - |w|^2)))^{-1}."""
    vals = 1.0 / np.log(2.0 / (1.0 - grid.r**2))
    return DiskFunction(grid, np.repeat(vals[:, None], grid.N, axis=1).astype(complex))


@dataclass(frozen=True)
class ExtremalFamily:
    kind: str
    params: dict
    holo: Optional[HoloFunction] = None
    disk: Optional[DiskFunction] = None
    boundary: Optional[BoundaryFunction] = None
