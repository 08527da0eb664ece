"""Circle and disk geometry: uniform circle grids, nonisotropic arcs,
graded polar grids, Carleson squares and the quasi-metric on the punctured
closed disk.

Measures are normalized: the circle carries dsigma with total mass 1 and the
disk carries dnu = dA/pi, so that in polar coordinates dnu = 2r dr dsigma.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

UNIT_TOL = 1e-12
TWO_PI = 2.0 * np.pi

# Gauss-Legendre order of the composite radial rule on each dyadic level.
RADIAL_ORDER = 12


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def _check_unit(z, name="argument"):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(np.abs(z) - 1.0) > UNIT_TOL):
        raise DomainError(f"{name} must lie on the unit circle")
    return z


def rho(zeta, eta):
    """Nonisotropic quasi-metric |1 - zeta * conj(eta)| on the unit circle."""
    zeta = _check_unit(zeta, "zeta")
    eta = _check_unit(eta, "eta")
    return np.abs(1.0 - zeta * np.conj(eta))


@dataclass(frozen=True)
class GridCircle:
    """Uniform grid theta_j = 2 pi j / N, each node carrying measure 1/N."""

    N: int

    def __post_init__(self):
        if not _is_pow2(self.N):
            raise DomainError(f"grid size must be a power of two, got {self.N}")

    @cached_property
    def theta(self) -> np.ndarray:
        return TWO_PI * np.arange(self.N) / self.N

    @cached_property
    def nodes(self) -> np.ndarray:
        return np.exp(1j * self.theta)

    @property
    def node_measure(self) -> float:
        return 1.0 / self.N

    @cached_property
    def signed_theta(self) -> np.ndarray:
        """Node angles folded into (-pi, pi]."""
        t = self.theta.copy()
        t[t > np.pi] -= TWO_PI
        return t

    def half_width_nodes(self, h: float) -> int:
        """Largest m with m * 2pi/N < h, i.e. the node count on each side of
        a center node that lies strictly inside an arc of half-width h."""
        if h >= np.pi + 1e-15:
            return self.N
        m = int(np.ceil(h * self.N / TWO_PI - 1e-9)) - 1
        return max(m, 0)

    def singular_cell_means(self, exponent: float) -> np.ndarray:
        """Exact cell averages of |1 - e^{i theta}|^exponent.

        Cell j is [theta_j - pi/N, theta_j + pi/N].  Requires exponent > -1.
        """
        return _singular_cell_means(self.N, float(exponent))


_CELL_CACHE: dict = {}


def _singular_cell_means(N: int, s: float) -> np.ndarray:
    key = (N, s)
    if key in _CELL_CACHE:
        return _CELL_CACHE[key]
    if s <= -1.0:
        raise DomainError(f"|1 - e^(i theta)|^{s} is not integrable")
    half = np.pi / N
    out = np.empty(N)
    # regular cells: Gauss-Legendre on the (smooth) integrand
    x, w = roots_legendre(16)
    centers = TWO_PI * np.arange(1, N) / N
    pts = centers[:, None] + half * x[None, :]
    vals = np.abs(2.0 * np.sin(pts / 2.0)) ** s
    out[1:] = 0.5 * (vals @ w)
    # cell 0: |2 sin(t/2)|^s = t^s * (sinc factor)^s, Gauss-Jacobi in t
    xj, wj = roots_jacobi(24, 0.0, s)
    t = 0.5 * half * (xj + 1.0)
    smooth = (2.0 * np.sin(t / 2.0) / t) ** s
    # int_0^half t^s g(t) dt = (half/2)^{s+1} * sum wj g(t)
    integral = (0.5 * half) ** (s + 1.0) * np.sum(wj * smooth)
    out[0] = integral / half
    _CELL_CACHE[key] = out
    return out


@dataclass(frozen=True)
class Arc:
    """Nonisotropic ball B(center, radius) = {eta : |1 - center conj(eta)| < radius}."""

    center: complex
    radius: float

    @property
    def half_width(self) -> float:
        return 2.0 * np.arcsin(min(self.radius, 2.0) / 2.0)

    @property
    def is_full(self) -> bool:
        return self.radius > 2.0

    def contains(self, eta) -> np.ndarray:
        if self.is_full:
            return np.ones(np.shape(eta), dtype=bool)
        d = np.abs(1.0 - self.center * np.conj(np.asarray(eta)))
        # strict membership; nodes on the boundary circle are excluded
        return d < self.radius * (1.0 - 1e-12)

    def mask(self, grid: GridCircle) -> np.ndarray:
        return self.contains(grid.nodes)

    def measure(self, grid: GridCircle) -> float:
        return float(self.mask(grid).sum()) / grid.N


def arc_ball(zeta, r: float) -> Arc:
    zeta = complex(_check_unit(zeta, "zeta"))
    if not r > 0:
        raise DomainError(f"arc radius must be positive, got {r}")
    return Arc(zeta, float(r))


@dataclass(frozen=True)
class PolarGrid:
    """Polar grid on the disk with a radial mesh graded toward r = 1.

    Radial panels are [0, 1/2], [1 - 2^-l, 1 - 2^-(l+1)] for l = 1..depth-1
    and a closing panel [1 - 2^-depth, 1], each carrying a RADIAL_ORDER-point
    Gauss-Legendre rule.  The closing panel keeps polynomial moments exact;
    its nodes stay strictly below 1 so singular weights remain finite.
    """

    depth: int
    circle: GridCircle
    r: np.ndarray = field(repr=False)
    w_dr: np.ndarray = field(repr=False)

    @property
    def eps(self) -> float:
        """Width of the closing radial panel."""
        return 2.0 ** (-self.depth)

    @property
    def eps_r(self) -> float:
        """1 - max r_i."""
        return float(1.0 - self.r.max())

    @cached_property
    def w_area(self) -> np.ndarray:
        """Weights for int_0^1 (.) 2r dr."""
        return 2.0 * self.r * self.w_dr

    @cached_property
    def w_lp(self) -> np.ndarray:
        """Weights for int_0^1 (.) 2r dr / (1 - r^2)."""
        return 2.0 * self.r * self.w_dr / (1.0 - self.r**2)

    @property
    def N(self) -> int:
        return self.circle.N

    @cached_property
    def points(self) -> np.ndarray:
        return self.r[:, None] * self.circle.nodes[None, :]

    @cached_property
    def level(self) -> np.ndarray:
        """Panel index of each radial node (0 for [0, 1/2])."""
        return np.repeat(np.arange(self.depth + 1), RADIAL_ORDER)


def radial_rule(depth: int, order: int = RADIAL_ORDER):
    x, w = roots_legendre(order)
    edges = np.concatenate([[0.0], 1.0 - 2.0 ** -np.arange(1, depth + 1), [1.0]])
    a, b = edges[:-1], edges[1:]
    r = (0.5 * (b - a)[:, None] * (x[None, :] + 1.0) + a[:, None]).ravel()
    wr = (0.5 * (b - a)[:, None] * w[None, :]).ravel()
    return r, wr


def polar_grid(depth: int, N: int) -> PolarGrid:
    if depth < 4:
        raise DomainError(f"depth must be at least 4, got {depth}")
    circle = GridCircle(N)
    r, wr = radial_rule(depth)
    return PolarGrid(depth=depth, circle=circle, r=r, w_dr=wr)


@dataclass(frozen=True)
class CarlesonSquare:
    """S_a = {s eta : 1 - s <= 1 - |a|, |1 - eta conj(a/|a|)| <= 1 - |a|}."""

    apex: complex

    def __post_init__(self):
        if not 0 < abs(self.apex) < 1:
            raise DomainError("apex must lie in the punctured open disk")

    @property
    def side(self) -> float:
        return 1.0 - abs(self.apex)

    def contains(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        s = np.abs(w)
        eta = np.where(s > 0, w / np.where(s > 0, s, 1.0), 1.0)
        direction = self.apex / abs(self.apex)
        tol = 1e-12
        return (1.0 - s <= self.side + tol) & (
            np.abs(1.0 - eta * np.conj(direction)) <= self.side + tol
        )


def square_indicator(grid: PolarGrid, rho_: float, direction: complex) -> np.ndarray:
    """Indicator of {r e^{it} : 1 - r < rho_, |1 - e^{it} conj(direction)| < rho_}
    on the polar grid, shape (n_r, N)."""
    radial = (1.0 - grid.r) < rho_
    angular = np.abs(1.0 - grid.circle.nodes * np.conj(direction)) < rho_
    return radial[:, None] & angular[None, :]


def quasi_metric(z, w):
    """d(z, w) = max(| |z| - |w| |, |1 - z* conj(w*)|) on the closed disk minus 0."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if np.any(z == 0) or np.any(w == 0):
        raise DomainError("the origin is excluded from the punctured disk")
    if np.any(np.abs(z) > 1 + UNIT_TOL) or np.any(np.abs(w) > 1 + UNIT_TOL):
        raise DomainError("points must lie in the closed unit disk")
    zs = z / np.abs(z)
    ws = w / np.abs(w)
    return np.maximum(np.abs(np.abs(z) - np.abs(w)), np.abs(1.0 - zs * np.conj(ws)))
