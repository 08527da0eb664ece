"""Weights on the circle: Muckenhoupt constants, dual weights, the power
family |1 - e^{i theta}|^s, Rubio de Francia majorants and the extrapolation
factor."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .functions import BoundaryFunction
from .geometry import Arc, GridCircle
from .maximal import cyclic_prefix, hl_maximal, window_sums


class NumericError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Weight:
    """Positive samples on a circle grid, optionally tagged as the power
    weight |1 - e^{i theta}|^power.

    For tagged weights the node-0 sample is taken at theta = pi/N, while all
    integrals (``cell_values``) integrate the power exactly over each cell.
    """

    grid: GridCircle
    samples: np.ndarray = field(repr=False)
    power: Optional[float] = None

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.shape != (self.grid.N,):
            raise ValueError(f"expected {self.grid.N} samples, got {s.shape}")
        if not np.all(np.isfinite(s)) or np.any(s <= 0):
            raise ValueError("weight samples must be finite and strictly positive")
        object.__setattr__(self, "samples", s)

    @classmethod
    def constant(cls, grid: GridCircle, c: float = 1.0) -> "Weight":
        return cls(grid, np.full(grid.N, float(c)))

    @classmethod
    def power_weight(cls, grid: GridCircle, s: float) -> "Weight":
        d = np.abs(1.0 - grid.nodes)
        d[0] = abs(1.0 - np.exp(1j * np.pi / grid.N))
        return cls(grid, d**s, power=float(s))

    @property
    def singular_exponent(self) -> Optional[float]:
        return self.power

    def cell_values(self, q: float = 1.0) -> np.ndarray:
        """Node values whose 1/N-mean over any run of cells is the integral of
        omega^q over those cells."""
        if self.power is None:
            return self.samples**q
        return self.grid.singular_cell_means(self.power * q)

    @cached_property
    def prefix(self) -> np.ndarray:
        return cyclic_prefix(self.cell_values(1.0))

    def measure(self, start: int, length: int) -> float:
        """omega(B) for the run of ``length`` nodes starting at ``start``."""
        return float(self.prefix[start % self.grid.N + length] - self.prefix[start % self.grid.N]) / self.grid.N

    def scaled(self, c: float) -> "Weight":
        return Weight(self.grid, self.samples * c, None)

    def rotated(self, shift: int) -> "Weight":
        return Weight(self.grid, np.roll(self.samples, shift), None)

    def as_function(self) -> BoundaryFunction:
        return BoundaryFunction(self.grid, self.samples, self.power)


def run_arc(grid: GridCircle, start: int, length: int) -> Arc:
    """The nonisotropic ball whose grid membership is exactly the run."""
    N = grid.N
    if length >= N:
        return Arc(1.0 + 0j, 2.5)
    center = np.exp(1j * np.pi * (2 * start + length - 1) / N)
    radius = 2.0 * np.sin(np.pi * length / (2 * N))
    return Arc(complex(center), float(radius))


@dataclass(frozen=True)
class ApReport:
    p: float
    value: float
    arc: Arc
    start: int
    length: int
    N: int


def _ap_sweep(a: np.ndarray, b: np.ndarray, p: float):
    N = len(a)
    pa, pb = cyclic_prefix(a), cyclic_prefix(b)
    best, arg = -np.inf, (0, N)
    for L in range(1, N + 1):
        vals = (window_sums(pa, N, L) / L) * (window_sums(pb, N, L) / L) ** (p - 1.0)
        i = int(np.argmax(vals))
        if not np.isfinite(vals[i]):
            raise NumericError(f"non-finite A_p average on run start={i}, length={L}")
        if vals[i] > best:
            best, arg = float(vals[i]), (i, L)
    return best, arg


def ap_constant(weight: Weight, p: float) -> ApReport:
    """[omega]_{A_p} = sup_B avg_B(omega) * avg_B(omega')^{p-1} over grid arcs."""
    if not p > 1:
        raise ValueError(f"p must exceed 1, got {p}")
    a = weight.cell_values(1.0)
    b = weight.cell_values(-1.0 / (p - 1.0))
    value, (start, L) = _ap_sweep(a, b, p)
    return ApReport(p, value, run_arc(weight.grid, start, L), start, L, weight.grid.N)


def ap_constant_bruteforce(values: np.ndarray, p: float) -> float:
    """Double loop over (start, length) with direct sums; oracle for ap_constant."""
    v = np.asarray(values, dtype=float)
    N = len(v)
    best = 0.0
    for s in range(N):
        for L in range(1, N + 1):
            idx = np.arange(s, s + L) % N
            val = v[idx].mean() * (v[idx] ** (-1.0 / (p - 1.0))).mean() ** (p - 1.0)
            best = max(best, val)
    return best


def a1_constant(weight: Weight) -> float:
    """max_j M(omega)(zeta_j) / omega(zeta_j)."""
    w = weight.cell_values(1.0)
    M = hl_maximal(BoundaryFunction(weight.grid, w)).samples
    return float(np.max(M / w))


def dual_weight(weight: Weight, p: float) -> Weight:
    """omega' = omega^{-1/(p-1)}."""
    if not p > 1:
        raise ValueError(f"p must exceed 1, got {p}")
    e = -1.0 / (p - 1.0)
    power = None if weight.power is None else weight.power * e
    return Weight(weight.grid, weight.samples**e, power)


def omega_delta(grid: GridCircle, p: float, delta: float) -> Weight:
    """|1 - e^{i theta}|^{(p-1)(1-delta)}."""
    if not p > 1 or not 0 < delta < 1:
        raise ValueError("need p > 1 and 0 < delta < 1")
    return Weight.power_weight(grid, (p - 1.0) * (1.0 - delta))


@dataclass(frozen=True)
class Majorant:
    weight: Weight
    terms: int
    maximal_bound: float


def rubio_majorant(phi: Weight | BoundaryFunction, q: float, tol: float = 1e-6,
                   c: float = 4.0, max_terms: int = 64) -> Majorant:
    """Truncated Rubio de Francia series sum_k M^k(phi) / (2B)^k with the
    operational maximal bound B = c q; c doubles until [omega]_{A_1} <= 2B."""
    if not q > 1:
        raise ValueError(f"q must exceed 1, got {q}")
    grid = phi.grid
    base = np.abs(np.asarray(phi.samples, dtype=float))
    if not np.any(base > 0):
        raise ValueError("phi must not vanish identically")
    while True:
        bound = c * q
        total = base.copy()
        term = base.copy()
        for k in range(1, max_terms + 1):
            term = hl_maximal(BoundaryFunction(grid, term)).samples / (2.0 * bound)
            total += term
            if term.max() < tol * total.min():
                break
        else:
            raise NumericError(f"Rubio de Francia series did not converge in {max_terms} terms")
        w = Weight(grid, total)
        if a1_constant(w) <= 2.0 * bound:
            return Majorant(w, k + 1, bound)
        c *= 2.0


def extrapolation_factor(ap: float, p: float, p0: float, m_norm_p: float,
                         m_norm_dual: float, N: Callable[[float], float] = lambda t: t) -> float:
    """Extrapolated constant K(w) for the two branches p < p0 and p > p0."""
    if not (p > 1 and p0 > 1):
        raise ValueError("need p, p0 > 1")
    if p <= p0:
        return N(ap * (2.0 * m_norm_p) ** (p0 - p))
    return N(ap ** ((p0 - 1.0) / (p - 1.0)) * (2.0 * m_norm_dual) ** ((p - p0) / (p - 1.0)))


def write_weight_csv(weight: Weight, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        if weight.power is not None:
            fh.write(f"power s={weight.power!r}\n")
        writer = csv.writer(fh)
        writer.writerow(["theta", "omega"])
        for t, w in zip(weight.grid.theta, weight.samples):
            writer.writerow([repr(float(t)), repr(float(w))])


def read_weight_csv(path: str | Path) -> Weight:
    with open(path, newline="") as fh:
        lines = fh.read().splitlines()
    power = None
    if lines and lines[0].startswith("power"):
        power = float(lines[0].split("=", 1)[1])
        lines = lines[1:]
    rows = list(csv.reader(lines))
    if rows and rows[0][0] == "theta":
        rows = rows[1:]
    samples = np.array([float(r[1]) for r in rows])
    grid = GridCircle(len(samples))
    if power is not None:
        return Weight.power_weight(grid, power)
    return Weight(grid, samples)
