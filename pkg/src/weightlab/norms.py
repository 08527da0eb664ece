"""Weighted norm functionals: L^p(omega), H^p(omega), the mixed norm
L^{p,2}(omega), the Triebel-Lizorkin norm F_0^{p,2}(omega) and the pairings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .functions import BoundaryFunction, DiskFunction, HoloFunction
from .geometry import PolarGrid, RADIAL_ORDER
from .weights import Weight

TAIL_TOL = 1e-6
DIVERGENCE_FRACTION = 1e-2


class Norm(float):
    """A float carrying diagnostic flags (e.g. 'divergent', 'abel', 'tail')."""

    flags: tuple = ()

    def __new__(cls, value, flags=()):
        obj = super().__new__(cls, value)
        obj.flags = tuple(flags)
        return obj


@dataclass(frozen=True)
class NormSpec:
    p: float
    weight: Optional[Weight] = None
    grid: Optional[PolarGrid] = None

    def __post_init__(self):
        if not (1 < self.p < np.inf):
            raise ValueError(f"p must lie in (1, inf), got {self.p}")

    def check_grid(self, N: int):
        if self.weight is not None and self.weight.grid.N != N:
            raise ValueError("weight grid does not match function grid")


def lp_norm(psi: BoundaryFunction, spec: NormSpec) -> Norm:
    """(sum_j |psi_j|^p omega_j / N)^{1/p}, singular nodes integrated per cell."""
    spec.check_grid(psi.N)
    return Norm(np.mean(psi.abs_power_integrand(spec.p, spec.weight)) ** (1.0 / spec.p))


def boundary_values(f: HoloFunction, grid) -> tuple[BoundaryFunction, tuple]:
    """Boundary restriction: raw summation at r = 1 if the coefficients are
    absolutely summable to TAIL_TOL, else Abel means at r = 1 - 2^-depth."""
    a = np.abs(f.coeffs)
    circle = grid.circle if isinstance(grid, PolarGrid) else grid
    scale = max(a.sum(), 1e-300)
    tail = a[-max(1, len(a) // 8):].sum() / scale
    if tail <= TAIL_TOL or not isinstance(grid, PolarGrid):
        flags = () if tail <= TAIL_TOL else ("tail",)
        return BoundaryFunction(circle, f.on_circle(circle, 1.0)), flags
    r = 1.0 - grid.eps
    return BoundaryFunction(circle, f.on_circle(circle, r)), ("abel",)


def hp_norm(f: HoloFunction, spec: NormSpec, grid=None,
            closed_boundary: Optional[BoundaryFunction] = None) -> Norm:
    """L^p(omega) norm of the boundary values of f.

    ``closed_boundary`` supplies exact boundary values (extremal families),
    bypassing coefficient summation.
    """
    if closed_boundary is not None:
        return lp_norm(closed_boundary, spec)
    if grid is None:
        raise ValueError("a grid is required without closed boundary values")
    psi, flags = boundary_values(f, grid)
    flags = flags + tuple(f.warnings)
    return Norm(lp_norm(psi, spec), flags)


def _closing_fraction(phi: DiskFunction) -> float:
    g = phi.grid
    sq = np.abs(phi.values) ** 2
    if phi.singular_exponent is not None:
        # columns next to the declared singular node legitimately reach r -> 1
        sq = sq[:, 3:-2]
    total = g.w_lp @ sq
    last = g.w_lp[-RADIAL_ORDER:] @ sq[-RADIAL_ORDER:]
    ok = total > 0
    if not ok.any():
        return 0.0
    return float(np.sum(last[ok]) / np.sum(total[ok]))


def mixed_norm(phi: DiskFunction, spec: NormSpec) -> Norm:
    """(int_S (int_0^1 |phi(r zeta)|^2 2r dr/(1-r^2))^{p/2} omega dsigma)^{1/p}.

    Flags 'divergent' when the closing radial panel carries more than
    DIVERGENCE_FRACTION of the inner integral (the value is then the
    truncation-dependent one).
    """
    spec.check_grid(phi.grid.N)
    value = lp_norm(phi.radial_profile(), spec)
    flags = ("divergent",) if _closing_fraction(phi) > DIVERGENCE_FRACTION else ()
    return Norm(value, flags)


def triebel_disk(f: HoloFunction, grid: PolarGrid, singular_exponent=None) -> DiskFunction:
    """(1 - |z|^2)(I + R) f sampled on the polar grid."""
    k = np.arange(len(f.coeffs))
    vals = HoloFunction((1.0 + k) * f.coeffs).on_polar(grid)
    return DiskFunction(grid, (1.0 - grid.r**2)[:, None] * vals, singular_exponent)


def triebel_norm(f: HoloFunction, spec: NormSpec, grid: Optional[PolarGrid] = None,
                 closed_disk: Optional[DiskFunction] = None) -> Norm:
    """Mixed norm of (1 - |z|^2)(I + R) f; ``closed_disk`` supplies that disk
    function in closed form."""
    if closed_disk is None:
        grid = grid or spec.grid
        if grid is None:
            raise ValueError("a polar grid is required")
        closed_disk = triebel_disk(f, grid)
    out = mixed_norm(closed_disk, spec)
    return Norm(out, out.flags + tuple(f.warnings))


def pairing_circle(psi: BoundaryFunction, chi: BoundaryFunction) -> complex:
    return complex(np.mean(psi.quadrature_samples * np.conj(chi.quadrature_samples)))


def pairing_disk(phi: DiskFunction, chi: DiskFunction) -> complex:
    """int_D phi conj(chi) dnu / (1 - |z|^2)."""
    if phi.grid is not chi.grid and phi.grid.N != chi.grid.N:
        raise ValueError("functions live on different grids")
    g = phi.grid
    inner = (phi.values * np.conj(chi.values)).mean(axis=1)
    return complex(g.w_lp @ inner)


def l1_disk(phi: DiskFunction) -> float:
    """int_D |phi| dnu."""
    g = phi.grid
    return float(g.w_area @ np.abs(phi.quadrature_values).mean(axis=1))
