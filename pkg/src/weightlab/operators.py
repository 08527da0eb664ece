"""Cauchy and Bergman operators, the radial derivative composition I + R,
the Q operator, the Littlewood-Paley G-function, |B| lower evaluation and
sparse square operators.

Holomorphic-side operators act on Fourier/Taylor coefficients.  The direct
kernel quadratures below are kept as independent oracles.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .dyadic import DyadicSystem, SparseFamily, ball_nodes
from .functions import BoundaryFunction, DiskFunction, HoloFunction
from .geometry import PolarGrid
from .maximal import hl_maximal, weighted_maximal  # noqa: F401  (re-exported)

__all__ = [
    "cauchy", "deriv_compose", "bergman", "bergman_moments", "q_operator", "g_function",
    "abs_bergman_lower", "hl_maximal", "weighted_maximal", "sparse_T",
    "kernel_smoothness_check", "cauchy_quadrature", "bergman_quadrature",
    "remark_identity_residual", "holo_on_polar",
]


def _nmodes(N: int) -> int:
    return N // 2


def cauchy(psi: BoundaryFunction) -> HoloFunction:
    """a_k = psi_hat(k) for 0 <= k < N/2."""
    return HoloFunction(psi.fft[: _nmodes(psi.N)].copy())


def deriv_compose(f: HoloFunction) -> HoloFunction:
    """(I + R) f: a_k -> (1 + k) a_k."""
    k = np.arange(len(f.coeffs))
    return HoloFunction((1.0 + k) * f.coeffs, f.warnings)


def bergman_moments(phi: DiskFunction) -> np.ndarray:
    """c_k = int_D phi(w) conj(w)^k dnu(w) for 0 <= k < N/2."""
    g = phi.grid
    K = _nmodes(g.N)
    k = np.arange(K)
    rk = g.r[:, None] ** k[None, :]
    return (g.w_area[:, None] * rk * phi.angular_fft[:, :K]).sum(axis=0)


def bergman(phi: DiskFunction) -> HoloFunction:
    c = bergman_moments(phi)
    return HoloFunction((1.0 + np.arange(len(c))) * c)


def holo_on_polar(f: HoloFunction, grid: PolarGrid) -> np.ndarray:
    return f.on_polar(grid)


def q_operator(phi: DiskFunction) -> DiskFunction:
    """(1 - |z|^2)(I + R) B(phi) on the same polar grid."""
    g = phi.grid
    vals = deriv_compose(bergman(phi)).on_polar(g)
    return DiskFunction(g, (1.0 - g.r**2)[:, None] * vals)


def g_function(psi: BoundaryFunction, grid: PolarGrid) -> BoundaryFunction:
    """G(psi)(eta) = (int_0^1 |(I+R)C(psi)(r eta)|^2 (1 - r^2) dr)^{1/2}."""
    if grid.N != psi.N:
        raise ValueError("polar grid and boundary grid differ")
    vals = deriv_compose(cauchy(psi)).on_polar(grid)
    w = grid.w_dr * (1.0 - grid.r**2)
    return BoundaryFunction(psi.grid, np.sqrt(w @ (np.abs(vals) ** 2)))


def abs_bergman_lower(phi: DiskFunction, z: complex) -> float:
    """int_D |phi(w)| / |1 - z conj(w)|^2 dnu(w).

    The angular integral at each radius uses the Poisson expansion
    1/|1 - a e^{i t}|^2 = (1 - a^2)^{-1} sum_k a^|k| e^{ikt}, exact for
    radial phi.
    """
    g = phi.grid
    N = g.N
    ghat = np.fft.fft(np.abs(phi.quadrature_values), axis=1) / N
    k = np.fft.fftfreq(N, 1.0 / N)
    a = abs(z) * g.r
    phase = np.exp(1j * k * np.angle(z)) if z != 0 else np.ones(N)
    series = (ghat * a[:, None] ** np.abs(k)[None, :] * phase[None, :]).sum(axis=1).real
    return float(g.w_area @ (series / (1.0 - a**2)))


def sparse_T(psi: BoundaryFunction, family: SparseFamily, system: DyadicSystem,
             l: int = 0) -> BoundaryFunction:
    """(sum_{Q in S} (avg_{2^l B(Q)} |psi|)^2 1_Q)^{1/2}."""
    a = psi.abs_power_integrand(1.0)
    out = np.zeros(psi.N)
    for Q in family.cubes():
        idx = ball_nodes(system.grid, Q.center, system.ball_radius(Q, 2.0**l))
        out[Q.nodes] += a[idx].mean() ** 2
    return BoundaryFunction(psi.grid, np.sqrt(out))


def kernel_smoothness_check(zeta: complex, zeta_p: complex, xi: complex, rho_r: float,
                            K1: float = 8.0, K2: float = 1.0) -> Optional[tuple[float, float]]:
    """(lhs, rhs) of the kernel regularity estimate with exponent 2, or None
    when |1 - zeta conj(xi)| < K1 |1 - zeta conj(zeta')|."""
    d_far = abs(1.0 - zeta * np.conj(xi))
    d_near = abs(1.0 - zeta * np.conj(zeta_p))
    if d_far < K1 * d_near:
        return None
    lhs = abs(1.0 / (1.0 - rho_r * zeta * np.conj(xi)) ** 2
              - 1.0 / (1.0 - rho_r * zeta_p * np.conj(xi)) ** 2)
    rhs = K2 * np.sqrt(d_near / d_far) / d_far**2
    return float(lhs), float(rhs)


def cauchy_quadrature(psi: BoundaryFunction, z) -> np.ndarray:
    """Trapezoidal rule for int psi(zeta) / (1 - z conj(zeta)) dsigma."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    kern = 1.0 / (1.0 - z[:, None] * np.conj(psi.grid.nodes)[None, :])
    return kern @ psi.quadrature_samples / psi.N


def bergman_quadrature(phi: DiskFunction, z) -> np.ndarray:
    """Polar-grid quadrature of int phi(w) / (1 - z conj(w))^2 dnu(w)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    g = phi.grid
    w = np.conj(g.points).ravel()
    vals = (g.w_area[:, None] * phi.quadrature_values / g.N).ravel()
    out = np.empty(len(z), dtype=complex)
    for i, zi in enumerate(z):
        out[i] = np.sum(vals / (1.0 - zi * w) ** 2)
    return out


def remark_identity_residual(psi: BoundaryFunction) -> float:
    """max_k |C(psi)_k - [(I+R)C(psi)]_k + [z (I+R)C(conj(zeta) psi)]_k|.

    The identity holds with the minus sign: (1 + k) - k = 1 per mode.
    """
    base = cauchy(psi).coeffs
    lead = deriv_compose(cauchy(psi)).coeffs
    shifted = psi.with_samples(psi.samples * np.conj(psi.grid.nodes))
    inner = deriv_compose(cauchy(shifted)).coeffs
    times_z = np.concatenate([[0.0], inner[:-1]])
    return float(np.max(np.abs(base - (lead - times_z))))
