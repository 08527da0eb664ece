import numpy as np
import pytest

from weightlab.experiments import random_boundary, random_disk
from weightlab.functions import BoundaryFunction, DiskFunction, HoloFunction
from weightlab.geometry import GridCircle, polar_grid
from weightlab.operators import (abs_bergman_lower, bergman, bergman_quadrature, cauchy,
                                 cauchy_quadrature, deriv_compose, g_function,
                                 kernel_smoothness_check, q_operator, remark_identity_residual)


def test_cauchy_matches_kernel_quadrature(circle256, rng):
    psi = random_boundary(circle256, rng)
    z = 0.7 * np.exp(1j * rng.uniform(0, 2 * np.pi, 10))
    assert np.allclose(cauchy(psi)(z), cauchy_quadrature(psi, z), atol=1e-12)


def test_cauchy_annihilates_antiholomorphic(circle256):
    psi = BoundaryFunction(circle256, np.conj(circle256.nodes) ** 3)
    assert np.allclose(cauchy(psi).coeffs, 0.0, atol=1e-14)


def test_bergman_matches_kernel_quadrature(polar8, rng):
    phi = random_disk(polar8, rng)
    z = 0.6 * np.exp(1j * rng.uniform(0, 2 * np.pi, 6))
    assert np.allclose(bergman(phi)(z), bergman_quadrature(phi, z), atol=1e-11)


def test_bergman_reproduces_holomorphic_polynomials(polar8):
    f = HoloFunction([1.0, -2.0, 0.5j, 3.0])
    phi = DiskFunction(polar8, f.on_polar(polar8))
    assert np.allclose(bergman(phi).coeffs[:4], f.coeffs, atol=1e-12)


def test_deriv_compose():
    assert np.allclose(deriv_compose(HoloFunction([1.0, 1.0, 1.0])).coeffs, [1, 2, 3])


def test_q_operator_of_constant(polar8):
    phi = DiskFunction(polar8, np.ones((len(polar8.r), polar8.N), dtype=complex))
    q = q_operator(phi)
    assert np.allclose(q.values, (1 - polar8.r**2)[:, None], atol=1e-12)


def test_g_function_of_monomial():
    G = polar_grid(10, 64)
    psi = BoundaryFunction(G.circle, G.circle.nodes**2)
    # |3 r^2|^2 (1 - r^2) integrated over dr gives 9 (1/5 - 1/7)
    assert np.allclose(g_function(psi, G).samples, np.sqrt(9 * (1 / 5 - 1 / 7)), rtol=1e-10)
    with pytest.raises(ValueError):
        g_function(psi, polar_grid(10, 128))


def test_abs_bergman_lower_at_origin(polar8):
    phi = DiskFunction(polar8, np.ones((len(polar8.r), polar8.N), dtype=complex))
    assert np.isclose(abs_bergman_lower(phi, 0.0), 1.0)


def test_abs_bergman_lower_matches_direct_sum(polar8, rng):
    phi = random_disk(polar8, rng)
    z = 0.5 + 0.2j
    w = np.conj(polar8.points)
    direct = np.sum(polar8.w_area[:, None] * np.abs(phi.quadrature_values) / polar8.N
                    / np.abs(1 - z * w) ** 2)
    assert np.isclose(abs_bergman_lower(phi, z), direct, rtol=1e-9)


def test_remark_identity(circle256, rng):
    assert remark_identity_residual(random_boundary(circle256, rng)) < 1e-12


def test_kernel_smoothness(rng):
    checked = 0
    for _ in range(2000):
        a, b, c = rng.uniform(0, 2 * np.pi, 3)
        out = kernel_smoothness_check(np.exp(1j * a), np.exp(1j * b), np.exp(1j * c), rng.uniform(0, 1))
        if out is not None:
            lhs, rhs = out
            assert lhs <= rhs * 16
            checked += 1
    assert checked > 10
