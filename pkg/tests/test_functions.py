import numpy as np
import pytest

from weightlab.functions import BoundaryFunction, DiskFunction, HoloFunction, exact_profile
from weightlab.geometry import GridCircle


def test_from_coefficients_roundtrip(circle256, rng):
    c = {k: complex(*rng.normal(size=2)) for k in range(-5, 6)}
    psi = BoundaryFunction.from_coefficients(circle256, c)
    for k, v in c.items():
        assert np.isclose(psi.coef(k), v)


def test_shape_check(circle256):
    with pytest.raises(ValueError):
        BoundaryFunction(circle256, np.zeros(10))


def test_holo_evaluation_matches_horner():
    f = HoloFunction([1.0, 2.0, 3.0])
    z = 0.3 + 0.2j
    assert np.isclose(f(z), 1 + 2 * z + 3 * z**2)
    g = GridCircle(16)
    assert np.allclose(f.on_circle(g, 0.5), 1 + 2 * 0.5 * g.nodes + 3 * 0.25 * g.nodes**2)


def test_singular_abs_power_uses_moduli():
    # phases e^{+-i c} on the two sides of the singular node must not cancel
    g = GridCircle(1024)
    s = -0.4
    d = np.abs(1 - g.nodes)
    d[0] = np.abs(1 - np.exp(1j * np.pi / g.N))
    phase = np.exp(1j * np.sign(g.signed_theta) * 1.2)
    psi = BoundaryFunction(g, d**s * phase, s)
    plain = BoundaryFunction(g, d**s, s)
    assert np.isclose(psi.abs_power_integrand(2).mean(), plain.abs_power_integrand(2).mean())


def test_exact_cell_matches_product_rule_for_pure_power():
    g = GridCircle(512)
    s = -0.3
    fn = lambda t: np.abs(2 * np.sin(np.asarray(t) / 2)) ** s
    th = g.theta.copy()
    th[0] = np.pi / g.N
    with_exact = BoundaryFunction(g, fn(th), s, exact=fn)
    plain = BoundaryFunction(g, fn(th), s)
    assert np.allclose(with_exact.abs_power_integrand(3), plain.abs_power_integrand(3), rtol=1e-9)


def test_radial_profile_of_sqrt_weight(polar8):
    vals = np.repeat(np.sqrt(1 - polar8.r**2)[:, None], polar8.N, axis=1)
    prof = DiskFunction(polar8, vals).radial_profile()
    assert np.allclose(prof.samples, 1.0, atol=1e-13)


def test_exact_profile_closed_form():
    # phi = (1 - r^2): int (1-r^2)^2 2r dr/(1-r^2) = 1/2
    fn = lambda x, t: np.asarray(x) * (2 - np.asarray(x))
    assert np.isclose(exact_profile(fn, 0.3) ** 2, 0.5, rtol=1e-10)


def test_tail_estimate():
    k = np.arange(1, 400)
    f = HoloFunction(np.r_[1.0, k**-2.0])
    est = f.tail_estimate()
    assert 0 < est < 1e-6
    assert HoloFunction(np.ones(64)).tail_estimate() == float("inf")
