import numpy as np
from hypothesis import given, settings, strategies as st

from weightlab.functions import BoundaryFunction
from weightlab.geometry import GridCircle
from weightlab.maximal import arc_sweep_max, hl_maximal, hl_maximal_bruteforce, weighted_maximal
from weightlab.weights import Weight


@given(st.lists(st.floats(0, 10, allow_nan=False), min_size=16, max_size=16))
@settings(max_examples=60, deadline=None)
def test_hl_maximal_matches_bruteforce(vals):
    g = GridCircle(16)
    v = np.array(vals)
    assert np.allclose(hl_maximal(BoundaryFunction(g, v)).samples, hl_maximal_bruteforce(v), atol=1e-12)


def test_maximal_of_constant_and_pointwise_bound(rng):
    g = GridCircle(64)
    assert np.allclose(hl_maximal(BoundaryFunction(g, np.full(64, 3.0))).samples, 3.0)
    v = rng.exponential(size=64)
    assert np.all(hl_maximal(BoundaryFunction(g, v)).samples >= v - 1e-12)


def test_weighted_maximal_reduces_to_plain_for_unit_weight(rng):
    g = GridCircle(32)
    v = rng.exponential(size=32)
    psi = BoundaryFunction(g, v)
    assert np.allclose(weighted_maximal(psi, Weight.constant(g)).samples, hl_maximal(psi).samples)


def test_arc_sweep_full_circle_bound(rng):
    v = rng.exponential(size=32)
    assert arc_sweep_max(v, np.ones(32)).min() >= v.mean() - 1e-12
