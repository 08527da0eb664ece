import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weightlab.dyadic import (build_adjacent_systems, build_sparse_family, check_ball_cover,
                              check_ball_nesting, check_ball_sandwich, check_fixed_point,
                              check_nesting, check_partition, cz_split, dumps_family, dumps_system,
                              local_osc, local_osc_bruteforce, median, rearrangement, whitney_cover)
from weightlab.functions import BoundaryFunction
from weightlab.geometry import DomainError, GridCircle


@pytest.fixture(scope="module")
def systems():
    return build_adjacent_systems(GridCircle(256), 5)


def test_structural_properties(systems):
    for S in systems:
        assert check_partition(S) and check_nesting(S)
        assert check_ball_sandwich(S) and check_ball_nesting(S)
    assert check_fixed_point(systems[0])
    ok, _ = check_ball_cover(systems)
    assert ok


def test_children_and_parent(systems):
    S = systems[1]
    Q = S.generations[2][1]
    kids = S.children(Q)
    assert len(kids) == 2 and all(S.parent(c) == Q for c in kids)
    assert sorted(np.concatenate([c.nodes for c in kids]).tolist()) == sorted(Q.nodes.tolist())


def test_rearrangement_and_median():
    v = np.array([5.0, 1.0, 3.0, 2.0])
    assert rearrangement(v, 0.1, 4) == 5.0
    assert rearrangement(v, 0.5, 4) == 2.0
    assert rearrangement(v, 1.0, 4) == 0.0
    with pytest.raises(DomainError):
        rearrangement(v, 0.0, 4)
    assert median(np.array([1.0, 2.0, 3.0])) == 2.0
    assert median(np.array([1.0, 2.0, 3.0, 4.0])) == 2.0


@given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=2, max_size=24),
       st.sampled_from([0.05, 0.125, 0.25, 0.4]))
@settings(max_examples=80, deadline=None)
def test_local_osc_matches_bruteforce(vals, lam):
    v = np.array(vals)
    assert np.isclose(local_osc(v, lam), local_osc_bruteforce(v, lam), atol=1e-12)


def test_local_osc_of_constant_is_zero():
    assert local_osc(np.full(16, 3.0), 0.125) == 0.0


def test_sparse_family_and_lerner_bound(systems, rng):
    S = systems[1]
    Q0 = S.generations[0][0]
    v = np.cumsum(rng.normal(size=256))
    family, holds = build_sparse_family(v, Q0, S)
    assert family.sparsity_ok()
    assert holds.mean() > 0.9
    d = json.loads(dumps_family(family))
    assert len(d["layers"]) == len(family.layers)
    assert json.loads(dumps_system(S))["shift"] == S.shift


def test_whitney_cover(systems):
    S = systems[0]
    g = S.grid
    omega = np.abs(g.signed_theta - 1.0) < 0.4
    cover = whitney_cover(omega, S, 2.0)
    covered = np.zeros(g.N, dtype=bool)
    for W in cover.cubes:
        covered[W.cube.nodes] = True
    assert np.array_equal(covered, omega)
    assert cover.overlap >= 1 and cover.K > 1.0


def test_cz_split_reconstructs_and_bounds(systems, rng):
    S = systems[0]
    g = S.grid
    v = rng.exponential(size=g.N) ** 3
    psi = BoundaryFunction(g, v)
    lam = 2.0 * np.abs(v).mean()
    split = cz_split(psi, lam, S, 2.0)
    total = split.good.samples + sum(b for _, b in split.bad)
    assert np.allclose(total, v)
    for W, b in split.bad:
        assert abs(b[W.cube.nodes].sum()) < 1e-9 * max(1.0, np.abs(b).sum())
    assert np.all(np.abs(split.good.samples[~split.omega]) <= lam + 1e-9)
