"""Adjacent dyadic arc systems on the circle and the local-oscillation toolkit
built on them: rearrangements, medians, local mean oscillation, the dyadic
sharp maximal function, sparse families, Whitney covers and the
Calderon-Zygmund splitting.

Cubes are runs of grid nodes.  Node sets are index arrays taken mod N.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .functions import BoundaryFunction
from .geometry import Arc, DomainError, GridCircle
from .maximal import hl_maximal

DELTA = 0.5
C_OUTER = 6.0   # Q inside B(center, C_OUTER * 2^-k)
C_INNER = 1.0   # B(center, C_INNER * 2^-k) inside Q


class ConstructionError(RuntimeError):
    pass


class SparseBoundError(RuntimeError):
    pass


@dataclass(frozen=True)
class DyadicCube:
    system: int
    generation: int
    index: int
    start: int
    length: int
    center: int
    N: int

    @property
    def nodes(self) -> np.ndarray:
        return (self.start + np.arange(self.length)) % self.N

    @property
    def measure(self) -> float:
        return self.length / self.N

    @property
    def ell(self) -> float:
        return DELTA**self.generation

    def contains_node(self, j: int) -> bool:
        return (j - self.start) % self.N < self.length

    def contains(self, other: "DyadicCube") -> bool:
        off = (other.start - self.start) % self.N
        return off + other.length <= self.length

    def key(self):
        return (self.system, self.generation, self.index)

    def to_dict(self) -> dict:
        return {"system": self.system, "generation": self.generation, "index": self.index,
                "start": self.start, "length": self.length, "center": self.center}


def ball_nodes(grid: GridCircle, center: int, radius: float) -> np.ndarray:
    """Node indices of B(zeta_center, radius) (strict inequality)."""
    if radius > 2.0:
        return np.arange(grid.N)
    d = np.abs(1.0 - grid.nodes * np.conj(grid.nodes[center]))
    return np.flatnonzero(d < radius * (1.0 - 1e-12))


def ball_run(grid: GridCircle, center: int, radius: float) -> tuple[int, int]:
    """(start, length) of B(zeta_center, radius) as a run of nodes."""
    if radius > 2.0:
        return 0, grid.N
    h = 2.0 * np.arcsin(min(radius * (1.0 - 1e-12), 2.0) / 2.0)
    m = grid.half_width_nodes(h)
    if 2 * m + 1 >= grid.N:
        return 0, grid.N
    return (center - m) % grid.N, 2 * m + 1


@dataclass
class DyadicSystem:
    system: int
    shift: int
    grid: GridCircle
    k_max: int
    fixed_point: Optional[int] = None
    c_inner: float = C_INNER
    c_outer: float = C_OUTER
    generations: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        N = self.grid.N
        self.generations = []
        for k in range(self.k_max + 1):
            L = N >> k
            cubes = []
            for i in range(1 << k):
                start = (self.shift + i * L) % N
                if self.fixed_point is not None and (self.fixed_point - start) % N < L:
                    center = self.fixed_point
                else:
                    center = (start + L // 2) % N
                cubes.append(DyadicCube(self.system, k, i, start, L, center, N))
            self.generations.append(cubes)

    @property
    def N(self) -> int:
        return self.grid.N

    def cube_of(self, node: int, k: int) -> DyadicCube:
        L = self.N >> k
        i = ((node - self.shift) % self.N) // L
        return self.generations[k][i]

    def children(self, Q: DyadicCube) -> list[DyadicCube]:
        if Q.generation >= self.k_max:
            return []
        return [self.generations[Q.generation + 1][2 * Q.index + t] for t in (0, 1)]

    def parent(self, Q: DyadicCube) -> Optional[DyadicCube]:
        if Q.generation == 0:
            return None
        return self.generations[Q.generation - 1][Q.index // 2]

    def descendants(self, Q: DyadicCube):
        """All cubes of the system contained in Q, Q included, coarse to fine."""
        out = [Q]
        frontier = [Q]
        while frontier:
            nxt = [c for P in frontier for c in self.children(P)]
            out.extend(nxt)
            frontier = nxt
        return out

    def chain(self, node: int, Q0: DyadicCube) -> list[DyadicCube]:
        """Cubes of the system inside Q0 containing ``node``, coarse to fine."""
        if not Q0.contains_node(node):
            raise DomainError(f"node {node} is not in the cube {Q0.key()}")
        return [self.cube_of(node, k) for k in range(Q0.generation, self.k_max + 1)]

    def ball_radius(self, Q: DyadicCube, dilation: float = 1.0) -> float:
        return dilation * self.c_outer * Q.ell

    def ball(self, Q: DyadicCube, dilation: float = 1.0) -> Arc:
        return Arc(complex(self.grid.nodes[Q.center]), self.ball_radius(Q, dilation))

    def ball_nodes(self, Q: DyadicCube, dilation: float = 1.0) -> np.ndarray:
        return ball_nodes(self.grid, Q.center, self.ball_radius(Q, dilation))

    def to_dict(self) -> dict:
        return {"system": self.system, "shift": self.shift, "N": self.N, "k_max": self.k_max,
                "fixed_point": self.fixed_point,
                "cubes": [c.to_dict() for gen in self.generations for c in gen]}


def build_adjacent_systems(grid: GridCircle, k_max: int) -> list[DyadicSystem]:
    """Three binary arc systems shifted by thirds of the circle.

    System 1 is shifted by floor(N/3) so that node 0 stays at roughly a third
    of its cube at every generation and can serve as the common center point;
    system 2 is the unshifted binary partition, system 3 is shifted by
    floor(2N/3).
    """
    N = grid.N
    m = N.bit_length() - 1
    if m < k_max + 2:
        raise ConstructionError(
            f"generation {k_max} needs N >= 2^{k_max + 2}; grid has N = {N}")
    shifts = [N // 3, 0, (2 * N) // 3]
    return [DyadicSystem(j + 1, s, grid, k_max, fixed_point=0 if j == 0 else None)
            for j, s in enumerate(shifts)]


# ---------------------------------------------------------------------------
# property checks for the adjacent systems


def check_partition(system: DyadicSystem) -> bool:
    for gen in system.generations:
        counts = np.zeros(system.N, dtype=int)
        for Q in gen:
            counts[Q.nodes] += 1
        if not np.all(counts == 1):
            return False
    return True


def check_nesting(system: DyadicSystem) -> bool:
    for k, gen in enumerate(system.generations):
        for l in range(k + 1, len(system.generations)):
            for Q in system.generations[l]:
                P = system.cube_of(Q.start, k)
                if not P.contains(Q):
                    return False
                for other in gen:
                    if other is not P and np.intersect1d(other.nodes, Q.nodes).size:
                        return False
    return True


def check_ball_sandwich(system: DyadicSystem) -> bool:
    g = system.grid
    for gen in system.generations:
        for Q in gen:
            inner = ball_nodes(g, Q.center, system.c_inner * Q.ell)
            outer = set(ball_nodes(g, Q.center, system.c_outer * Q.ell).tolist())
            nodes = set(Q.nodes.tolist())
            if not set(inner.tolist()) <= nodes or not nodes <= outer:
                return False
    return True


def check_ball_nesting(system: DyadicSystem) -> bool:
    for gen in system.generations[1:]:
        for Q in gen:
            P = system.parent(Q)
            while P is not None:
                if not set(system.ball_nodes(Q).tolist()) <= set(system.ball_nodes(P).tolist()):
                    return False
                P = system.parent(P)
    return True


def check_fixed_point(system: DyadicSystem, node: int = 0) -> bool:
    return all(system.cube_of(node, k).center == node for k in range(system.k_max + 1))


def cube_diameter(grid: GridCircle, Q: DyadicCube) -> float:
    # the farthest pair in a run is its two endpoints (or antipodal if L > N/2)
    if Q.length > grid.N // 2:
        return 2.0
    return 2.0 * np.sin(np.pi * (Q.length - 1) / grid.N)


def check_ball_cover(systems: list[DyadicSystem]) -> tuple[bool, float]:
    """Every grid ball B with delta^{k+3} < r <= delta^{k+2} sits in a
    generation-k cube of some system with diam Q <= C r.  Returns (ok, C)."""
    grid = systems[0].grid
    N = grid.N
    k_max = systems[0].k_max
    worst = 0.0
    dtheta = 2 * np.pi / N
    for k in range(k_max + 1):
        lo, hi = DELTA ** (k + 3), DELTA ** (k + 2)
        for L in range(1, N + 1):
            # radii realizing a run of L nodes centered on a node or a midpoint
            r_min = 2 * np.sin(min((L - 1) / 2 * dtheta, np.pi) / 2)
            r_max = 2 * np.sin(min((L + 1) / 2 * dtheta, np.pi) / 2)
            a, b = max(lo, r_min), min(hi, r_max)
            if a >= b and not (r_min < hi <= r_max):
                continue
            r_eff = max(lo, r_min)
            for start in range(N):
                found = None
                for S in systems:
                    Q = S.cube_of(start, k)
                    off = (start - Q.start) % N
                    if off + L <= Q.length:
                        d = cube_diameter(grid, Q)
                        if found is None or d < found:
                            found = d
                if found is None:
                    return False, float("inf")
                worst = max(worst, found / r_eff)
    return True, worst


# ---------------------------------------------------------------------------
# rearrangement, median, oscillation


def rearrangement(values: np.ndarray, t: float, N: int) -> float:
    """psi*(t) for node values carrying measure 1/N each (zero elsewhere)."""
    if not t > 0:
        raise DomainError("t must be positive")
    v = np.sort(np.abs(np.asarray(values, dtype=float)))[::-1]
    m = int(np.floor(t * N + 1e-9))
    return float(v[m]) if m < len(v) else 0.0


def median(values: np.ndarray) -> float:
    """Lower middle order statistic."""
    v = np.sort(np.asarray(values, dtype=float))
    return float(v[(len(v) - 1) // 2])


def _osc_sorted(v: np.ndarray, lam: float) -> float:
    n = len(v)
    m = int(np.floor(lam * n + 1e-9))
    keep = n - m
    if keep <= 1:
        return 0.0
    return float(np.min(v[keep - 1:] - v[: n - keep + 1]) / 2.0)


def local_osc(values: np.ndarray, lam: float) -> float:
    """inf_c ((psi - c) 1_Q)^*(lam |Q|) for the node values of psi on Q."""
    if not 0 < lam < 1:
        raise DomainError("lambda must lie in (0, 1)")
    return _osc_sorted(np.sort(np.asarray(values, dtype=float)), lam)


def local_osc_bruteforce(values: np.ndarray, lam: float) -> float:
    v = np.asarray(values, dtype=float)
    n = len(v)
    s = np.sort(v)
    # an optimal c is the midpoint of some pair of values
    cands = ((s[:, None] + s[None, :]) / 2).ravel()
    best = np.inf
    for c in cands:
        dev = np.sort(np.abs(v - c))[::-1]
        m = int(np.floor(lam * n + 1e-9))
        best = min(best, dev[m] if m < n else 0.0)
    return float(best)


def cube_values(psi, Q: DyadicCube) -> np.ndarray:
    samples = psi.samples if isinstance(psi, BoundaryFunction) else np.asarray(psi)
    return np.real(samples[Q.nodes])


class OscillationTable:
    """Per-cube medians and local oscillations of one real function."""

    def __init__(self, system: DyadicSystem, values: np.ndarray, lam: float):
        self.system = system
        self.values = np.asarray(values, dtype=float)
        self.lam = lam
        self._osc: dict = {}
        self._med: dict = {}

    def osc(self, Q: DyadicCube) -> float:
        key = Q.key()
        if key not in self._osc:
            self._osc[key] = local_osc(self.values[Q.nodes], self.lam)
        return self._osc[key]

    def med(self, Q: DyadicCube) -> float:
        key = Q.key()
        if key not in self._med:
            self._med[key] = median(self.values[Q.nodes])
        return self._med[key]

    def sharp_maximal(self, Q0: DyadicCube) -> np.ndarray:
        """m^#_{lam;Q0} at every node of Q0 (other nodes: nan)."""
        out = np.full(self.system.N, np.nan)
        out[Q0.nodes] = 0.0
        for Q in self.system.descendants(Q0):
            idx = Q.nodes
            out[idx] = np.maximum(out[idx], self.osc(Q))
        return out


def sharp_maximal(psi, Q0: DyadicCube, lam: float, node: int, system: DyadicSystem) -> float:
    vals = np.real(psi.samples if isinstance(psi, BoundaryFunction) else np.asarray(psi))
    return max(local_osc(vals[Q.nodes], lam) for Q in system.chain(node, Q0))


# ---------------------------------------------------------------------------
# sparse families


@dataclass
class SparseFamily:
    root: DyadicCube
    layers: list
    exceptional: dict = field(repr=False)

    def cubes(self):
        return [Q for layer in self.layers for Q in layer]

    def sparsity_ok(self) -> bool:
        """Layer disjointness, nesting and the half-measure conditions."""
        for m, layer in enumerate(self.layers):
            for i, A in enumerate(layer):
                for B in layer[i + 1:]:
                    if np.intersect1d(A.nodes, B.nodes).size:
                        return False
            if m + 1 < len(self.layers):
                for Q in self.layers[m + 1]:
                    if not any(P.contains(Q) for P in layer):
                        return False
                for P in layer:
                    covered = sum(Q.length for Q in self.layers[m + 1] if P.contains(Q))
                    if 2 * covered > P.length:
                        return False
                    if 2 * len(self.exceptional[P.key()]) < P.length:
                        return False
        return True

    def to_dict(self) -> dict:
        return {"root": self.root.to_dict(),
                "layers": [[Q.to_dict() for Q in layer] for layer in self.layers]}


def _select_children(system, table, P, threshold):
    """Maximal subcubes of P on which more than half the nodes deviate from
    m_P by more than ``threshold``."""
    bad = np.abs(table.values[P.nodes] - table.med(P)) > threshold
    if not bad.any():
        return []
    bad_full = np.zeros(system.N, dtype=bool)
    bad_full[P.nodes] = bad
    chosen = []
    frontier = system.children(P)
    while frontier:
        nxt = []
        for Q in frontier:
            frac = bad_full[Q.nodes].mean()
            if frac > 0.5:
                chosen.append(Q)
            elif frac > 0:
                nxt.extend(system.children(Q))
        frontier = nxt
    return chosen


def build_sparse_family(psi, Q0: DyadicCube, system: DyadicSystem, eps: float = 0.5,
                        verify: bool = True, slack: float = 1e-9) -> tuple[SparseFamily, np.ndarray]:
    """Lerner-type sparse family for psi in Q0 with oscillation level eps/4.

    Returns the family and the boolean mask (over Q0's nodes order) of nodes
    where the pointwise bound holds.
    """
    vals = np.real(np.asarray(psi.samples if isinstance(psi, BoundaryFunction) else psi, dtype=float))
    lam = eps / 4.0
    table = OscillationTable(system, vals, lam)
    layers = [[Q0]]
    exceptional = {}
    while True:
        nxt = []
        for P in layers[-1]:
            kids = _select_children(system, table, P, 2.0 * table.osc(P))
            nxt.extend(kids)
            covered = np.zeros(system.N, dtype=bool)
            for Q in kids:
                covered[Q.nodes] = True
            exceptional[P.key()] = P.nodes[~covered[P.nodes]]
        if not nxt:
            break
        layers.append(nxt)
    family = SparseFamily(Q0, layers, exceptional)
    holds = lerner_bound_mask(family, table, slack)
    return family, holds


def lerner_rhs(family: SparseFamily, table: OscillationTable) -> np.ndarray:
    rhs = table.sharp_maximal(family.root)
    for Q in family.cubes():
        rhs[Q.nodes] += table.osc(Q)
    return rhs


def lerner_bound_mask(family: SparseFamily, table: OscillationTable, slack: float = 1e-9) -> np.ndarray:
    nodes = family.root.nodes
    lhs = np.abs(table.values[nodes] - table.med(family.root))
    rhs = lerner_rhs(family, table)[nodes]
    return lhs <= rhs + slack


# ---------------------------------------------------------------------------
# Whitney covers and Calderon-Zygmund splitting


@dataclass
class WhitneyCube:
    cube: DyadicCube
    k: int  # generation used for the ball radius (may exceed the system depth)

    @property
    def ell(self) -> float:
        return DELTA**self.k


@dataclass
class WhitneyCover:
    omega: np.ndarray
    R: float
    cubes: list
    overlap: int
    K: float


def whitney_cover(omega_mask: np.ndarray, system: DyadicSystem, R: float) -> WhitneyCover:
    """Maximal cubes Q with R B(Q) inside Omega.

    Below the system's finest generation a single-node cube keeps halving its
    nominal radius until its dilated ball shrinks inside Omega.
    """
    omega_mask = np.asarray(omega_mask, dtype=bool)
    grid = system.grid
    if omega_mask.all():
        raise DomainError("Omega must not be the whole circle")
    if not omega_mask.any():
        return WhitneyCover(omega_mask, R, [], 0, 0.0)

    def fits(center, k):
        return omega_mask[ball_nodes(grid, center, R * system.c_outer * DELTA**k)].all()

    chosen: list[WhitneyCube] = []
    frontier = list(system.generations[0])
    while frontier:
        nxt = []
        for Q in frontier:
            if not omega_mask[Q.nodes].any():
                continue
            if fits(Q.center, Q.generation):
                chosen.append(WhitneyCube(Q, Q.generation))
            elif Q.generation < system.k_max:
                nxt.extend(system.children(Q))
            else:
                # split down to single nodes with virtual generations
                for j in Q.nodes:
                    if not omega_mask[j]:
                        continue
                    k = Q.generation + int(np.log2(Q.length))
                    while not fits(j, k):
                        k += 1
                    chosen.append(WhitneyCube(DyadicCube(system.system, k, j, j, 1, j, grid.N), k))
        frontier = nxt

    counts = np.zeros(grid.N, dtype=int)
    K = 0.0
    outside = ~omega_mask
    for W in chosen:
        counts[ball_nodes(grid, W.cube.center, R * system.c_outer * W.ell)] += 1
        # smallest dilation factor K with K R B(Q) meeting the complement
        d = np.abs(1.0 - grid.nodes[outside] * np.conj(grid.nodes[W.cube.center]))
        K = max(K, float(d.min()) / (R * system.c_outer * W.ell) * (1.0 + 1e-9))
    return WhitneyCover(omega_mask, R, chosen, int(counts.max()), K)


@dataclass
class CZSplit:
    good: BoundaryFunction
    bad: list  # (WhitneyCube, samples of b_k)
    omega: np.ndarray


def cz_split(psi: BoundaryFunction, lam: float, system: DyadicSystem, R: float) -> CZSplit:
    """psi = g + sum_k b_k with Omega_lambda = {M psi > lambda}."""
    M = hl_maximal(psi).samples
    omega = M > lam
    if omega.all():
        raise DomainError("Omega_lambda is the whole circle; increase lambda")
    g = np.array(psi.samples, dtype=complex, copy=True)
    bad = []
    if omega.any():
        cover = whitney_cover(omega, system, R)
        for W in cover.cubes:
            idx = W.cube.nodes
            avg = psi.samples[idx].mean()
            b = np.zeros(psi.N, dtype=complex)
            b[idx] = psi.samples[idx] - avg
            g[idx] = avg
            bad.append((W, b))
    return CZSplit(BoundaryFunction(psi.grid, g), bad, omega)


def dumps_family(family: SparseFamily) -> str:
    return json.dumps(family.to_dict())


def dumps_system(system: DyadicSystem) -> str:
    return json.dumps(system.to_dict())
