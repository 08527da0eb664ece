"""Exact arc sweeps over all grid-endpoint arcs.

An arc with both endpoints at grid nodes is a run of L consecutive nodes
(mod N), 1 <= L <= N.  Window sums for every run come from one cyclic prefix
sum, so each run costs O(1) and a full sweep O(N^2).
"""

from __future__ import annotations

import numpy as np
from scipy.ndimage import maximum_filter1d

from .functions import BoundaryFunction


def cyclic_prefix(values: np.ndarray) -> np.ndarray:
    """Prefix sums of ``values`` repeated twice, with a leading zero."""
    v = np.asarray(values)
    return np.concatenate([[0.0], np.cumsum(np.concatenate([v, v]))])


def window_sums(prefix: np.ndarray, N: int, L: int) -> np.ndarray:
    """Sums over nodes s..s+L-1 (mod N) for every start s."""
    s = np.arange(N)
    return prefix[s + L] - prefix[s]


def _covering_max(avg: np.ndarray, L: int) -> np.ndarray:
    """out[j] = max over starts s in [j-L+1, j] (cyclic) of avg[s]."""
    if L == 1:
        return avg
    W = maximum_filter1d(avg, size=L, mode="wrap")
    return np.roll(W, L - 1 - L // 2)


def arc_sweep_max(numer: np.ndarray, denom: np.ndarray) -> np.ndarray:
    """For each node, the max over grid arcs containing it of
    sum(numer)/sum(denom) over the arc."""
    N = len(numer)
    pn, pd = cyclic_prefix(numer), cyclic_prefix(denom)
    best = np.full(N, -np.inf)
    for L in range(1, N + 1):
        avg = window_sums(pn, N, L) / window_sums(pd, N, L)
        np.maximum(best, _covering_max(avg, L), out=best)
    return best


def hl_maximal(psi: BoundaryFunction) -> BoundaryFunction:
    """Nonisotropic Hardy-Littlewood maximal function at the grid nodes."""
    a = psi.abs_power_integrand(1.0)
    return BoundaryFunction(psi.grid, arc_sweep_max(a, np.ones_like(a)))


def weighted_maximal(psi: BoundaryFunction, weight) -> BoundaryFunction:
    """M_omega(psi) = sup over arcs B containing the node of omega(B)^{-1} int_B |psi| omega."""
    num = psi.abs_power_integrand(1.0, weight)
    den = weight.cell_values(1.0)
    return BoundaryFunction(psi.grid, arc_sweep_max(num, den))


def hl_maximal_bruteforce(values: np.ndarray) -> np.ndarray:
    """Triple loop over (node, start, length); the oracle for hl_maximal."""
    v = np.abs(np.asarray(values))
    N = len(v)
    out = np.zeros(N)
    for j in range(N):
        best = 0.0
        for L in range(1, N + 1):
            for s in range(j - L + 1, j + 1):
                idx = np.arange(s, s + L) % N
                best = max(best, v[idx].sum() / L)
        out[j] = best
    return out
