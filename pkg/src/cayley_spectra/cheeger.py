"""Vertex and edge Cheeger constants, exact and by spectral sweep.

Exact values come from enumerating every vertex subset in Gray-code order,
so each step flips one vertex and the boundary sizes are updated in O(deg).
Values are :class:`fractions.Fraction`; ties are broken towards the
lexicographically smallest sorted member sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numba
import numpy as np

from .exceptions import Disconnected, TooLarge
from .graphs import CountGraph, is_connected_bfs

DEFAULT_EXACT_CAP = 24

VERTEX = "vertex"
EDGE = "edge"


@dataclass(frozen=True)
class CutWitness:
    subset: tuple[int, ...]
    value: Fraction
    kind: str
    method: str


def vertex_boundary(graph: CountGraph, subset) -> list[int]:
    """Vertices outside ``subset`` adjacent to some vertex inside it."""
    inside = np.zeros(graph.n, dtype=bool)
    inside[list(subset)] = True
    touched = graph.counts[:, inside].sum(axis=1) > 0
    return np.flatnonzero(touched & ~inside).tolist()


def edge_boundary_count(graph: CountGraph, subset) -> int:
    inside = np.zeros(graph.n, dtype=bool)
    inside[list(subset)] = True
    return int(graph.counts[np.ix_(inside, ~inside)].sum())


def vertex_ratio(graph: CountGraph, subset) -> Fraction:
    return Fraction(len(vertex_boundary(graph, subset)), len(set(subset)))


def edge_ratio(graph: CountGraph, subset) -> Fraction:
    return Fraction(edge_boundary_count(graph, subset), graph.d * len(set(subset)))


def _adjacency_lists(graph: CountGraph):
    n = graph.n
    width = max(1, max(len(graph.neighbours(v)) for v in range(n)))
    nbr = np.full((n, width), -1, dtype=np.int64)
    wt = np.zeros((n, width), dtype=np.int64)
    for v in range(n):
        for k, u in enumerate(graph.neighbours(v)):
            nbr[v, k] = u
            wt[v, k] = graph.counts[v, u]
    return nbr, wt, np.diag(graph.counts).astype(np.int64)


@numba.njit(cache=True)
def _lex_less(a, b):
    """Sorted-member-sequence order on bitmasks."""
    diff = a ^ b
    if diff == 0:
        return False
    low = diff & -diff
    above = ~((low << 1) - 1)
    if a & low:
        # a has the smaller element unless b stops before it
        return (b & above) != 0
    return (a & above) == 0


@numba.njit(cache=True, nogil=True)
def _gray_scan(n, d, nbr, wt, loops):
    """Minimise |boundary|/|V1| and cut/(d|V1|) over 1 <= |V1| <= n/2."""
    inside = np.zeros(n, dtype=np.bool_)
    touch = np.zeros(n, dtype=np.int64)  # edges from V1 into v, loops excluded
    mask = 0
    size = 0
    boundary = 0
    cut = 0
    best_vb, best_vs, best_vm = -1, 1, 0
    best_eb, best_es, best_em = -1, 1, 0
    total = 1 << n
    for i in range(1, total):
        u = 0
        t = i
        while (t & 1) == 0:
            t >>= 1
            u += 1
        if not inside[u]:
            if touch[u] > 0:
                boundary -= 1
            cut += d - loops[u] - 2 * touch[u]
            inside[u] = True
            size += 1
            for k in range(nbr.shape[1]):
                v = nbr[u, k]
                if v < 0:
                    break
                if touch[v] == 0 and not inside[v]:
                    boundary += 1
                touch[v] += wt[u, k]
        else:
            inside[u] = False
            size -= 1
            cut -= d - loops[u] - 2 * touch[u]
            if touch[u] > 0:
                boundary += 1
            for k in range(nbr.shape[1]):
                v = nbr[u, k]
                if v < 0:
                    break
                touch[v] -= wt[u, k]
                if touch[v] == 0 and not inside[v]:
                    boundary -= 1
        mask ^= 1 << u
        if size == 0 or 2 * size > n:
            continue
        lhs = boundary * best_vs
        rhs = best_vb * size
        if best_vb < 0 or lhs < rhs or (lhs == rhs and _lex_less(mask, best_vm)):
            best_vb, best_vs, best_vm = boundary, size, mask
        lhs = cut * best_es
        rhs = best_eb * size
        if best_eb < 0 or lhs < rhs or (lhs == rhs and _lex_less(mask, best_em)):
            best_eb, best_es, best_em = cut, size, mask
    return best_vb, best_vs, best_vm, best_eb, best_es, best_em


def _members(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def cheeger_exact(
    graph: CountGraph, cap: int = DEFAULT_EXACT_CAP, require_connected: bool = True
) -> tuple[CutWitness, CutWitness]:
    """Exact ``(vertex, edge)`` Cheeger witnesses from a single Gray-code pass.

    With ``require_connected=False`` a disconnected graph yields value 0.
    """
    if graph.n > cap:
        raise TooLarge(graph.n, cap)
    if graph.n > 62:
        raise TooLarge(graph.n, 62)
    if require_connected and not is_connected_bfs(graph):
        raise Disconnected("Cheeger constants are only computed for connected graphs")
    if graph.n < 2:
        raise Disconnected("a single vertex has no admissible cut")
    nbr, wt, loops = _adjacency_lists(graph)
    vb, vs, vm, eb, es, em = _gray_scan(graph.n, graph.d, nbr, wt, loops)
    vertex = CutWitness(_members(int(vm)), Fraction(int(vb), int(vs)), VERTEX, "exact")
    edge = CutWitness(_members(int(em)), Fraction(int(eb), graph.d * int(es)), EDGE, "exact")
    return vertex, edge


def vertex_cheeger_exact(graph: CountGraph, cap: int = DEFAULT_EXACT_CAP) -> CutWitness:
    return cheeger_exact(graph, cap)[0]


def edge_cheeger_exact(graph: CountGraph, cap: int = DEFAULT_EXACT_CAP) -> CutWitness:
    return cheeger_exact(graph, cap)[1]


def expander_epsilon(graph: CountGraph, cap: int = DEFAULT_EXACT_CAP) -> Fraction:
    """Largest ``eps`` for which the graph is an eps-expander, i.e. its vertex Cheeger constant."""
    return vertex_cheeger_exact(graph, cap).value


def sweep_upper_bound(graph: CountGraph, fiedler, kind: str = EDGE) -> CutWitness:
    """Best prefix cut of the vertices ordered by ``fiedler`` (sizes 1..n/2)."""
    if kind not in (VERTEX, EDGE):
        raise ValueError(f"kind must be {VERTEX!r} or {EDGE!r}")
    order = np.argsort(np.asarray(fiedler, dtype=float), kind="stable")
    ratio = vertex_ratio if kind == VERTEX else edge_ratio
    best = None
    for size in range(1, graph.n // 2 + 1):
        subset = tuple(sorted(int(v) for v in order[:size]))
        value = ratio(graph, subset)
        if best is None or value < best[0] or (value == best[0] and subset < best[1]):
            best = (value, subset)
    if best is None:
        raise Disconnected("a single vertex has no admissible cut")
    return CutWitness(best[1], best[0], kind, "sweep")
