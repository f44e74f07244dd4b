"""Cayley graphs, Cayley sum graphs and the pair multigraph as integer count matrices.

A loop unit at ``v`` adds exactly one to the row sum of ``v``, so every
builder returns a ``d``-regular matrix and ``counts / d`` is row-stochastic.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ContainsIdentity, NotConjugationClosed, NotGenerating, NotSymmetric, ValidationError
from .groups import ElementSet, FiniteGroup

KINDS = ("cayley", "cayley_sum", "pair_multigraph")


@dataclass(frozen=True)
class GeneratingSet:
    """A symmetric, identity-free generating set together with its structural flags."""

    elements: ElementSet
    symmetric: bool
    identity_free: bool
    conjugation_closed: bool
    generates: bool
    minimal: bool

    @property
    def group(self) -> FiniteGroup:
        return self.elements.group

    @property
    def d(self) -> int:
        return len(self.elements)

    @property
    def members(self) -> tuple[int, ...]:
        return self.elements.members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def set_flags(group: FiniteGroup, subset: Iterable[int]) -> dict:
    """Compute every structural flag of ``subset`` without raising."""
    s = group.element_set(subset)
    members = set(s.members)
    symmetric = all(group.inverse(x) in members for x in members)
    generates = group.generates(members)
    return {
        "symmetric": symmetric,
        "identity_free": group.identity not in members,
        "conjugation_closed": _conjugation_witness(group, members) is None,
        "generates": generates,
        "minimal": bool(symmetric and generates and group.minimal_generating_check(members)),
    }


def _conjugation_witness(group: FiniteGroup, members: set[int]):
    for s in sorted(members):
        for x in range(group.order):
            c = group.conjugate(s, x)
            if c not in members:
                return s, x, c
    return None


def validate(group: FiniteGroup, subset: Iterable[int], require_conjugation_closed: bool = False) -> GeneratingSet:
    """Check ``subset`` and return it as a :class:`GeneratingSet`.

    Raises
    ------
    NotSymmetric, ContainsIdentity, NotConjugationClosed, NotGenerating
        In that order of precedence; ``witness`` carries the offending element.
    """
    if isinstance(subset, GeneratingSet):
        subset = subset.members
    s = group.element_set(subset)
    members = set(s.members)
    for x in s.members:
        if group.inverse(x) not in members:
            raise NotSymmetric(f"{x} is in S but its inverse {group.inverse(x)} is not", witness=x)
    if group.identity in members:
        raise ContainsIdentity(f"S contains the identity {group.identity}", witness=group.identity)
    bad = _conjugation_witness(group, members)
    if require_conjugation_closed and bad is not None:
        g, x, c = bad
        raise NotConjugationClosed(f"conjugating {g} by {x} gives {c}, which is not in S", witness=g)
    closure = group.subgroup_closure(members)
    if len(closure) != group.order:
        raise NotGenerating(f"S generates a subgroup of order {len(closure)} < {group.order}", witness=len(closure))
    return GeneratingSet(
        elements=s,
        symmetric=True,
        identity_free=True,
        conjugation_closed=bad is None,
        generates=True,
        minimal=group.minimal_generating_check(members),
    )


@dataclass(frozen=True, eq=False)
class CountGraph:
    """Undirected ``d``-regular multigraph stored as a symmetric count matrix."""

    n: int
    d: int
    counts: np.ndarray = field(repr=False)
    kind: str

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64)
        if c.shape != (self.n, self.n):
            raise ValueError(f"counts must be {self.n}x{self.n}, got {c.shape}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown graph kind {self.kind!r}")
        if (c < 0).any() or (c > self.d).any():
            raise ValueError("counts must lie in [0, d]")
        if not np.array_equal(c, c.T):
            i, j = map(int, np.argwhere(c != c.T)[0])
            raise ValidationError(f"count matrix is not symmetric at ({i}, {j})", witness=(i, j))
        if not (c.sum(axis=1) == self.d).all():
            raise ValueError("every row of counts must sum to d")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    def __eq__(self, other):
        if not isinstance(other, CountGraph):
            return NotImplemented
        return (self.n, self.d, self.kind) == (other.n, other.d, other.kind) and np.array_equal(
            self.counts, other.counts
        )

    __hash__ = None

    @property
    def has_loops(self) -> bool:
        return bool(np.diag(self.counts).any())

    def neighbours(self, v: int) -> list[int]:
        return [int(u) for u in np.flatnonzero(self.counts[v]) if u != v]


@dataclass(frozen=True, eq=False)
class NormalizedOperator:
    n: int
    entries: np.ndarray = field(repr=False)


def _as_generating_set(group, subset, conj):
    if isinstance(subset, GeneratingSet) and (subset.conjugation_closed or not conj):
        return subset
    return validate(group, subset, require_conjugation_closed=conj)


def build_cayley(group: FiniteGroup, subset) -> CountGraph:
    """Cayley graph: ``g`` is joined to ``g*s`` for every ``s`` in S."""
    s = _as_generating_set(group, subset, conj=False)
    n = group.order
    counts = np.zeros((n, n), dtype=np.int64)
    rows = np.repeat(np.arange(n), s.d)
    cols = group.mul[:, list(s.members)].ravel()
    np.add.at(counts, (rows, cols), 1)
    return CountGraph(n, s.d, counts, "cayley")


def sum_relation_counts(group: FiniteGroup, subset: Iterable[int]) -> np.ndarray:
    """Raw directed relation ``g -> g^-1 s`` (no validation, possibly asymmetric).

    Entry ``[g, h]`` is 1 iff ``g*h`` lies in the set.
    """
    inside = np.zeros(group.order, dtype=bool)
    inside[list(group.element_set(subset).members)] = True
    return inside[group.mul].astype(np.int64)


def build_cayley_sum(group: FiniteGroup, subset) -> CountGraph:
    """Cayley sum graph: ``g`` is joined to ``g^-1 s``; a loop when ``g*g`` is in S."""
    s = _as_generating_set(group, subset, conj=True)
    return CountGraph(group.order, s.d, sum_relation_counts(group, s.members), "cayley_sum")


def build_pair_multigraph(group: FiniteGroup, subset) -> CountGraph:
    """Multigraph with one edge ``g -- s g t`` per ordered pair ``(s, t)``."""
    s = _as_generating_set(group, subset, conj=True)
    n = group.order
    members = np.array(s.members, dtype=np.int64)
    # left[s, g] = s*g, then right-multiply by every t
    left = group.mul[members][:, np.arange(n)]
    targets = group.mul[left[:, :, None], members[None, None, :]]  # (s, g, t)
    counts = np.zeros((n, n), dtype=np.int64)
    rows = np.broadcast_to(np.arange(n)[None, :, None], targets.shape).ravel()
    np.add.at(counts, (rows, targets.ravel()), 1)
    return CountGraph(n, s.d * s.d, counts, "pair_multigraph")


def normalized(graph: CountGraph) -> NormalizedOperator:
    if graph.d == 0:
        # only the trivial group has an empty generating set
        return NormalizedOperator(graph.n, np.eye(graph.n))
    return NormalizedOperator(graph.n, graph.counts / graph.d)


def is_connected_bfs(graph: CountGraph) -> bool:
    return len(_bfs_component(graph, 0)) == graph.n


def _bfs_component(graph, start):
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in graph.neighbours(v):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def is_bipartite_bfs(graph: CountGraph) -> bool:
    """Two-colouring by breadth-first search; any loop makes a graph non-bipartite."""
    if graph.has_loops:
        return False
    colour = [-1] * graph.n
    for root in range(graph.n):
        if colour[root] >= 0:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in graph.neighbours(v):
                if colour[u] < 0:
                    colour[u] = 1 - colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return False
    return True
