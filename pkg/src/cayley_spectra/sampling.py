"""Enumeration and seeded random sampling of generating sets.

Symmetric sets are unions of *atoms*: inverse pairs ``{x, x^-1}``, or, when
conjugation closure is required, the union of the conjugacy classes of
``x`` and ``x^-1``.
"""

from __future__ import annotations

import random
from collections.abc import Iterator

from .exceptions import NoValidSet
from .graphs import build_cayley_sum, is_bipartite_bfs
from .groups import FiniteGroup

REQUIREMENTS = ("conjugation_closed", "minimal", "non_bipartite")


def atoms(group: FiniteGroup, conjugation_closed: bool = False) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out = []
    for x in range(group.order):
        if x == group.identity or x in seen:
            continue
        block = {x, group.inverse(x)}
        if conjugation_closed:
            block = set(group.conjugacy_class(x)) | set(group.conjugacy_class(group.inverse(x)))
        seen |= block
        out.append(tuple(sorted(block)))
    return out


def _satisfies(group: FiniteGroup, members, require) -> bool:
    if not group.generates(members):
        return False
    if "minimal" in require and not group.minimal_generating_check(members):
        return False
    if "non_bipartite" in require and is_bipartite_bfs(build_cayley_sum(group, members)):
        return False
    return True


def enumerate_sets(group: FiniteGroup, max_d: int, require=("conjugation_closed",),
                   exact_d: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every symmetric identity-free generating set of size ``<= max_d`` meeting ``require``.

    Yields sorted tuples, ordered by size then lexicographically.
    """
    _check_requirements(require)
    blocks = atoms(group, _needs_conjugation(require))
    found = []

    def extend(start, chosen, size):
        if size and (exact_d is None or size == exact_d):
            members = tuple(sorted(x for b in chosen for x in b))
            if _satisfies(group, members, require):
                found.append(members)
        for i in range(start, len(blocks)):
            if size + len(blocks[i]) <= max_d:
                extend(i + 1, chosen + [blocks[i]], size + len(blocks[i]))

    extend(0, [], 0)
    yield from sorted(found, key=lambda s: (len(s), s))


def gen(group: FiniteGroup, d_target: int, require=(), seed: int = 0, attempts: int = 100) -> tuple[int, ...]:
    """Rejection-sample a generating set of size exactly ``d_target``.

    Each draw is closed under inverses (and conjugation when required)
    before its size is counted, so some targets are unreachable.

    Raises
    ------
    NoValidSet
        After ``attempts`` failed draws.  For groups of order <= 16 the message
        says whether an exhaustive search finds any valid set at all.
    """
    if attempts < 1:
        raise ValueError("attempts must be >= 1")
    _check_requirements(require)
    rng = random.Random(seed)
    blocks = atoms(group, _needs_conjugation(require))
    if d_target <= group.order - 1 and blocks:
        for _ in range(attempts):
            chosen: set[int] = set()
            pool = list(blocks)
            while len(chosen) < d_target and pool:
                block = pool.pop(rng.randrange(len(pool)))
                chosen |= set(block)
            if len(chosen) != d_target:
                continue
            members = tuple(sorted(chosen))
            if _satisfies(group, members, require):
                return members
    msg = f"no valid set of size {d_target} for {group.name} after {attempts} attempts"
    if group.order <= 16:
        feasible = next(enumerate_sets(group, d_target, require, exact_d=d_target), None)
        msg += "; exhaustive search: " + ("a valid set exists" if feasible else "infeasible")
    raise NoValidSet(msg)


def _needs_conjugation(require) -> bool:
    # a sum graph is only undirected for conjugation-closed sets
    return "conjugation_closed" in require or "non_bipartite" in require


def _check_requirements(require):
    bad = set(require) - set(REQUIREMENTS)
    if bad:
        raise ValueError(f"unknown requirement(s) {sorted(bad)}; choose from {REQUIREMENTS}")
