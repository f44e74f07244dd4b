"""Finite groups backed by dense multiplication tables.

Elements are the integers ``0..n-1``; ``mul[g, h]`` is the index of ``g*h``.
Built-in families use frozen element orderings so that fixtures stay stable:

* ``cyclic(n)``: element ``k`` is the residue ``k mod n``.
* ``dihedral(n)``: ``0..n-1`` are the rotations ``r^k``; ``n+k`` is the
  reflection ``r^k s``.  As maps of ``Z/n`` these are ``x -> x + k`` and
  ``x -> k - x``.
* ``symmetric(k)``: permutations of ``range(k)`` in lexicographic one-line
  order; ``(p*q)(i) = p(q(i))``.
* ``quaternion8()``: ``1, -1, i, -i, j, -j, k, -k``.
* ``direct_product(G, H)``: ``(a, b)`` has index ``a*|H| + b``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator

import numpy as np

from .exceptions import NotAGroup, NotGenerating, NotSymmetric, OrderCapExceeded, ParseError

DEFAULT_ORDER_CAP = 5040


class FiniteGroup:
    """Immutable finite group given by its multiplication table.

    Parameters
    ----------
    mul : array-like of shape (n, n)
        ``mul[g][h]`` is the index of ``g*h``.
    name : str, optional
        Descriptor used in reports (``"cyclic:5"``, ``"table:<hash>"``...).
    validate : bool, default True
        Check the group axioms (including associativity).  Built-in families
        skip this since they are correct by construction.
    """

    def __init__(self, mul, name: str = "group", validate: bool = True):
        table = np.array(mul, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ParseError(f"multiplication table must be square and nonempty, got shape {table.shape}")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise NotAGroup("not-latin-square", f"entries must lie in [0, {n})")
        self.order = n
        self.name = name
        self.identity = _find_identity(table)
        self.inv = _find_inverses(table, self.identity)
        if validate:
            _check_latin(table)
            _check_associative(table)
        table.setflags(write=False)
        self.inv.setflags(write=False)
        self.mul = table

    def __repr__(self):
        return f"FiniteGroup(name={self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    # -- element arithmetic ------------------------------------------------

    def product(self, *elements: int) -> int:
        out = self.identity
        for g in elements:
            out = int(self.mul[out, g])
        return out

    def inverse(self, g: int) -> int:
        return int(self.inv[g])

    def conjugate(self, g: int, x: int) -> int:
        """Return ``x g x^-1``."""
        return int(self.mul[self.mul[x, g], self.inv[x]])

    def commutator(self, a: int, b: int) -> int:
        return int(self.mul[self.mul[a, b], self.mul[self.inv[a], self.inv[b]]])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = int(self.mul[x, g])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def center(self) -> ElementSet:
        return self.element_set(g for g in range(self.order) if np.array_equal(self.mul[g, :], self.mul[:, g]))

    def conjugacy_class(self, g: int) -> ElementSet:
        return self.element_set(self.conjugate(g, x) for x in range(self.order))

    # -- sets and subgroups ------------------------------------------------

    def element_set(self, members: Iterable[int]) -> ElementSet:
        return ElementSet(self, members)

    def subgroup_closure(self, seed: Iterable[int]) -> ElementSet:
        """Smallest subgroup containing ``seed`` (``{e}`` for an empty seed)."""
        gens = sorted({int(s) for s in seed})
        gens = sorted(set(gens) | {int(self.inv[s]) for s in gens})
        member = np.zeros(self.order, dtype=bool)
        member[self.identity] = True
        work = [self.identity]
        while work:
            x = work.pop()
            for s in gens:
                y = int(self.mul[x, s])
                if not member[y]:
                    member[y] = True
                    work.append(y)
        return ElementSet(self, np.flatnonzero(member).tolist())

    def generates(self, subset: Iterable[int]) -> bool:
        return len(self.subgroup_closure(subset)) == self.order

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        members = sorted(set(int(x) for x in subset))
        if not members:
            return False
        idx = np.array(members)
        inside = np.zeros(self.order, dtype=bool)
        inside[idx] = True
        return bool(inside[self.mul[np.ix_(idx, idx)]].all() and inside[self.inv[idx]].all())

    def index_two_subgroups(self) -> list[ElementSet]:
        """All subgroups of index two, sorted by member sequence.

        Such subgroups are kernels of surjections onto ``Z/2``, i.e. preimages
        of hyperplanes of the elementary abelian 2-group ``G/N`` where ``N`` is
        generated by all squares and commutators.
        """
        n = self.order
        if n % 2:
            return []
        squares = np.diag(self.mul)
        inv_pairs = self.mul[self.inv[:, None], self.inv[None, :]]
        comms = self.mul[self.mul, inv_pairs]
        kernel = self.subgroup_closure(np.union1d(squares, comms).tolist())
        if len(kernel) == n:
            return []
        # Pick a basis b_1..b_k of G/N greedily, tracking each element's coordinates.
        coords = np.full(n, -1, dtype=np.int64)
        coords[list(kernel)] = 0
        span = list(kernel)
        rank = 0
        while len(span) < n:
            b = int(np.flatnonzero(coords < 0)[0])
            bit = 1 << rank
            new = []
            for x in span:
                y = int(self.mul[x, b])
                coords[y] = coords[x] | bit
                new.append(y)
            span.extend(new)
            rank += 1
        out = []
        for functional in range(1, 1 << rank):
            parity = np.array([bin(int(c) & functional).count("1") % 2 for c in coords])
            out.append(ElementSet(self, np.flatnonzero(parity == 0).tolist()))
        return sorted(out, key=lambda h: h.members)

    def minimal_generating_check(self, subset: Iterable[int]) -> bool:
        """True iff no nonempty proper symmetric subset of ``subset`` generates G.

        It is enough to test the maximal candidates ``S - {s, s^-1}``.
        """
        s_set = set(int(x) for x in subset)
        for s in sorted(s_set):
            if int(self.inv[s]) not in s_set:
                raise NotSymmetric(f"{s} is in the set but its inverse {int(self.inv[s])} is not", witness=s)
        if not self.generates(s_set):
            raise NotGenerating(f"set {sorted(s_set)} does not generate the group")
        for s in sorted(s_set):
            rest = s_set - {s, int(self.inv[s])}
            if rest and self.generates(rest):
                return False
        return True


class ElementSet:
    """Sorted, duplicate-free set of element indices of one group."""

    __slots__ = ("group", "members")

    def __init__(self, group: FiniteGroup, members: Iterable[int]):
        ms = tuple(sorted({int(m) for m in members}))
        if ms and (ms[0] < 0 or ms[-1] >= group.order):
            raise ValueError(f"element indices must lie in [0, {group.order})")
        self.group = group
        self.members = ms

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in set(self.members)

    def __eq__(self, other):
        if isinstance(other, ElementSet):
            return self.group is other.group and self.members == other.members
        if isinstance(other, (list, tuple, set, frozenset)):
            return set(self.members) == set(other) and len(self.members) == len(set(other))
        return NotImplemented

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"ElementSet({list(self.members)})"

    def as_mask(self) -> np.ndarray:
        m = np.zeros(self.group.order, dtype=bool)
        m[list(self.members)] = True
        return m


# -- table validation -----------------------------------------------------


def _find_identity(table: np.ndarray) -> int:
    ar = np.arange(table.shape[0])
    for e in range(table.shape[0]):
        if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar):
            return e
    raise NotAGroup("no-identity")


def _find_inverses(table: np.ndarray, e: int) -> np.ndarray:
    n = table.shape[0]
    inv = np.empty(n, dtype=np.int64)
    for g in range(n):
        cands = np.flatnonzero((table[g] == e) & (table[:, g] == e))
        if cands.size == 0:
            raise NotAGroup("missing-inverse", f"element {g} has no two-sided inverse")
        inv[g] = cands[0]
    return inv


def _check_latin(table: np.ndarray) -> None:
    n = table.shape[0]
    target = np.arange(n)
    if not (np.sort(table, axis=1) == target).all() or not (np.sort(table, axis=0) == target[:, None]).all():
        raise NotAGroup("not-latin-square")


def _check_associative(table: np.ndarray) -> None:
    for a in range(table.shape[0]):
        # row a of (ab)c vs a(bc), indexed by (b, c)
        left = table[table[a]]
        right = table[a][table]
        if not np.array_equal(left, right):
            b, c = map(int, np.argwhere(left != right)[0])
            raise NotAGroup("non-associative", f"({a}*{b})*{c} != {a}*({b}*{c})")


# -- built-in families ----------------------------------------------------


def _check_cap(order: int, cap: int) -> None:
    if order > cap:
        raise OrderCapExceeded(order, cap)


def from_mul_table(table, name: str = "table") -> FiniteGroup:
    return FiniteGroup(table, name=name, validate=True)


def cyclic(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    _check_cap(n, cap)
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, name=f"cyclic:{n}", validate=False)


def dihedral(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dihedral group of order ``2n``."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    _check_cap(2 * n, cap)
    table = np.empty((2 * n, 2 * n), dtype=np.int64)
    for g in range(2 * n):
        a, e = g % n, g // n
        for h in range(2 * n):
            b, f = h % n, h // n
            # x -> (-1)^e x + a composed after x -> (-1)^f x + b
            table[g, h] = (a + (b if e == 0 else -b)) % n + n * (e ^ f)
    return FiniteGroup(table, name=f"dihedral:{n}", validate=False)


def symmetric(k: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if k < 1:
        raise ValueError("symmetric group needs k >= 1")
    _check_cap(math.factorial(k), cap)
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = np.empty((len(perms), len(perms)), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[t]] for t in range(k))]
    return FiniteGroup(table, name=f"symmetric:{k}", validate=False)


# unit products for 1, i, j, k as (sign, unit)
_QUAT = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion8() -> FiniteGroup:
    def decode(i):
        return (-1 if i % 2 else 1), i // 2

    table = np.empty((8, 8), dtype=np.int64)
    for i in range(8):
        si, ui = decode(i)
        for j in range(8):
            sj, uj = decode(j)
            sign, unit = _QUAT[ui, uj]
            sign *= si * sj
            table[i, j] = 2 * unit + (1 if sign < 0 else 0)
    return FiniteGroup(table, name="quaternion8", validate=False)


def direct_product(g1: FiniteGroup, g2: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    n1, n2 = g1.order, g2.order
    _check_cap(n1 * n2, cap)
    a = np.arange(n1 * n2)
    table = g1.mul[(a // n2)[:, None], (a // n2)[None, :]] * n2 + g2.mul[(a % n2)[:, None], (a % n2)[None, :]]
    return FiniteGroup(table, name=f"product:{g1.name}+{g2.name}", validate=False)


def parse_family(spec: str, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from ``NAME:PARAMS``.

    Accepted forms: ``cyclic:N``, ``dihedral:N``, ``symmetric:K``,
    ``quaternion8`` and ``product:A+B`` where A and B are themselves specs.
    """
    spec = spec.strip()
    name, _, params = spec.partition(":")
    try:
        if name == "quaternion8" and not params:
            return quaternion8()
        if name == "product":
            left, plus, right = params.partition("+")
            if not plus:
                raise ParseError(f"product spec needs two factors joined by '+': {spec!r}")
            return direct_product(parse_family(left, cap), parse_family(right, cap), cap)
        builders = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}
        if name not in builders:
            raise ParseError(f"unknown group family {name!r}")
        return builders[name](int(params), cap=cap)
    except ValueError as exc:
        if isinstance(exc, (ParseError, OrderCapExceeded)):
            raise
        raise ParseError(f"bad family spec {spec!r}: {exc}") from exc
