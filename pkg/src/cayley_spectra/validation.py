"""Input coercion helpers in the spirit of ``sklearn.utils.validation``."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np

from .exceptions import ParseError, ValidationError
from .graphs import GeneratingSet
from .groups import DEFAULT_ORDER_CAP, FiniteGroup, from_mul_table, parse_family
from .io import parse_set_spec, read_group_table


def check_group(group, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Accept a FiniteGroup, a family spec (``"cyclic:5"``), a table path or a table array."""
    if isinstance(group, FiniteGroup):
        return group
    if isinstance(group, Path):
        return read_group_table(group)
    if isinstance(group, str):
        return parse_family(group, cap)
    if isinstance(group, (list, tuple, np.ndarray)):
        return from_mul_table(group)
    raise TypeError(f"cannot interpret {type(group).__name__} as a group")


def check_generating_set(group: FiniteGroup, subset) -> tuple[int, ...]:
    """Accept ``"1,4"``, an iterable of indices or a GeneratingSet; returns sorted indices."""
    if isinstance(subset, GeneratingSet):
        return subset.members
    if isinstance(subset, str):
        return parse_set_spec(subset, group)
    try:
        members = sorted({int(x) for x in subset})
    except (TypeError, ValueError) as exc:
        raise ParseError(f"cannot interpret {subset!r} as a set of elements") from exc
    if members and (members[0] < 0 or members[-1] >= group.order):
        raise ParseError(f"elements must lie in [0, {group.order})")
    return tuple(members)


def check_kind(kind: str) -> str:
    if kind not in ("cayley", "cayley_sum"):
        raise ValueError(f"kind must be 'cayley' or 'cayley_sum', got {kind!r}")
    return kind


def check_epsilon(epsilon, h: Fraction) -> Fraction:
    """Default to ``h``; an override must satisfy ``0 < epsilon <= h``."""
    if epsilon is None:
        return h
    try:
        eps = Fraction(epsilon)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot read epsilon {epsilon!r}") from exc
    if not 0 < eps <= h:
        raise ValidationError(f"epsilon override {eps} must lie in (0, h] = (0, {h}]", witness=str(eps))
    return eps
