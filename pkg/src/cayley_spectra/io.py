"""Plain-text formats for group tables, generating sets and count graphs.

Group table::

    # comment
    n
    row 0: mul[0][0] ... mul[0][n-1]
    ...

Generating set: whitespace- or comma-separated element indices.  Count graph:
a header line ``n d kind`` followed by ``n`` rows of counts.  ``#`` starts a
comment everywhere.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .exceptions import ParseError
from .graphs import CountGraph
from .groups import FiniteGroup, from_mul_table


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def _ints(line: str) -> list[int]:
    try:
        return [int(tok) for tok in line.replace(",", " ").split()]
    except ValueError as exc:
        raise ParseError(f"expected integers, got {line!r}") from exc


def parse_group_table(text: str, name: str | None = None) -> FiniteGroup:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty group table")
    header = _ints(lines[0])
    if len(header) != 1 or header[0] < 1:
        raise ParseError("first line of a group table must be the order n >= 1")
    n = header[0]
    rows = [_ints(line) for line in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"expected {n} rows of {n} entries")
    if name is None:
        name = "table:" + hashlib.sha256(text.encode()).hexdigest()[:12]
    return from_mul_table(rows, name=name)


def read_group_table(path) -> FiniteGroup:
    text = Path(path).read_text()
    return parse_group_table(text, name="table:" + hashlib.sha256(text.encode()).hexdigest()[:12])


def format_group_table(group: FiniteGroup) -> str:
    out = [f"# {group.name}", str(group.order)]
    out += [" ".join(str(int(x)) for x in row) for row in group.mul]
    return "\n".join(out) + "\n"


def parse_set_spec(text: str, group: FiniteGroup | None = None) -> tuple[int, ...]:
    """Parse ``"1,4"``.  A token ``-k`` stands for the inverse of element ``k``."""
    out = []
    for line in _content_lines(text):
        for tok in line.replace(",", " ").split():
            try:
                k = int(tok)
            except ValueError as exc:
                raise ParseError(f"bad element token {tok!r}") from exc
            if tok.startswith("-"):
                if group is None:
                    raise ParseError("inverse tokens need a group")
                k = group.inverse(-k)
            if group is not None and not 0 <= k < group.order:
                raise ParseError(f"element {k} out of range for a group of order {group.order}")
            out.append(k)
    return tuple(sorted(set(out)))


def read_set_file(path, group: FiniteGroup | None = None) -> tuple[int, ...]:
    return parse_set_spec(Path(path).read_text(), group)


def format_count_graph(graph: CountGraph) -> str:
    out = [f"{graph.n} {graph.d} {graph.kind}"]
    out += [" ".join(str(int(x)) for x in row) for row in graph.counts]
    return "\n".join(out) + "\n"


def parse_count_graph(text: str) -> CountGraph:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty count graph")
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError("count graph header must be 'n d kind'")
    try:
        n, d = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ParseError(f"bad count graph header {lines[0]!r}") from exc
    rows = [_ints(line) for line in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"expected {n} rows of {n} counts")
    try:
        return CountGraph(n, d, np.array(rows, dtype=np.int64), head[2])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def reports_to_jsonl(reports) -> str:
    return "".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in reports)
