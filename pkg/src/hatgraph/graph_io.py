"""Line-based graph text format and DOT export.

Format::

    # comment
    digraph 3
    0 -> 1
    1 -- 2

``u -> v`` is a single arc, ``u -- v`` both arcs.
"""

from __future__ import annotations

import re
from pathlib import Path

from .digraph import Digraph, GraphError, from_arcs


class FormatError(ValueError):
    """Malformed graph, strategy or code text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_HEADER = re.compile(r"^digraph\s+(\d+)$")
_ITEM = re.compile(r"^(\d+)\s*(->|--)\s*(\d+)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_graph(text: str) -> Digraph:
    n = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if n is None:
            m = _HEADER.match(line)
            if not m:
                raise FormatError(f"expected 'digraph <n>', got {line!r}", lineno)
            n = int(m.group(1))
            continue
        m = _ITEM.match(line)
        if not m:
            raise FormatError(f"expected '<u> -> <v>' or '<u> -- <v>', got {line!r}", lineno)
        u, op, v = int(m.group(1)), m.group(2), int(m.group(3))
        for w in (u, v):
            if w >= n:
                raise FormatError(f"vertex {w} out of range for digraph {n}", lineno)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", lineno)
        arcs.append((u, v))
        if op == "--":
            arcs.append((v, u))
    if n is None:
        raise FormatError("missing 'digraph <n>' header")
    try:
        return from_arcs(n, arcs)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def format_graph(d: Digraph) -> str:
    items = []
    for u, v in d.arcs:
        if (v, u) in d.arcs:
            if u < v:
                items.append((u, "--", v))
        else:
            items.append((u, "->", v))
    items.sort(key=lambda t: (t[0], t[2], t[1]))
    lines = [f"digraph {d.n}"]
    lines += [f"{u} {op} {v}" for u, op, v in items]
    return "\n".join(lines) + "\n"


def to_dot(d: Digraph, name: str = "") -> str:
    head = f"digraph {name} {{" if name else "digraph {"
    lines = [head]
    for v in range(d.n):
        lines.append(f"  {v};")
    for u, v in d.sorted_arcs():
        if (v, u) in d.arcs:
            if u < v:
                lines.append(f"  {u} -> {v} [dir=both];")
        else:
            lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_graph(path) -> Digraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(d: Digraph, path) -> None:
    Path(path).write_text(format_graph(d), encoding="utf-8")
