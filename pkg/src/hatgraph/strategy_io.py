"""Strategy and code text formats.

Strategy lines are ``<v> <view> <B|R|P>``; ``view`` spells the colours of
``v``'s out-neighbours in ascending order (``-`` when ``v`` sees nobody).
Missing entries mean Pass.
"""

from __future__ import annotations

from pathlib import Path

from .digraph import Digraph
from .game import Guess, PASS, TeamStrategy
from .graph_io import FormatError

_LETTER = {"B": Guess.BLUE, "R": Guess.RED, "P": Guess.PASS}


def view_string(view: int, width: int) -> str:
    if width == 0:
        return "-"
    return "".join("R" if view >> j & 1 else "B" for j in range(width))


def parse_view(text: str, width: int) -> int:
    if text == "-":
        text = ""
    if len(text) != width or any(ch not in "BR" for ch in text):
        raise ValueError(f"view {text or '-'!r} is not a B/R string of length {width}")
    return sum(1 << j for j, ch in enumerate(text) if ch == "R")


def parse_strategy(text: str, d: Digraph) -> TeamStrategy:
    tables = [[PASS] * (1 << d.out_degree(v)) for v in d.vertices()]
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"expected '<v> <view> <B|R|P>', got {line!r}", lineno)
        vs, vw, gs = parts
        if not vs.isdigit() or int(vs) >= d.n:
            raise FormatError(f"unknown vertex {vs!r}", lineno)
        v = int(vs)
        try:
            view = parse_view(vw, d.out_degree(v))
        except ValueError as exc:
            raise FormatError(f"vertex {v}: {exc}", lineno) from None
        if gs not in _LETTER:
            raise FormatError(f"guess must be B, R or P, got {gs!r}", lineno)
        g = _LETTER[gs]
        if seen.get((v, view), g) != g:
            raise FormatError(f"conflicting guesses for vertex {v} view {vw}", lineno)
        seen[(v, view)] = g
        tables[v][view] = g
    return TeamStrategy(tuple(map(tuple, tables)))


def format_strategy(s: TeamStrategy) -> str:
    rows = []
    for v, t in enumerate(s.tables):
        width = len(t).bit_length() - 1
        for view, g in enumerate(t):
            if g != PASS:
                rows.append((v, view_string(view, width), g.letter))
    rows.sort()
    return "".join(f"{v} {vw} {g}\n" for v, vw, g in rows)


def read_strategy(path, d: Digraph) -> TeamStrategy:
    return parse_strategy(Path(path).read_text(encoding="utf-8"), d)


def write_strategy(s: TeamStrategy, path) -> None:
    Path(path).write_text(format_strategy(s), encoding="utf-8")


def format_code(words, length: int) -> str:
    """One word per line, most significant bit first."""
    return "".join(format(w, f"0{length}b") + "\n" for w in sorted(words))


def parse_code(text: str) -> tuple:
    words = []
    length = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if any(ch not in "01" for ch in line):
            raise FormatError(f"code word {line!r} is not binary", lineno)
        if length is None:
            length = len(line)
        elif len(line) != length:
            raise FormatError(f"code word {line!r} has length {len(line)}, expected {length}", lineno)
        words.append(int(line, 2))
    if length is None:
        raise FormatError("empty code")
    return length, frozenset(words)
