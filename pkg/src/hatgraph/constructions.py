"""Constructive strategies: star and code strategies on complete graphs,
extension across a directed union, and the iterated families built from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .digraph import Digraph, complete, directed_union
from .dyadic import DyadicProb
from .game import BLUE, PASS, RED, TeamStrategy, always_blue


class ConstructionError(ValueError):
    pass


def hamming(a: int, b: int) -> int:
    return (a ^ b).bit_count()


@dataclass(frozen=True)
class BinaryCode:
    length: int
    words: frozenset

    def __len__(self):
        return len(self.words)

    def min_distance(self) -> int | None:
        ws = sorted(self.words)
        best = None
        for i, a in enumerate(ws):
            for b in ws[i + 1:]:
                dist = hamming(a, b)
                if best is None or dist < best:
                    best = dist
        return best

    def ball(self, w: int) -> set:
        return {w} | {w ^ (1 << i) for i in range(self.length)}

    def balls_disjoint(self) -> bool:
        seen = set()
        for w in self.words:
            b = self.ball(w)
            if seen & b:
                return False
            seen |= b
        return True

    def covers(self, x: int) -> bool:
        """Whether ``x`` lies within distance one of a codeword."""
        return any(hamming(x, w) <= 1 for w in self.words)


@lru_cache(maxsize=None)
def lexicode(m: int, distance: int = 3) -> BinaryCode:
    """Greedy lexicographic code: keep each word far enough from those kept."""
    if m < 1:
        raise ConstructionError("lexicode needs m >= 1")
    kept = []
    for w in range(1 << m):
        if all(hamming(w, k) >= distance for k in kept):
            kept.append(w)
    return BinaryCode(m, frozenset(kept))


def _drop_bit(w: int, i: int) -> int:
    return (w & ((1 << i) - 1)) | ((w >> (i + 1)) << i)


def star_strategy(m: int) -> TeamStrategy:
    """On ``K_m`` each vertex says Red when it sees only Blue hats, else passes."""
    if m < 1:
        raise ConstructionError("star strategy needs m >= 1")
    row = (RED,) + (PASS,) * ((1 << (m - 1)) - 1)
    return TeamStrategy((row,) * m)


def code_strategy(code: BinaryCode) -> TeamStrategy:
    """Each vertex contradicts the unique codeword consistent with its view."""
    m = code.length
    tables = []
    for i in range(m):
        # the view of x_i is the word with coordinate i removed
        match = {}
        for w in code.words:
            key = _drop_bit(w, i)
            if key in match:
                raise ConstructionError(
                    f"codewords {match[key]:0{m}b} and {w:0{m}b} agree off coordinate {i}; distance < 3"
                )
            match[key] = w
        row = []
        for view in range(1 << (m - 1)):
            w = match.get(view)
            if w is None:
                row.append(PASS)
            else:
                row.append(BLUE if w >> i & 1 else RED)
        tables.append(tuple(row))
    return TeamStrategy(tuple(tables))


@dataclass(frozen=True)
class Trigger:
    """Event on the ``K_m`` coordinates under which the base vertices pass."""

    m: int
    code: BinaryCode

    def __call__(self, w: int) -> bool:
        return self.code.covers(w)

    @property
    def probability(self) -> Fraction:
        return Fraction(len(self.code) * (self.m + 1), 1 << self.m)


def star_trigger(m: int) -> Trigger:
    """At most one Red hat among the ``m`` clique vertices."""
    return Trigger(m, BinaryCode(m, frozenset({0})))


def code_trigger(code: BinaryCode) -> Trigger:
    return Trigger(code.length, code)


def extend(d: Digraph, s: TeamStrategy, inner: TeamStrategy, trigger: Trigger) -> TeamStrategy:
    """Strategy on ``d -> K_m``.

    Vertices of ``d`` pass whenever the trigger holds on the clique and
    play ``s`` otherwise; the clique plays ``inner``.
    """
    m = inner.n
    s.check_shape(d)
    inner.check_shape(complete(m))
    if trigger.m != m:
        raise ConstructionError(f"trigger is on {trigger.m} coordinates, inner strategy on {m}")
    k = complete(m)
    for w in range(1 << m):
        someone_guesses = False
        for i in range(m):
            view = _drop_bit(w, i)
            if inner.tables[i][view] != PASS:
                someone_guesses = True
                break
        if someone_guesses != trigger(w):
            raise ConstructionError(
                f"trigger disagrees with the inner strategy at clique configuration {w:0{m}b}"
            )
    fired = [trigger(w) for w in range(1 << m)]
    tables = []
    for v in d.vertices():
        dv = d.out_degree(v)
        old = s.tables[v]
        # d's out-neighbours come first, then the clique vertices
        row = []
        for w in range(1 << m):
            if fired[w]:
                row.extend([PASS] * len(old))
            else:
                row.extend(old)
        assert len(row) == 1 << (dv + m)
        tables.append(tuple(row))
    tables.extend(inner.tables)
    result = TeamStrategy(tuple(tables))
    result.check_shape(directed_union(d, k))
    return result


@dataclass(frozen=True)
class PredictedValue:
    c: Fraction
    m: int
    base: DyadicProb
    value: Fraction

    def matches(self, p: DyadicProb) -> bool:
        return p == self.value


def predicted_value(kind: str, m: int, base: DyadicProb, code_size: int | None = None) -> PredictedValue:
    """Value ``c*m/(m+1) + (1-c)*base`` of an extended strategy."""
    if kind == "star":
        size = 1
    elif kind == "code":
        if code_size is None:
            raise ConstructionError("code kind needs the code size")
        size = code_size
    else:
        raise ConstructionError(f"unknown kind {kind!r}")
    c = Fraction(size * (m + 1), 1 << m)
    if c > 1:
        raise ConstructionError(f"c = {c} > 1: {size} radius-one balls cannot pack into 2^{m} words")
    value = c * Fraction(m, m + 1) + (1 - c) * base.to_fraction()
    return PredictedValue(c, m, base, value)


def d_family_strategy(n: int) -> TeamStrategy:
    """Strategy on ``K_1 -> K_2^(->n)`` worth ``2/3 - 4^-n / 6``."""
    if n < 0:
        raise ConstructionError("depth must be >= 0")
    g = complete(1)
    s = always_blue(g)
    inner, trig = star_strategy(2), star_trigger(2)
    for _ in range(n):
        s = extend(g, s, inner, trig)
        g = directed_union(g, complete(2))
    return s


def chain_strategy(m: int, n: int) -> TeamStrategy:
    """Strategy on ``K_m^(->n)`` built from the length-``m`` lexicode."""
    if m < 1 or n < 1:
        raise ConstructionError("chain strategy needs m >= 1 and n >= 1")
    code = lexicode(m)
    inner, trig = code_strategy(code), code_trigger(code)
    g = complete(m)
    s = inner
    for _ in range(n - 1):
        s = extend(g, s, inner, trig)
        g = directed_union(g, complete(m))
    return s


def chain_value(m: int, n: int) -> Fraction:
    """``(1 - (1-c)^n) * m/(m+1)`` with ``c`` from the lexicode packing."""
    c = code_trigger(lexicode(m)).probability
    return (1 - (1 - c) ** n) * Fraction(m, m + 1)
