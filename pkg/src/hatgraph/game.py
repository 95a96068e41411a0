"""Exact semantics of the hat game on a digraph.

Conventions: a configuration is an ``n``-bit integer with bit ``v`` set
when vertex ``v`` wears Red (Blue = 0). The view of ``v`` is a
``d+(v)``-bit integer whose bit ``j`` is the colour of the ``j``-th
smallest out-neighbour.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .digraph import Digraph, skeleton_masks, clique_number
from .dyadic import DyadicProb

CHUNK_BITS = 20


class Guess(enum.IntEnum):
    BLUE = 0
    RED = 1
    PASS = 2

    @property
    def letter(self) -> str:
        return "BRP"[self]


BLUE, RED, PASS = Guess.BLUE, Guess.RED, Guess.PASS


_GUESSES = tuple(Guess)
_GUESS_VALUES = frozenset(_GUESSES)


class StrategyShapeError(ValueError):
    pass


@dataclass(frozen=True)
class View:
    vertex: int
    bits: int
    width: int


def view_of(d: Digraph, c: int, v: int) -> View:
    bits = 0
    nbrs = d.out_neighbors(v)
    for j, w in enumerate(nbrs):
        bits |= ((c >> w) & 1) << j
    return View(v, bits, len(nbrs))


def project(c: int, nbrs: Sequence[int]) -> int:
    bits = 0
    for j, w in enumerate(nbrs):
        bits |= ((c >> w) & 1) << j
    return bits


@dataclass(frozen=True)
class TeamStrategy:
    """One lookup table per vertex, indexed by view bits."""

    tables: tuple

    def __post_init__(self):
        for v, t in enumerate(self.tables):
            if not set(t) <= _GUESS_VALUES:
                raise StrategyShapeError(f"table of vertex {v} holds values outside Blue/Red/Pass")
        tables = tuple(tuple(map(_GUESSES.__getitem__, t)) for t in self.tables)
        for v, t in enumerate(tables):
            if len(t) == 0 or len(t) & (len(t) - 1):
                raise StrategyShapeError(f"table of vertex {v} has {len(t)} entries, not a power of two")
        object.__setattr__(self, "tables", tables)

    @property
    def n(self) -> int:
        return len(self.tables)

    def check_shape(self, d: Digraph) -> None:
        if self.n != d.n:
            raise StrategyShapeError(f"strategy has {self.n} tables but the graph has {d.n} vertices")
        for v, t in enumerate(self.tables):
            if len(t) != 1 << d.out_degree(v):
                raise StrategyShapeError(
                    f"vertex {v}: table has {len(t)} entries, expected 2^{d.out_degree(v)}"
                )

    def guess(self, v: int, view: int) -> Guess:
        return self.tables[v][view]

    def never_guesses(self, v: int) -> bool:
        return all(g == PASS for g in self.tables[v])

    def always_guesses(self, v: int) -> bool:
        return all(g != PASS for g in self.tables[v])

    @classmethod
    def all_pass(cls, d: Digraph) -> "TeamStrategy":
        return cls(tuple((PASS,) * (1 << d.out_degree(v)) for v in d.vertices()))

    @classmethod
    def single_guesser(cls, d: Digraph, v: int, guess: Guess = BLUE) -> "TeamStrategy":
        """``v`` always guesses ``guess``; everybody else passes."""
        tables = [[PASS] * (1 << d.out_degree(w)) for w in d.vertices()]
        tables[v] = [guess] * len(tables[v])
        return cls(tuple(map(tuple, tables)))


def always_blue(d: Digraph) -> TeamStrategy:
    """Vertex 0 always says Blue: wins exactly half the configurations."""
    return TeamStrategy.single_guesser(d, 0, BLUE)


def color_swap(s: TeamStrategy) -> TeamStrategy:
    swap = {BLUE: RED, RED: BLUE, PASS: PASS}
    out = []
    for t in s.tables:
        full = len(t) - 1
        new = [PASS] * len(t)
        for view, g in enumerate(t):
            new[view ^ full] = swap[g]
        out.append(tuple(new))
    return TeamStrategy(tuple(out))


def reindex_table(sub, width: int, positions: Sequence[int]) -> tuple:
    """Table on ``width``-bit views whose entry at ``view`` is ``sub[x]``,
    where bit ``k`` of ``x`` is bit ``positions[k]`` of ``view``."""
    views = np.arange(1 << width, dtype=np.int64)
    idx = np.zeros_like(views)
    for k, j in enumerate(positions):
        idx |= ((views >> j) & 1) << k
    picked = np.asarray(sub, dtype=np.int8)[idx]
    return tuple(map(_GUESSES.__getitem__, picked.tolist()))


def lift(s: TeamStrategy, d: Digraph, kept: Sequence[int]) -> TeamStrategy:
    """Extend a strategy for ``d.induced(kept)`` to ``d``; other vertices pass."""
    kept = sorted(kept)
    if len(kept) == d.n:
        return s
    pos = {v: i for i, v in enumerate(kept)}
    tables = []
    for v in d.vertices():
        width = d.out_degree(v)
        if v not in pos:
            tables.append((PASS,) * (1 << width))
            continue
        # bit positions of kept out-neighbours inside v's full view
        keep_bits = [j for j, w in enumerate(d.out_neighbors(v)) if w in pos]
        tables.append(reindex_table(s.tables[pos[v]], width, keep_bits))
    return TeamStrategy(tuple(tables))


# ---------------------------------------------------------------- evaluation

@dataclass(frozen=True)
class EvalReport:
    n: int
    wins: int
    wrong_losses: int
    silent_losses: int

    @property
    def total(self) -> int:
        return 1 << self.n

    @property
    def probability(self) -> DyadicProb:
        return DyadicProb(self.wins, self.n)

    def counts(self) -> tuple:
        return (self.wins, self.wrong_losses, self.silent_losses)


def _table_arrays(s: TeamStrategy) -> list:
    return [np.asarray(t, dtype=np.int8) for t in s.tables]


def _view_array(configs: np.ndarray, nbrs) -> np.ndarray:
    view = np.zeros_like(configs)
    for j, w in enumerate(nbrs):
        view |= ((configs >> w) & 1) << j
    return view


def _chunk_outcome(d: Digraph, tables: list, start: int, stop: int, per_vertex: bool = False):
    """Correct/wrong flags for configurations ``start..stop-1``."""
    configs = np.arange(start, stop, dtype=np.int64)
    any_correct = np.zeros(len(configs), dtype=bool)
    any_wrong = np.zeros(len(configs), dtype=bool)
    guessing = [] if per_vertex else None
    for v, t in enumerate(tables):
        if (t == PASS).all():
            if per_vertex:
                guessing.append(np.zeros(len(configs), dtype=bool))
            continue
        if len(t) == 1 or (t == t[0]).all():
            g = np.full(len(configs), t[0], dtype=np.int8)
        else:
            g = t[_view_array(configs, d.out_neighbors(v))]
        color = ((configs >> v) & 1).astype(np.int8)
        guesses = g != PASS
        correct = guesses & (g == color)
        any_correct |= correct
        any_wrong |= guesses & ~correct
        if per_vertex:
            guessing.append(guesses)
    return any_correct, any_wrong, guessing


def _chunk_counts(d, tables, start, stop):
    any_correct, any_wrong, _ = _chunk_outcome(d, tables, start, stop)
    wins = int(np.count_nonzero(any_correct & ~any_wrong))
    wrong = int(np.count_nonzero(any_wrong))
    return wins, wrong


def evaluate(d: Digraph, s: TeamStrategy, workers: int = 1) -> EvalReport:
    """Classify all ``2**n`` configurations as win, wrong-guess loss or silent loss."""
    s.check_shape(d)
    total = 1 << d.n
    tables = _table_arrays(s)
    step = 1 << CHUNK_BITS
    ranges = [(a, min(a + step, total)) for a in range(0, total, step)]
    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: _chunk_counts(d, tables, *r), ranges))
    else:
        parts = [_chunk_counts(d, tables, a, b) for a, b in ranges]
    wins = sum(p[0] for p in parts)
    wrong = sum(p[1] for p in parts)
    return EvalReport(d.n, wins, wrong, total - wins - wrong)


def outcomes(d: Digraph, s: TeamStrategy):
    """Per-configuration arrays ``(win, wrong_loss, guessing)`` for small graphs.

    ``guessing[v][c]`` tells whether ``v`` makes a guess at configuration ``c``.
    """
    s.check_shape(d)
    any_correct, any_wrong, guessing = _chunk_outcome(d, _table_arrays(s), 0, 1 << d.n, per_vertex=True)
    return any_correct & ~any_wrong, any_wrong, guessing


# ------------------------------------------------------ bipartite certificate

class CertificateError(AssertionError):
    pass


@dataclass
class BipartiteCertificate:
    """Win/loss bipartite graph: adjacent configurations differ at one guessing vertex.

    ``win_flips[w]`` and ``loss_flips[l]`` are bitmasks of the flipped
    vertices labelling the edges at that configuration.
    """

    n: int
    omega: int
    wins: int
    wrong_losses: int
    win_flips: np.ndarray
    loss_flips: np.ndarray
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def edges(self) -> int:
        return int(sum(int(x).bit_count() for x in self.win_flips[self.win_flips != 0]))

    def win_neighbors(self, w: int) -> list:
        m = int(self.win_flips[w])
        return [(v, w ^ (1 << v)) for v in range(self.n) if m >> v & 1]

    def loss_neighbors(self, l: int) -> list:
        m = int(self.loss_flips[l])
        return [(v, l ^ (1 << v)) for v in range(self.n) if m >> v & 1]

    def check(self) -> None:
        if self.violations:
            raise CertificateError("; ".join(self.violations))


def certify_bound(d: Digraph, s: TeamStrategy) -> BipartiteCertificate:
    win, lost, guessing = outcomes(d, s)
    total = 1 << d.n
    configs = np.arange(total, dtype=np.int64)
    win_flips = np.zeros(total, dtype=np.int64)
    loss_flips = np.zeros(total, dtype=np.int64)
    for v in range(d.n):
        partner = configs ^ (1 << v)
        # v acts identically on c and its v-flip, so guessing at one means both
        edge = win & guessing[v] & lost[partner]
        win_flips[edge] |= 1 << v
        loss_flips[partner[edge]] |= 1 << v

    omega = clique_number(d).size
    adj = skeleton_masks(d)
    violations = []
    bad_right = np.flatnonzero(win & (win_flips == 0))
    if len(bad_right):
        violations.append(f"winning configuration {int(bad_right[0])} has no neighbour in B")
    left_deg = np.zeros(total, dtype=np.int64)
    for v in range(d.n):
        has = (loss_flips >> v) & 1
        left_deg += has
        clash = (has == 1) & ((loss_flips & ~(adj[v] | (1 << v))) != 0)
        if clash.any():
            l = int(np.flatnonzero(clash)[0])
            violations.append(
                f"losing configuration {l}: flipped vertices {int(loss_flips[l]):#b} are not a skeleton clique"
            )
    over = np.flatnonzero(left_deg > omega)
    if len(over):
        violations.append(f"losing configuration {int(over[0])} has degree {int(left_deg[over[0]])} > omega={omega}")
    n_win = int(np.count_nonzero(win))
    n_lost = int(np.count_nonzero(lost))
    if n_win > omega * n_lost:
        violations.append(f"wins {n_win} exceed omega * wrong losses = {omega * n_lost}")
    return BipartiteCertificate(d.n, omega, n_win, n_lost, win_flips, loss_flips, violations)
