"""Hat numbers of small digraphs: constructive lower bounds, the clique
upper bound rounded down to a dyadic, and branch and bound when they differ.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .constructions import code_strategy, code_trigger, extend, lexicode
from .digraph import (
    Digraph,
    clique_number,
    complete,
    directed_union,
    drop_blind,
    iter_cliques,
    max_clique_mask,
    skeleton_masks,
)
from .dyadic import DyadicProb
from .game import BLUE, PASS, RED, Guess, TeamStrategy, always_blue, evaluate, lift, reindex_table

DEFAULT_MAX_NODES = 10**8
DEFAULT_TIME_LIMIT = 60.0
# vertex-deletion candidates in lower_bound are only explored up to this size
SUBGRAPH_SEARCH_LIMIT = 8


class Status(str, enum.Enum):
    PROVEN = "Proven"
    BOUNDS_ONLY = "BoundsOnly"


@dataclass(frozen=True)
class Budget:
    max_nodes: int = DEFAULT_MAX_NODES
    time_limit: float = DEFAULT_TIME_LIMIT


@dataclass
class BoundsReport:
    lower: DyadicProb
    witness: TeamStrategy
    upper: DyadicProb
    omega: int

    @property
    def matched(self) -> bool:
        return self.lower == self.upper


class _Meter:
    """Node and time budget shared by every search inside one ``solve`` call."""

    def __init__(self, budget: Budget):
        self.budget = budget
        self.nodes = 0
        self.start = time.monotonic()
        self.aborted = False

    def tick(self) -> bool:
        """Count a node; true once the budget is spent."""
        self.nodes += 1
        if self.aborted:
            return True
        if self.nodes > self.budget.max_nodes or (
            self.nodes & 0xFFF == 0 and time.monotonic() - self.start > self.budget.time_limit
        ):
            self.aborted = True
        return self.aborted


@dataclass
class SearchStats:
    nodes: int = 0
    seconds: float = 0.0
    exhausted: bool = True


@dataclass
class SolveResult:
    value: DyadicProb
    strategy: TeamStrategy
    status: Status
    stats: SearchStats
    bounds: BoundsReport | None = None
    removed: list = field(default_factory=list)


def upper_bound(d: Digraph) -> DyadicProb:
    """``omega/(omega+1)`` rounded down to a multiple of ``2**-n``."""
    omega = clique_number(d).size
    total = 1 << d.n
    return DyadicProb(total * omega // (omega + 1), d.n)


# ---------------------------------------------------------------- lower bound

def _mask_vertices(mask: int) -> list:
    return [v for v in range(mask.bit_length()) if mask >> v & 1]


def _code_value(m: int) -> Fraction:
    return Fraction(len(lexicode(m)) * m, 1 << m)


def embed(s: TeamStrategy, h: Digraph, d: Digraph, mapping) -> TeamStrategy:
    """Transfer a strategy on ``h`` to ``d`` along an arc-preserving vertex map.

    Vertex ``i`` of ``h`` plays as ``mapping[i]`` in ``d``, ignoring any
    extra hats it sees there; unmapped vertices of ``d`` pass.
    """
    if h == d and list(mapping) == list(d.vertices()):
        return s
    inv = {dv: i for i, dv in enumerate(mapping)}
    tables = []
    for v in d.vertices():
        width = d.out_degree(v)
        if v not in inv:
            tables.append((PASS,) * (1 << width))
            continue
        i = inv[v]
        dpos = {w: j for j, w in enumerate(d.out_neighbors(v))}
        try:
            pos = [dpos[mapping[a]] for a in h.out_neighbors(i)]
        except KeyError:
            raise ValueError(f"arc of h from {i} has no image in d") from None
        tables.append(reindex_table(s.tables[i], width, pos))
    return TeamStrategy(tuple(tables))


class _LowerBounder:
    """Best constructive strategy over vertex subsets, memoised by mask.

    Candidates per subset: one vertex always guessing Blue; a lexicode
    strategy on a skeleton clique; a clique ``X`` watched by every other
    vertex, extended over the best strategy for the rest; and, for small
    subsets, any single-vertex deletion.
    """

    def __init__(self, d: Digraph):
        self.d = d
        self.adj = skeleton_masks(d)
        self.out = [d.out_mask(v) for v in d.vertices()]
        self.memo = {}

    def _ceiling(self, mask: int) -> Fraction:
        sub = self.d.induced(_mask_vertices(mask))
        return upper_bound(sub).to_fraction()

    def best(self, mask: int):
        if mask in self.memo:
            return self.memo[mask]
        k = mask.bit_count()
        if k == 0:
            self.memo[mask] = (Fraction(0), ("empty",))
            return self.memo[mask]
        ceiling = self._ceiling(mask)
        best_val, best_recipe = Fraction(1, 2), ("blue", mask)

        def offer(val, recipe):
            nonlocal best_val, best_recipe
            if val > best_val:
                best_val, best_recipe = val, recipe
            return best_val >= ceiling

        done = best_val >= ceiling
        if not done:
            witness = _mask_vertices(max_clique_mask([self.adj[v] & mask for v in range(self.d.n)], mask))
            for size in range(1, len(witness) + 1):
                c = sum(1 << v for v in witness[:size])
                if offer(_code_value(size), ("code", c)):
                    done = True
                    break
        if not done:
            # a clique of vertices seen by everybody else can sit at the end of a directed union
            seen_by_all = 0
            for x in _mask_vertices(mask):
                if all(self.out[v] >> x & 1 for v in _mask_vertices(mask) if v != x):
                    seen_by_all |= 1 << x
            cliques = sorted(iter_cliques(self.adj, seen_by_all), key=lambda c: (-c.bit_count(), c))
            for x in cliques:
                rest = mask & ~x
                if not rest:
                    continue
                m = x.bit_count()
                c = code_trigger(lexicode(m)).probability
                base, _ = self.best(rest)
                val = c * Fraction(m, m + 1) + (1 - c) * base
                if offer(val, ("union", x, rest)):
                    done = True
                    break
        if not done and 1 < k <= SUBGRAPH_SEARCH_LIMIT:
            for v in _mask_vertices(mask):
                val, _ = self.best(mask & ~(1 << v))
                if offer(val, ("sub", mask & ~(1 << v))):
                    break
        self.memo[mask] = (best_val, best_recipe)
        return self.memo[mask]

    def build(self, mask: int):
        """Strategy on ``d.induced(mask)`` realising the memoised recipe."""
        _, recipe = self.best(mask)
        verts = _mask_vertices(mask)
        sub = self.d.induced(verts)
        kind = recipe[0]
        if kind == "empty":
            return sub, TeamStrategy(())
        if kind == "blue":
            return sub, always_blue(sub)
        if kind == "code":
            cverts = _mask_vertices(recipe[1])
            s = code_strategy(lexicode(len(cverts)))
            return sub, embed(s, complete(len(cverts)), sub, [verts.index(v) for v in cverts])
        if kind == "sub":
            inner_verts = _mask_vertices(recipe[1])
            g, s = self.build(recipe[1])
            return sub, embed(s, g, sub, [verts.index(v) for v in inner_verts])
        if kind == "union":
            x, rest = recipe[1], recipe[2]
            g, s = self.build(rest)
            code = lexicode(x.bit_count())
            s2 = extend(g, s, code_strategy(code), code_trigger(code))
            h = directed_union(g, complete(x.bit_count()))
            mapping = [verts.index(v) for v in _mask_vertices(rest) + _mask_vertices(x)]
            return sub, embed(s2, h, sub, mapping)
        raise AssertionError(kind)


def lower_bound(d: Digraph, workers: int = 1) -> tuple:
    """Best constructive strategy, certified by exact evaluation."""
    lb = _LowerBounder(d)
    full = (1 << d.n) - 1
    predicted, _ = lb.best(full)
    _, s = lb.build(full)
    value = evaluate(d, s, workers=workers).probability
    if value != predicted:
        raise AssertionError(f"constructed strategy evaluates to {value.exact_str()}, predicted {predicted}")
    return value, s


def bounds(d: Digraph, workers: int = 1) -> BoundsReport:
    lower, witness = lower_bound(d, workers=workers)
    return BoundsReport(lower, witness, upper_bound(d), clique_number(d).size)


# ------------------------------------------------------------ branch and bound

class _Search:
    """Depth-first search over (vertex, view) -> guess decisions.

    Sets of configurations are Python ints used as ``2**n``-bit masks. A
    configuration is lost once somebody guesses wrong on it and silent
    once every vertex has passed on it; the optimistic bound counts the
    rest. Counts are in units of configurations, i.e. ``2**-n``.

    Two pruning rules hold for every search order. A vertex that guesses
    on every view caps the value at 1/2, so once the incumbent reaches 1/2
    such tables are skipped. When
    ``forbid_all_pass`` is set the incumbent already covers ``h(d - v)``
    for each ``v``, so a vertex that never guesses cannot help either.
    """

    def __init__(self, d: Digraph, incumbent: int, ceiling: int, meter: _Meter,
                 symmetry: bool = True, forbid_all_pass: bool = False):
        self.d = d
        self.total = 1 << d.n
        self.all = (1 << self.total) - 1
        self.best = incumbent
        self.best_tables = None
        self.ceiling = ceiling
        self.meter = meter
        self.symmetry = symmetry
        self.forbid_all_pass = forbid_all_pass
        self.aborted = False
        self.half = self.total // 2

        self.order = sorted(d.vertices(), key=lambda v: (-d.out_degree(v), v))
        self.view = [[0] * self.total for _ in d.vertices()]
        self.classes = [[0] * (1 << d.out_degree(v)) for v in d.vertices()]
        self.red = [0] * d.n
        for c in range(self.total):
            bit = 1 << c
            for v in d.vertices():
                view = 0
                for j, w in enumerate(d.out_neighbors(v)):
                    view |= ((c >> w) & 1) << j
                self.view[v][c] = view
                self.classes[v][view] |= bit
                if c >> v & 1:
                    self.red[v] |= bit

    def _out_of_budget(self) -> bool:
        self.aborted = self.meter.tick()
        return self.aborted

    def _apply(self, v: int, view: int, g: Guess, correct: int, lost: int):
        cls = self.classes[v][view]
        if g == PASS:
            return correct, lost
        hit = cls & self.red[v] if g == RED else cls & ~self.red[v]
        return correct | hit, lost | (cls & ~hit)

    def _record(self, wins: int, tables) -> None:
        if wins > self.best:
            self.best = wins
            self.best_tables = [list(t) for t in tables]

    def strategy(self) -> TeamStrategy | None:
        if self.best_tables is None:
            return None
        return TeamStrategy(tuple(tuple(PASS if g is None else g for g in t) for t in self.best_tables))


class _VertexOrderSearch(_Search):
    """Tables are filled vertex by vertex (highest out-degree first), views
    ascending, trying Pass, Blue, Red in turn.

    Symmetry: flipping the hat colour of a single vertex ``v`` maps
    strategies to strategies of equal value, swaps Blue and Red in ``v``'s
    own table and only permutes the views of vertices that watch ``v``. All
    tables before the first guess are all-Pass, so that guess may be
    taken to be Blue.
    """

    def run(self):
        d = self.d
        self.decisions = [(v, view) for v in self.order for view in range(1 << d.out_degree(v))]
        self.last_vertex = self.order[-1] if self.order else None
        self.tables = [[None] * (1 << d.out_degree(v)) for v in d.vertices()]
        if self.best < self.ceiling and self.decisions:
            self._dfs(0, 0, 0, 0, False, 0, 0)
        return self.best

    def _dfs(self, i, correct, lost, decided_last, guessed, passes, guesses):
        # passes/guesses count entries of the table currently being filled
        if self._out_of_budget():
            return
        if i == len(self.decisions):
            self._record((correct & ~lost).bit_count(), self.tables)
            return
        v, view = self.decisions[i]
        last_entry = view == len(self.tables[v]) - 1
        if view == 0:
            passes = guesses = 0
        is_last_vertex = v == self.last_vertex
        cls = self.classes[v][view]
        for g in (PASS, BLUE, RED):
            if g == RED and self.symmetry and not guessed:
                continue
            if last_entry:
                if g == PASS and self.forbid_all_pass and guesses == 0:
                    continue
                if g != PASS and passes == 0 and self.best >= self.half:
                    continue
            c2, l2 = self._apply(v, view, g, correct, lost)
            dl = decided_last | cls if is_last_vertex else decided_last
            silent = dl & ~c2 if is_last_vertex else 0
            if (self.all & ~l2 & ~silent).bit_count() <= self.best:
                continue
            self.tables[v][view] = g
            self._dfs(i + 1, c2, l2, dl, guessed or g != PASS,
                      passes + (g == PASS), guesses + (g != PASS))
            if self.aborted or self.best >= self.ceiling:
                break
        self.tables[v][view] = None


class _ConfigOrderSearch(_Search):
    """Branching driven by configurations.

    Take the lowest configuration ``c`` that is neither lost, given up,
    silent, nor already guessed correctly. Either ``c`` is won, with
    ``u`` as the first candidate (in vertex order) that guesses there, so
    earlier candidates pass on their views of ``c`` and ``u`` guesses
    ``c``'s colour; or ``c`` is given up and no longer counted. When no
    such configuration remains, undecided entries become Pass.

    Symmetry: flipping the colours of any set of vertices preserves value
    and acts transitively on configurations, so some optimal strategy
    wins configuration 0 and it is never given up.
    """

    def run(self):
        d = self.d
        self.tables = [[None] * (1 << d.out_degree(v)) for v in d.vertices()]
        self.decided = [0] * d.n
        self.npass = [0] * d.n
        self.nguess = [0] * d.n
        if self.best < self.ceiling and self.total > 1:
            self._dfs(0, 0, 0)
        return self.best

    def _allowed(self, v: int, g: Guess) -> bool:
        if self.npass[v] + self.nguess[v] + 1 < len(self.tables[v]):
            return True
        if g == PASS:
            return not (self.forbid_all_pass and self.nguess[v] == 0)
        return self.npass[v] > 0 or self.best < self.half

    def _set(self, v, view, g):
        self.tables[v][view] = g
        self.decided[v] |= self.classes[v][view]
        if g == PASS:
            self.npass[v] += 1
        else:
            self.nguess[v] += 1

    def _unset(self, v, view):
        g = self.tables[v][view]
        self.tables[v][view] = None
        self.decided[v] &= ~self.classes[v][view]
        if g == PASS:
            self.npass[v] -= 1
        else:
            self.nguess[v] -= 1

    def _dfs(self, correct, lost, given_up):
        if self._out_of_budget():
            return
        pending = self.all & ~correct & ~lost & ~given_up
        everywhere = self.all
        for m in self.decided:
            everywhere &= m
        silent = pending & everywhere
        if (self.all & ~lost & ~given_up & ~silent).bit_count() <= self.best:
            return
        pending &= ~silent
        if not pending:
            self._record((correct & ~lost).bit_count(), self.tables)
            return
        c = (pending & -pending).bit_length() - 1
        passed = []
        for u in self.order:
            view = self.view[u][c]
            if self.tables[u][view] is not None:
                continue
            g = RED if c >> u & 1 else BLUE
            if self._allowed(u, g):
                c2, l2 = self._apply(u, view, g, correct, lost)
                self._set(u, view, g)
                self._dfs(c2, l2, given_up)
                self._unset(u, view)
                if self.aborted or self.best >= self.ceiling:
                    break
            if not self._allowed(u, PASS):
                break
            self._set(u, view, PASS)
            passed.append((u, view))
        for u, view in reversed(passed):
            self._unset(u, view)
        if self.aborted or self.best >= self.ceiling:
            return
        if self.symmetry and not (correct | lost | given_up):
            return
        self._dfs(correct, lost, given_up | (1 << c))


SEARCH_ORDERS = {"config": _ConfigOrderSearch, "vertex": _VertexOrderSearch}


def _search(d: Digraph, incumbent_value: DyadicProb, upper: DyadicProb, meter: _Meter,
            symmetry: bool = True, forbid_all_pass: bool = False, order: str = "config"):
    inc = incumbent_value.numerator << (d.n - incumbent_value.exponent)
    ceil = upper.numerator << (d.n - upper.exponent)
    srch = SEARCH_ORDERS[order](d, inc, ceil, meter, symmetry=symmetry, forbid_all_pass=forbid_all_pass)
    best = srch.run()
    return DyadicProb(best, d.n), srch.strategy(), not srch.aborted


def _solve_reduced(d: Digraph, meter: _Meter, symmetry: bool, workers: int, order: str,
                   memo: dict):
    """``(value, strategy, proven, bounds)`` for a digraph without blind vertices."""
    if d in memo:
        return memo[d]
    rep = bounds(d, workers=workers)
    if rep.matched:
        memo[d] = (rep.lower, rep.witness, True, rep)
        return memo[d]

    incumbent, witness = rep.lower, rep.witness
    # an optimum in which v never guesses is worth exactly h(d - v)
    all_sub_proven = True
    for v in d.vertices():
        sub = d.remove_vertex(v)
        reduced, removed = drop_blind(sub)
        kept = [w for w in range(sub.n) if w not in removed]
        value, strategy, proven, _ = _solve_reduced(reduced, meter, symmetry, workers, order, memo)
        all_sub_proven &= proven
        if value > incumbent:
            incumbent = value
            keep_in_d = [w for w in d.vertices() if w != v]
            witness = lift(lift(strategy, sub, kept), d, keep_in_d)
    if incumbent >= rep.upper:
        memo[d] = (incumbent, witness, True, rep)
        return memo[d]

    value, found, exhausted = _search(d, incumbent, rep.upper, meter, symmetry=symmetry,
                                      forbid_all_pass=all_sub_proven, order=order)
    if found is not None and value > incumbent:
        incumbent, witness = value, found
    memo[d] = (incumbent, witness, exhausted, rep)
    return memo[d]


def solve(d: Digraph, budget: Budget | None = None, symmetry: bool = True, workers: int = 1,
          order: str = "config") -> SolveResult:
    """Hat number of ``d`` with an optimal strategy.

    Blind vertices are removed first; if the bounds then meet the answer
    is immediate, otherwise the search runs within ``budget``, which
    covers the whole call including searches on subgraphs.
    """
    if order not in SEARCH_ORDERS:
        raise ValueError(f"unknown search order {order!r}")
    meter = _Meter(budget or Budget())
    reduced, removed = drop_blind(d)
    kept = [v for v in d.vertices() if v not in removed]
    value, strategy, proven, rep = _solve_reduced(reduced, meter, symmetry, workers, order, {})
    strategy = lift(strategy, d, kept)
    checked = evaluate(d, strategy, workers=workers).probability
    if checked != value:
        raise AssertionError(f"solver strategy evaluates to {checked.exact_str()}, claimed {value.exact_str()}")
    stats = SearchStats(meter.nodes, time.monotonic() - meter.start, proven)
    status = Status.PROVEN if proven else Status.BOUNDS_ONLY
    return SolveResult(value, strategy, status, stats, rep, removed)


def verify_optimal_never_guesser(d: Digraph, result: SolveResult, budget: Budget | None = None) -> bool:
    """Re-solve ``d - v`` for each silent vertex ``v`` of an optimal strategy."""
    if result.status != Status.PROVEN:
        raise ValueError("needs a proven result")
    for v in d.vertices():
        if result.strategy.never_guesses(v):
            if d.n == 1:
                return False
            if solve(d.remove_vertex(v), budget).value != result.value:
                return False
    return True
