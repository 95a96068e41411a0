"""Slow, independent reference computations used as test oracles.

Nothing here goes through the package's evaluation or search code.
"""

import itertools
import random
from fractions import Fraction

import numpy as np

from hatgraph.digraph import Digraph


def all_digraphs(n):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for keep in itertools.product((False, True), repeat=len(pairs)):
        yield Digraph(n, frozenset(p for p, k in zip(pairs, keep) if k))


def random_digraph(rng: random.Random, n: int, p: float = 0.5) -> Digraph:
    return Digraph(n, frozenset((u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p))


def random_dag(rng: random.Random, n: int, p: float = 0.5) -> Digraph:
    perm = list(range(n))
    rng.shuffle(perm)
    arcs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Digraph(n, frozenset(arcs))


def brute_clique(d: Digraph) -> int:
    best = 0
    for mask in range(1 << d.n):
        vs = [v for v in range(d.n) if mask >> v & 1]
        if len(vs) <= best:
            continue
        if all((a, b) in d.arcs and (b, a) in d.arcs for a, b in itertools.combinations(vs, 2)):
            best = len(vs)
    return best


def brute_outcome(d: Digraph, tables, colours) -> str:
    """'W', 'L' (someone wrong) or 'S' (all passed) for one colouring string."""
    any_right = any_wrong = False
    for v in range(d.n):
        seen = tuple((w, colours[w]) for w in sorted(w for (u, w) in d.arcs if u == v))
        g = tables[v][seen]
        if g == "P":
            continue
        if g == colours[v]:
            any_right = True
        else:
            any_wrong = True
    if any_wrong:
        return "L"
    return "W" if any_right else "S"


def brute_counts(d: Digraph, tables) -> tuple:
    """(wins, wrong_losses, silent_losses) by walking every configuration.

    ``tables[v]`` maps a tuple of (neighbour, colour) pairs to 'B', 'R' or 'P'.
    """
    tally = {"W": 0, "L": 0, "S": 0}
    for colours in itertools.product("BR", repeat=d.n):
        tally[brute_outcome(d, tables, colours)] += 1
    return tally["W"], tally["L"], tally["S"]


def colours_of(c: int, n: int) -> str:
    return "".join("R" if c >> v & 1 else "B" for v in range(n))


def greedy_code(m: int, distance: int = 3) -> list:
    """Lexicographically greedy code, written out independently."""
    words = []
    for w in range(1 << m):
        if all(bin(w ^ k).count("1") >= distance for k in words):
            words.append(w)
    return words


def to_brute_tables(d: Digraph, strategy):
    """Re-key a TeamStrategy by explicit (neighbour, colour) tuples."""
    out = []
    for v in range(d.n):
        nbrs = sorted(w for (u, w) in d.arcs if u == v)
        table = {}
        for colours in itertools.product("BR", repeat=len(nbrs)):
            view = sum(1 << j for j, col in enumerate(colours) if col == "R")
            table[tuple(zip(nbrs, colours))] = "BRP"[int(strategy.tables[v][view])]
        out.append(table)
    return out


def naive_hat_number(d: Digraph) -> Fraction:
    """Maximum winning probability over every deterministic strategy.

    Enumerates all ``3**(2**d+(v))`` tables per vertex and combines them
    with numpy broadcasting; feasible for ``n <= 3``.
    """
    total = 1 << d.n
    configs = np.arange(total)
    correct = np.zeros((1, total), dtype=bool)
    wrong = np.zeros((1, total), dtype=bool)
    for v in range(d.n):
        nbrs = sorted(w for (u, w) in d.arcs if u == v)
        view = np.zeros(total, dtype=np.int64)
        for j, w in enumerate(nbrs):
            view |= ((configs >> w) & 1) << j
        tables = np.array(list(itertools.product((0, 1, 2), repeat=1 << len(nbrs))), dtype=np.int8)
        g = tables[:, view]
        colour = (configs >> v) & 1
        right_v = (g != 2) & (g == colour)
        wrong_v = (g != 2) & (g != colour)
        correct = (correct[:, None, :] | right_v[None, :, :]).reshape(-1, total)
        wrong = (wrong[:, None, :] | wrong_v[None, :, :]).reshape(-1, total)
    wins = (correct & ~wrong).sum(axis=1)
    return Fraction(int(wins.max()), total)
