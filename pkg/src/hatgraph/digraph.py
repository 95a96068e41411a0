"""Directed graphs on dense vertex indices, skeletons, cliques and generators."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable

MAX_VERTICES = 30


class GraphError(ValueError):
    """Raised for malformed digraphs or generator parameters."""


@dataclass(frozen=True)
class Digraph:
    """Immutable digraph on vertices ``0..n-1``.

    The arc ``(u, v)`` means that ``u`` sees the hat of ``v``.
    """

    n: int
    arcs: frozenset
    _out: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        out = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"arc ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            out[u].append(v)
        object.__setattr__(self, "_out", tuple(tuple(sorted(o)) for o in out))

    def out_neighbors(self, v: int) -> tuple:
        """Out-neighbours of ``v`` in ascending order."""
        return self._out[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def out_mask(self, v: int) -> int:
        m = 0
        for w in self._out[v]:
            m |= 1 << w
        return m

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def vertices(self) -> range:
        return range(self.n)

    def sorted_arcs(self) -> list:
        return sorted(self.arcs)

    def induced(self, keep: Iterable[int]) -> "Digraph":
        """Sub-digraph induced by ``keep``, re-indexed in ascending order."""
        keep = sorted(set(keep))
        pos = {v: i for i, v in enumerate(keep)}
        arcs = [(pos[u], pos[v]) for u, v in self.arcs if u in pos and v in pos]
        return Digraph(len(keep), frozenset(arcs))

    def remove_vertex(self, v: int) -> "Digraph":
        return self.induced(w for w in range(self.n) if w != v)

    def __str__(self):
        return f"Digraph(n={self.n}, arcs={self.sorted_arcs()})"


@dataclass(frozen=True)
class Skeleton:
    n: int
    edges: frozenset  # of frozenset({u, v})

    def adjacency_masks(self) -> list:
        adj = [0] * self.n
        for e in self.edges:
            u, v = tuple(e)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj


@dataclass(frozen=True)
class CliqueCertificate:
    size: int
    witness: tuple


def from_arcs(n: int, arcs: Iterable) -> Digraph:
    arcs = [tuple(a) for a in arcs]
    for a in arcs:
        if len(a) != 2:
            raise GraphError(f"arc {a!r} is not a pair")
    return Digraph(n, frozenset((int(u), int(v)) for u, v in arcs))


def transpose(d: Digraph) -> Digraph:
    return Digraph(d.n, frozenset((v, u) for u, v in d.arcs))


def skeleton(d: Digraph) -> Skeleton:
    edges = frozenset(frozenset((u, v)) for u, v in d.arcs if u < v and (v, u) in d.arcs)
    return Skeleton(d.n, edges)


def skeleton_masks(d: Digraph) -> list:
    """Bitmask adjacency of the skeleton, one int per vertex."""
    adj = [0] * d.n
    for u, v in d.arcs:
        if (v, u) in d.arcs:
            adj[u] |= 1 << v
    return adj


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def max_clique_mask(adj: list, within: int | None = None) -> int:
    """Maximum clique of an undirected graph given as bitmask adjacency.

    Branch and bound over candidate sets with Tomita-style pivoting; the
    popcount of ``cand`` bounds the best possible extension. Only vertices
    in ``within`` (default: all) are used.
    """
    if within is None:
        within = (1 << len(adj)) - 1
    best = 0
    best_set = 0

    def expand(clique: int, size: int, cand: int):
        nonlocal best, best_set
        if not cand:
            if size > best:
                best, best_set = size, clique
            return
        if size + cand.bit_count() <= best:
            return
        pivot = max(_bits(cand), key=lambda u: (cand & adj[u]).bit_count())
        for v in _bits(cand & ~adj[pivot]):
            if size + cand.bit_count() <= best:
                return
            expand(clique | (1 << v), size + 1, cand & adj[v])
            cand &= ~(1 << v)

    expand(0, 0, within)
    return best_set


def clique_number(d: Digraph) -> CliqueCertificate:
    """Exact clique number of the skeleton, with a witness clique."""
    if d.n == 0:
        return CliqueCertificate(0, ())
    witness = tuple(_bits(max_clique_mask(skeleton_masks(d))))
    return CliqueCertificate(len(witness), witness)


def iter_cliques(adj: list, within: int | None = None):
    """Yield every non-empty clique (as a bitmask) inside ``within``."""
    if within is None:
        within = (1 << len(adj)) - 1

    def grow(clique: int, cand: int):
        for v in _bits(cand):
            c = clique | (1 << v)
            yield c
            # only higher-indexed vertices, so each clique appears once
            yield from grow(c, cand & adj[v] & ~((2 << v) - 1))

    yield from grow(0, within)


def directed_union(c: Digraph, d: Digraph) -> Digraph:
    """Disjoint union of ``c`` and ``d`` plus every arc from ``c`` to ``d``.

    Vertices of ``d`` are shifted by ``c.n``.
    """
    k = c.n
    arcs = set(c.arcs)
    arcs.update((u + k, v + k) for u, v in d.arcs)
    arcs.update((u, v + k) for u in range(c.n) for v in range(d.n))
    return Digraph(c.n + d.n, frozenset(arcs))


def complete(m: int) -> Digraph:
    if m < 1:
        raise GraphError("complete graph needs m >= 1")
    return Digraph(m, frozenset((u, v) for u in range(m) for v in range(m) if u != v))


def chain(m: int, n: int) -> Digraph:
    """``K_m -> K_m -> ... -> K_m`` with ``n`` copies."""
    if m < 1 or n < 1:
        raise GraphError("chain needs m >= 1 and n >= 1")
    g = complete(m)
    for _ in range(n - 1):
        g = directed_union(g, complete(m))
    return g


def d_family(n: int) -> Digraph:
    """``K_1 -> K_2 -> ... -> K_2`` with ``n`` copies of ``K_2``; ``2n + 1`` vertices."""
    if n < 0:
        raise GraphError("d_family needs n >= 0")
    g = complete(1)
    for _ in range(n):
        g = directed_union(g, complete(2))
    return g


def directed_cycle(n: int) -> Digraph:
    if n < 1:
        raise GraphError("directed_cycle needs n >= 1")
    if n == 1:
        return complete(1)
    if n == 2:
        return complete(2)
    return Digraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def tournament_bit(seed: int, u: int, v: int) -> int:
    """Orientation bit for the pair ``u < v``: low bit of SHA-256("seed:u:v")."""
    digest = hashlib.sha256(f"{seed}:{u}:{v}".encode()).digest()
    return digest[0] & 1


def random_tournament(n: int, seed: int) -> Digraph:
    """Tournament where pair ``u < v`` is oriented ``u -> v`` iff the bit is 1."""
    if n < 1:
        raise GraphError("random_tournament needs n >= 1")
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            arcs.append((u, v) if tournament_bit(seed, u, v) else (v, u))
    return Digraph(n, frozenset(arcs))


FAMILIES = {
    "complete": (complete, 1),
    "d_family": (d_family, 1),
    "chain": (chain, 2),
    "directed_cycle": (directed_cycle, 1),
    "random_tournament": (random_tournament, 2),
}


def family(kind: str, *params: int) -> Digraph:
    try:
        fn, arity = FAMILIES[kind]
    except KeyError:
        raise GraphError(f"unknown family {kind!r}; choose from {sorted(FAMILIES)}") from None
    if len(params) != arity:
        raise GraphError(f"{kind} takes {arity} integer parameter(s), got {len(params)}")
    return fn(*params)


def drop_blind(d: Digraph) -> tuple:
    """Repeatedly delete vertices of out-degree zero.

    Stops at a single vertex. Returns the reduced digraph and the removed
    vertices, as indices of the original graph, in removal order.
    """
    alive = list(range(d.n))
    removed = []
    out = {v: set(d.out_neighbors(v)) for v in alive}
    while len(alive) > 1:
        blind = next((v for v in alive if not out[v]), None)
        if blind is None:
            break
        alive.remove(blind)
        removed.append(blind)
        for v in alive:
            out[v].discard(blind)
    return d.induced(alive), removed


def is_tournament(d: Digraph) -> bool:
    for u in range(d.n):
        for v in range(u + 1, d.n):
            if ((u, v) in d.arcs) == ((v, u) in d.arcs):
                return False
    return True
