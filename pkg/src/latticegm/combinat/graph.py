"""Simple undirected graphs on [m], cliques, separation, and graphs derived from posets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from ..errors import InputError, InvalidTriple
from . import masks
from .lattice import DistributiveLattice, underlying_poset
from .masks import Mask
from .poset import Poset


@dataclass(frozen=True)
class Graph:
    """Vertices ``range(m)``; ``edges`` holds 0-based pairs ``(i, j)`` with i < j."""

    m: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[Mask, ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, m: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        masks.check_m(m)
        edges = set()
        adj = [0] * m
        for p in pairs:
            p = tuple(p)
            if len(p) != 2:
                raise InputError(f"edge {p!r} must be a pair")
            i, j = p
            if not (0 <= i < m and 0 <= j < m):
                raise InputError(f"edge ({i + 1},{j + 1}) has a vertex outside [1, {m}]")
            if i == j:
                raise InputError(f"edge ({i + 1},{j + 1}) is a loop")
            e = (min(i, j), max(i, j))
            if e in edges:
                raise InputError(f"duplicate edge ({e[0] + 1},{e[1] + 1})")
            edges.add(e)
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(m, frozenset(edges), tuple(adj))

    @classmethod
    def from_labels(cls, m: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        return cls.from_edges(m, [(i - 1, j - 1) for i, j in pairs])

    @classmethod
    def empty(cls, m: int) -> "Graph":
        return cls.from_edges(m, [])

    @classmethod
    def complete(cls, m: int) -> "Graph":
        return cls.from_edges(m, combinations(range(m), 2))

    @classmethod
    def path(cls, m: int) -> "Graph":
        return cls.from_edges(m, [(i, i + 1) for i in range(m - 1)])

    @classmethod
    def cycle(cls, m: int) -> "Graph":
        return cls.from_edges(m, [(i, i + 1) for i in range(m - 1)] + [(0, m - 1)])

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def non_edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in combinations(range(self.m), 2) if not self.has_edge(i, j)]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_clique(self, S: Mask) -> bool:
        return all(masks.is_subset(S & ~(1 << i), self.adj[i]) for i in masks.elements(S))

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.m == other.m and self.edges <= other.edges

    def with_edges(self, pairs: Iterable[tuple[int, int]]) -> "Graph":
        return Graph.from_edges(self.m, sorted(self.edges | {(min(e), max(e)) for e in pairs}))


def minimal_graph(L: DistributiveLattice) -> Graph:
    """Hasse diagram of the underlying poset of a natural lattice, as a graph."""
    P = underlying_poset(L)
    return Graph.from_edges(L.m, P.sorted_covers())


def comparability_graph(P: Poset) -> Graph:
    return Graph.from_edges(
        P.m, [(i, j) for i, j in combinations(range(P.m), 2) if P.comparable(i, j)]
    )


def maximal_cliques(G: Graph) -> list[Mask]:
    """Bron-Kerbosch with pivoting over bitmasks; sorted by (size, value)."""
    out: list[Mask] = []

    def expand(R: Mask, P: Mask, X: Mask) -> None:
        if not P and not X:
            out.append(R)
            return
        pivot = max(masks.elements(P | X), key=lambda u: masks.popcount(P & G.adj[u]))
        for v in masks.elements(P & ~G.adj[pivot]):
            expand(R | 1 << v, P & G.adj[v], X & G.adj[v])
            P &= ~(1 << v)
            X |= 1 << v

    expand(0, masks.full_mask(G.m), 0)
    return masks.sorted_masks(out)


def cliques(G: Graph) -> tuple[list[Mask], list[Mask]]:
    """(all cliques including the empty set, maximal cliques), each sorted."""
    maximal = maximal_cliques(G)
    every: set[Mask] = set()
    for C in maximal:
        every.update(masks.subsets(C))
    return masks.sorted_masks(every), maximal


def separates(G: Graph, A: Mask, B: Mask, C: Mask) -> bool:
    """True iff every path from ``A`` to ``B`` passes through ``C``."""
    if not A or not B or A & B or A & C or B & C:
        raise InvalidTriple(
            f"separation needs nonempty disjoint A, B and C disjoint from both; got "
            f"A={masks.fmt_mask(A)} B={masks.fmt_mask(B)} C={masks.fmt_mask(C)}"
        )
    allowed = masks.full_mask(G.m) & ~C
    seen = A
    queue = deque(masks.elements(A))
    while queue:
        u = queue.popleft()
        nxt = G.adj[u] & allowed & ~seen
        if nxt & B:
            return False
        seen |= nxt
        queue.extend(masks.elements(nxt))
    return True
