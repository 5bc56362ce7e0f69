"""Matchings and the exact maximum-matching oracle."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction

from .errors import GraphError, TooLarge
from .graph import Graph

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class Matching:
    """Partner map: ``mate[v]`` is v's partner or -1 when v is unmatched."""

    mate: tuple[int, ...]

    @classmethod
    def empty(cls, n: int) -> Matching:
        return cls((-1,) * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Matching:
        mate = [-1] * n
        for u, v in pairs:
            if mate[u] != -1 or mate[v] != -1 or u == v:
                raise ValueError(f"pair ({u}, {v}) overlaps an existing pair")
            mate[u], mate[v] = v, u
        return cls(tuple(mate))

    @property
    def n(self) -> int:
        return len(self.mate)

    def partner(self, v: int) -> int | None:
        w = self.mate[v]
        return None if w == -1 else w

    def is_matched(self, v: int) -> bool:
        return self.mate[v] != -1

    def __len__(self) -> int:
        return sum(1 for w in self.mate if w != -1) // 2

    @property
    def size(self) -> int:
        return len(self)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for u, w in enumerate(self.mate):
            if u < w:
                yield u, w

    def matched_vertices(self) -> frozenset[int]:
        """The vertex set covered by the matching."""
        return frozenset(v for v, w in enumerate(self.mate) if w != -1)

    def validate(self, g: Graph) -> None:
        if self.n != g.n:
            raise GraphError(f"matching covers {self.n} vertices, graph has {g.n}")
        for u, w in enumerate(self.mate):
            if w == -1:
                continue
            if not 0 <= w < g.n or self.mate[w] != u:
                raise GraphError(f"partner map not symmetric at {u}")
            if not g.has_edge(u, w):
                raise GraphError(f"matched pair ({u}, {w}) is not an edge")


def matching_ratio(g: Graph, m: Matching) -> Fraction:
    """``|M| / n`` with ``|M|`` counted in edges; ``float()`` it for a value."""
    if g.n == 0:
        return Fraction(0)
    return Fraction(len(m), g.n)


def _greedy(g: Graph, mate: list[int]) -> None:
    # low-degree vertices first keeps the blossom phase short on sparse graphs
    for v in sorted(range(g.n), key=lambda x: (len(g.adj[x]), x)):
        if mate[v] != -1:
            continue
        best = -1
        for w in g.adj[v]:
            if mate[w] == -1 and (best == -1 or len(g.adj[w]) < len(g.adj[best])):
                best = w
        if best != -1:
            mate[v], mate[best] = best, v


def maximum_matching(g: Graph, initial: Matching | None = None) -> Matching:
    """Maximum-cardinality matching of a general graph (Edmonds' blossoms).

    Grows an alternating forest from each exposed vertex in turn, contracting
    odd cycles by relabelling their base.  A root that fails to find an
    augmenting path is never retried: it cannot gain one later.  ``initial``
    only seeds the search; the result is maximum regardless.
    """
    n = g.n
    adj = g.adj
    if initial is not None:
        initial.validate(g)
        mate = list(initial.mate)
    else:
        mate = [-1] * n
        _greedy(g, mate)

    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    blossom = [False] * n
    mark = [False] * n

    def lca(a: int, b: int, touched: list[int]) -> int:
        path = []
        while True:
            a = base[a]
            mark[a] = True
            path.append(a)
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        try:
            while True:
                b = base[b]
                if mark[b]:
                    return b
                b = parent[mate[b]]
        finally:
            for x in path:
                mark[x] = False

    def mark_path(v: int, b: int, child: int, hit: list[int]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            hit.append(base[v])
            hit.append(base[mate[v]])
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def find_path(root: int) -> int:
        touched = [root]
        used[root] = True
        queue = [root]
        head = 0
        found = -1
        while head < len(queue) and found == -1:
            v = queue[head]
            head += 1
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to, touched)
                    hit: list[int] = []
                    mark_path(v, cur, to, hit)
                    mark_path(to, cur, v, hit)
                    for i in touched:
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                    for x in hit:
                        blossom[x] = False
                elif parent[to] == -1:
                    parent[to] = v
                    touched.append(to)
                    if mate[to] == -1:
                        found = to
                        break
                    nxt = mate[to]
                    touched.append(nxt)
                    used[nxt] = True
                    queue.append(nxt)
        if found != -1:
            v = found
            while v != -1:
                pv = parent[v]
                ppv = mate[pv]
                mate[v], mate[pv] = pv, v
                v = ppv
        for i in touched:
            parent[i] = -1
            base[i] = i
            used[i] = False
        return found

    for root in range(n):
        if mate[root] == -1 and adj[root]:
            find_path(root)
    return Matching(tuple(mate))


def brute_force_matching(g: Graph) -> Matching:
    """Maximum matching by exhaustive branching; test oracle for ``n <= 20``."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute force is capped at n={BRUTE_FORCE_LIMIT}, got {g.n}")
    n = g.n
    mate = [-1] * n
    best = [0, (-1,) * n]

    def rec(v: int, size: int) -> None:
        while v < n and mate[v] != -1:
            v += 1
        free = sum(1 for x in range(v, n) if mate[x] == -1)
        if size + free // 2 <= best[0]:
            return
        if v >= n:
            best[0], best[1] = size, tuple(mate)
            return
        for w in g.adj[v]:
            if w > v and mate[w] == -1:
                mate[v], mate[w] = w, v
                rec(v + 1, size + 1)
                mate[v] = mate[w] = -1
        # leave v exposed
        mate[v] = v
        rec(v + 1, size)
        mate[v] = -1

    rec(0, 0)
    return Matching(tuple(-1 if w == i else w for i, w in enumerate(best[1])))
