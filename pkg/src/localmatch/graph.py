"""Immutable bounded-degree graphs, rooted balls and neighbourhood growth."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegreeBoundExceeded, DuplicateEdge, GraphError, SelfLoop


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with degree bound ``d``.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``.  Build instances
    with :func:`build_graph`; the constructor trusts its arguments.
    """

    n: int
    d: int
    adj: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.d == other.d and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.d, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, d={self.d})"

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) arrays for vectorised traversal."""
        deg = np.fromiter((len(a) for a in self.adj), dtype=np.int64, count=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        indices = np.fromiter(
            (w for a in self.adj for w in a), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices


def build_graph(n: int, edge_list: Iterable[tuple[int, int]], d: int) -> Graph:
    """Validate an edge list and return the corresponding :class:`Graph`.

    Raises SelfLoop, DuplicateEdge or DegreeBoundExceeded on invalid input and
    GraphError for out-of-range vertex ids.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    if d < 0:
        raise GraphError(f"degree bound must be non-negative, got {d}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edge_list:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if v in nbrs[u]:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    for v, s in enumerate(nbrs):
        if len(s) > d:
            raise DegreeBoundExceeded(f"vertex {v} has degree {len(s)} > d={d}")
    return Graph(n=n, d=d, adj=tuple(tuple(sorted(s)) for s in nbrs))


def bfs_layers(g: Graph, sources: Iterable[int], radius: int) -> list[np.ndarray]:
    """Vertices of ``B_radius(sources)`` grouped by distance.

    Each layer is sorted by global id.  Stops early once the frontier empties.
    """
    indptr, indices = g.csr
    seen = np.zeros(g.n, dtype=bool)
    frontier = np.unique(np.asarray(list(sources), dtype=np.int64))
    if frontier.size == 0:
        return []
    seen[frontier] = True
    layers = [frontier]
    for _ in range(radius):
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        offsets = np.repeat(starts - np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
        nb = indices[offsets + np.arange(total)]
        nb = np.unique(nb[~seen[nb]])
        if nb.size == 0:
            break
        seen[nb] = True
        layers.append(nb)
        frontier = nb
    return layers


@dataclass(frozen=True)
class RootedBall:
    """Induced subgraph on ``B_r(root)`` with local ids in BFS order.

    Local id 0 is the root.  Vertices are listed by distance, ties broken by
    global id.  ``adj`` uses local ids; ``global_ids[i]`` maps back.
    """

    radius: int
    global_ids: tuple[int, ...]
    adj: tuple[tuple[int, ...], ...]
    dist: tuple[int, ...]
    root: int = 0

    @property
    def size(self) -> int:
        return len(self.global_ids)

    def structure_key(self) -> tuple:
        """Hashable description of the labelled local structure."""
        return self.adj


def ball_extract(g: Graph, v: int, r: int) -> RootedBall:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range")
    if r < 0:
        raise ValueError("radius must be non-negative")
    order = [v]
    dist = [0]
    local = {v: 0}
    frontier = [v]
    for k in range(1, r + 1):
        nxt = set()
        for w in frontier:
            for x in g.adj[w]:
                if x not in local:
                    nxt.add(x)
        if not nxt:
            break
        frontier = sorted(nxt)
        for x in frontier:
            local[x] = len(order)
            order.append(x)
            dist.append(k)
    adj = tuple(tuple(sorted(local[x] for x in g.adj[w] if x in local)) for w in order)
    return RootedBall(radius=r, global_ids=tuple(order), adj=adj, dist=tuple(dist))


def ball_size_bound(d: int, r: int) -> int:
    """Largest possible ``|B_r(v)|`` in a graph of maximum degree ``d``."""
    if r == 0 or d == 0:
        return 1
    if d == 1:
        return 2
    if d == 2:
        return 2 * r + 1
    return 1 + d * ((d - 1) ** r - 1) // (d - 2)


def ball_growth_check(g: Graph, seed_set: Iterable[int], k: int) -> tuple[int, int, bool]:
    """Count ``|B_k(S)|`` against the growth bound ``(d+1)^k |S|``.

    Executable witness that a k-step neighbourhood of a set grows by at most
    a factor ``(d+1)`` per step.  Returns ``(grown_size, bound, ok)``.
    """
    seeds = set(seed_set)
    if not seeds:
        return 0, 0, True
    grown = sum(int(layer.size) for layer in bfs_layers(g, seeds, k))
    bound = (g.d + 1) ** k * len(seeds)
    return grown, bound, grown <= bound
