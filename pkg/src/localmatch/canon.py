"""Canonical codes for rooted balls.

Colour refinement seeded with (distance, degree) followed by an
individualisation search.  Automorphisms found at equivalent leaves prune
sibling branches in the same orbit and trigger a backjump to the point where
the two search paths diverged, which keeps tree-like balls with large
symmetry groups cheap.
"""

from __future__ import annotations

import struct

from .errors import BallTooLarge
from .graph import RootedBall

DEFAULT_MAX_VERTICES = 10_000

CanonicalCode = bytes


def _refine(adj, cells: list[list[int]]) -> list[list[int]]:
    """Split cells until equitable; subcell order depends only on colours."""
    n = len(adj)
    color = [0] * n
    while True:
        for i, cell in enumerate(cells):
            for v in cell:
                color[v] = i
        out: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple(sorted(color[w] for w in adj[v]))
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                out.append(cell)
                continue
            changed = True
            for sig in sorted(groups):
                out.append(groups[sig])
        cells = out
        if not changed:
            return cells


def _certificate(adj, cells) -> tuple:
    pos = [0] * len(adj)
    for i, cell in enumerate(cells):
        pos[cell[0]] = i
    return tuple(sorted((pos[u], pos[w]) for u in range(len(adj)) for w in adj[u] if pos[u] < pos[w]))


class _Search:
    def __init__(self, adj):
        self.adj = adj
        self.n = len(adj)
        self.first = None
        self.best = None
        self.autos: list[list[int]] = []

    def node(self, cells, path):
        depth = len(path)
        if len(cells) == self.n:
            return self.leaf(cells, path)
        target = next(i for i, c in enumerate(cells) if len(c) > 1)
        tried: list[int] = []
        for x in sorted(cells[target]):
            if tried and self.same_orbit(x, tried, path):
                continue
            rest = [w for w in cells[target] if w != x]
            child = cells[:target] + [[x], rest] + cells[target + 1:]
            jump = self.node(_refine(self.adj, child), path + [x])
            tried.append(x)
            if jump is not None and jump < depth:
                return jump
        return None

    def leaf(self, cells, path):
        cert = _certificate(self.adj, cells)
        perm = [c[0] for c in cells]  # position -> vertex
        if self.first is None:
            self.first = self.best = (cert, perm, path)
            return None
        for ref in (self.first, self.best):
            if cert == ref[0]:
                gamma = [0] * self.n
                for a, b in zip(ref[1], perm):
                    gamma[a] = b
                self.autos.append(gamma)
                return _common_prefix(path, ref[2])
        if cert < self.best[0]:
            self.best = (cert, perm, path)
        return None

    def same_orbit(self, x, tried, path):
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for gamma in self.autos:
            if all(gamma[p] == p for p in path):
                for a in range(self.n):
                    ra, rb = find(a), find(gamma[a])
                    if ra != rb:
                        parent[ra] = rb
        root = find(x)
        return any(find(y) == root for y in tried)


def _common_prefix(a, b) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def canonical_certificate(adj, dist, max_vertices: int = DEFAULT_MAX_VERTICES) -> tuple:
    """Canonical edge list of a rooted graph given by local ``adj`` and ``dist``."""
    n = len(adj)
    if n > max_vertices:
        raise BallTooLarge(f"ball has {n} vertices, cap is {max_vertices}")
    groups: dict[tuple[int, int], list[int]] = {}
    for v in range(n):
        groups.setdefault((dist[v], len(adj[v])), []).append(v)
    cells = [groups[key] for key in sorted(groups)]
    search = _Search(adj)
    search.node(_refine(adj, cells), [])
    return search.best[0]


def canonical_code(b: RootedBall, max_vertices: int = DEFAULT_MAX_VERTICES) -> CanonicalCode:
    """Bytes identifying the rooted-isomorphism class of ``b``.

    Equal for two balls iff they are isomorphic by a map sending root to root.
    Layout: vertex count, edge count, then the canonical edge pairs, all as
    little-endian uint32.
    """
    cert = canonical_certificate(b.adj, b.dist, max_vertices)
    flat = [x for edge in cert for x in edge]
    return struct.pack(f"<II{len(flat)}I", b.size, len(cert), *flat)
