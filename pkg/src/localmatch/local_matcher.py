"""Short augmenting paths, the phased local improver and the certified bracket.

The improver runs a fixed number of rounds.  In round ``p`` every vertex gets
the key ``mix3(seed, p, v)``; a vertex is an active centre when its key is
strictly smaller than every other key within distance ``8T``.  Two active
centres are therefore more than ``8T`` apart and their ``4T``-balls are
disjoint, so the round's result does not depend on the order in which
centres are processed.  Each centre removes every augmenting path with at
most ``T`` matched edges that lies inside its ``4T``-ball.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidPath
from .exact import Matching, matching_ratio
from .graph import Graph
from .hashing import round_keys


@dataclass(frozen=True)
class ImproverConfig:
    """``T`` caps the augmenting-path length, ``phases`` is the round count."""

    T: int = 3
    phases: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.T < 1:
            raise ValueError(f"T must be >= 1, got {self.T}")
        if self.phases < 1:
            raise ValueError(f"phases must be >= 1, got {self.phases}")


@dataclass(frozen=True)
class AugmentingPath:
    vertices: tuple[int, ...]

    @property
    def k(self) -> int:
        """Number of matched edges on the path."""
        return (len(self.vertices) - 2) // 2


@dataclass(frozen=True)
class BracketReport:
    """Certified interval ``[lower, upper]`` for the maximum-matching ratio."""

    s: Fraction
    q: Fraction
    lower: Fraction
    upper: Fraction
    T: int

    def contains(self, value) -> bool:
        return self.lower <= value <= self.upper

    def to_dict(self) -> dict:
        return {
            "T": self.T,
            "s": float(self.s),
            "q": float(self.q),
            "lower": float(self.lower),
            "upper": float(self.upper),
            "s_exact": str(self.s),
            "q_exact": str(self.q),
        }


# Adjacency is anything indexable by vertex id returning an ascending
# neighbour sequence: a Graph's tuple-of-tuples, or a dict for a ball.
Adjacency = Sequence[Sequence[int]] | Mapping[int, Sequence[int]]


def _search(adj: Adjacency, mate, inside, x0: int, k: int) -> list[int] | None:
    """Lexicographically first augmenting path from ``x0`` with exactly ``k``
    matched edges, using only vertices in ``inside`` (``None`` = all)."""
    path = [x0]
    on = {x0}

    def rec(a: int, j: int) -> bool:
        for b in adj[a]:
            if b in on or (inside is not None and b not in inside):
                continue
            mb = mate[b]
            if mb == -1:
                if j == k:
                    path.append(b)
                    return True
                continue
            if j == k or mb in on or (inside is not None and mb not in inside):
                continue
            path.append(b)
            path.append(mb)
            on.add(b)
            on.add(mb)
            if rec(mb, j + 1):
                return True
            path.pop()
            path.pop()
            on.discard(b)
            on.discard(mb)
        return False

    return path if rec(x0, 0) else None


def _has_path(adj: Adjacency, mate, x0: int, T: int) -> bool:
    """Whether any augmenting path with at most ``T`` matched edges starts at x0."""
    on = {x0}

    def rec(a: int, j: int) -> bool:
        for b in adj[a]:
            if b in on:
                continue
            mb = mate[b]
            if mb == -1:
                return True
            if j == T or mb in on:
                continue
            on.add(b)
            on.add(mb)
            if rec(mb, j + 1):
                return True
            on.discard(b)
            on.discard(mb)
        return False

    return rec(x0, 0)


def _flip(mate, path: Sequence[int]) -> None:
    for i in range(0, len(path), 2):
        a, b = path[i], path[i + 1]
        mate[a] = b
        mate[b] = a


def find_augmenting_path(g: Graph, m: Matching, v: int, T: int) -> AugmentingPath | None:
    """Shortest augmenting path from ``v`` with at most ``T`` matched edges.

    Ties between paths of equal length go to the lexicographically smallest
    vertex sequence.  Returns None when ``v`` is matched or no path exists.
    Every such path stays inside ``B_{2T+1}(v)``.
    """
    if m.mate[v] != -1:
        return None
    for k in range(T + 1):
        p = _search(g.adj, m.mate, None, v, k)
        if p is not None:
            return AugmentingPath(tuple(p))
    return None


def augment(m: Matching, p: AugmentingPath | Sequence[int]) -> Matching:
    """Return ``M △ P``; raises InvalidPath unless ``p`` augments ``m``."""
    verts = tuple(p.vertices if isinstance(p, AugmentingPath) else p)
    mate = m.mate
    if len(verts) < 2 or len(verts) % 2:
        raise InvalidPath(f"path must have an even number >= 2 of vertices, got {len(verts)}")
    if len(set(verts)) != len(verts):
        raise InvalidPath("path repeats a vertex")
    if any(not 0 <= x < m.n for x in verts):
        raise InvalidPath("path leaves the vertex range")
    if mate[verts[0]] != -1 or mate[verts[-1]] != -1:
        raise InvalidPath("path endpoints must be unmatched")
    for i in range(1, len(verts) - 1, 2):
        if mate[verts[i]] != verts[i + 1]:
            raise InvalidPath(f"edge ({verts[i]}, {verts[i + 1]}) should be matched")
    new = list(mate)
    _flip(new, verts)
    return Matching(tuple(new))


def _ball(adj: Adjacency, u: int, radius: int) -> set[int]:
    seen = {u}
    frontier = [u]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for x in adj[w]:
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        if not nxt:
            break
        frontier = nxt
    return seen


def _is_active(adj: Adjacency, key, u: int, radius: int) -> bool:
    """Strict key minimum over ``B_radius(u)``; exits at the first rival."""
    ku = key[u]
    seen = {u}
    frontier = [u]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for x in adj[w]:
                if x not in seen:
                    if key[x] <= ku:
                        return False
                    seen.add(x)
                    nxt.append(x)
        if not nxt:
            break
        frontier = nxt
    return True


def _eliminate(adj: Adjacency, mate, inside: set[int], T: int) -> int:
    """Remove all augmenting paths with <= T matched edges inside ``inside``.

    Equivalent to repeatedly flipping the minimal path (fewest matched edges,
    then lexicographic vertex order).  One ascending sweep per length is
    enough: flipping a shortest path never creates a new path of the same or
    smaller length, so a start vertex that failed earlier in the sweep stays
    failed.
    """
    order = sorted(inside)
    flips = 0
    for k in range(T + 1):
        for x0 in order:
            if mate[x0] != -1:
                continue
            p = _search(adj, mate, inside, x0, k)
            if p is not None:
                _flip(mate, p)
                flips += 1
    return flips


def active_centers(adj: Adjacency, vertices, key, T: int) -> list[int]:
    return [u for u in sorted(vertices) if _is_active(adj, key, u, 8 * T)]


def _run_round(adj: Adjacency, mate, centers, T: int) -> None:
    for u in centers:
        _eliminate(adj, mate, _ball(adj, u, 4 * T), T)


def improver_rounds(g: Graph, cfg: ImproverConfig) -> Iterator[tuple[int, list[int], Matching]]:
    """Yield ``(round, active_centres, matching_after_round)`` for each round."""
    mate = [-1] * g.n
    vertices = range(g.n)
    for p in range(1, cfg.phases + 1):
        key = round_keys(cfg.seed, p, vertices)
        centers = active_centers(g.adj, vertices, key, cfg.T)
        _run_round(g.adj, mate, centers, cfg.T)
        yield p, centers, Matching(tuple(mate))


def run_improver(g: Graph, cfg: ImproverConfig) -> Matching:
    """Matching after ``cfg.phases`` rounds, starting from the empty matching."""
    result = Matching.empty(g.n)
    for _, _, result in improver_rounds(g, cfg):
        pass
    return result


def short_path_starts(g: Graph, m: Matching, T: int) -> list[int]:
    """Unmatched vertices from which an augmenting path with <= T matched edges starts."""
    return [v for v in range(g.n) if m.mate[v] == -1 and _has_path(g.adj, m.mate, v, T)]


def verify_bracket(g: Graph, m: Matching, T: int) -> BracketReport:
    """Exact ``s``, ``q`` and the interval ``[s, s(T+1)/T + q]``.

    ``q`` is the fraction of vertices from which an augmenting path with at
    most ``T`` matched edges starts.  The maximum-matching ratio always lies
    in the returned interval.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    s = matching_ratio(g, m)
    q = Fraction(len(short_path_starts(g, m, T)), g.n) if g.n else Fraction(0)
    return BracketReport(s=s, q=q, lower=s, upper=s * Fraction(T + 1, T) + q, T=T)
