"""Deterministic bounded-degree graph families and edge-list file I/O.

Edge-list format::

    # comment lines start with '#'
    n m d
    u v        (m lines, 0-based ids)
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleSpec, ParseError, RetryBudgetExceeded
from .graph import Graph, build_graph
from .hashing import stream

FAMILIES = (
    "path",
    "cycle",
    "grid2d",
    "complete_capped",
    "random_regular",
    "random_bounded",
    "tree_regular",
)

DEFAULT_RETRY_BUDGET = 5000


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        name = self.name.replace("-", "_")
        if name not in FAMILIES:
            raise ValueError(f"unknown family {self.name!r}; expected one of {FAMILIES}")
        object.__setattr__(self, "name", name)

    def with_params(self, **kw) -> FamilySpec:
        return FamilySpec(self.name, {**self.params, **kw}, self.seed)

    def __str__(self) -> str:
        items = [f"{k}={v}" for k, v in sorted(self.params.items())]
        if self.name.startswith("random"):
            items.append(f"seed={self.seed}")
        return f"{self.name}:{','.join(items)}" if items else self.name

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        """Parse ``name:key=val,key=val``; ``seed`` is accepted as a key."""
        name, _, rest = text.strip().partition(":")
        params: dict[str, int] = {}
        seed = 0
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, eq, val = item.partition("=")
            if not eq:
                raise ValueError(f"bad family parameter {item!r}")
            try:
                num = int(val, 0)
            except ValueError:
                raise ValueError(f"family parameter {key!r} must be an integer, got {val!r}") from None
            if key == "seed":
                seed = num
            else:
                params[key] = num
        return cls(name, params, seed)


def _need(params: dict, key: str, default=None) -> int:
    if key in params:
        return int(params[key])
    if default is None:
        raise InfeasibleSpec(f"missing parameter {key!r}")
    return default


def _degree_param(params: dict, needed: int) -> int:
    d = _need(params, "d", needed)
    if d < needed:
        raise InfeasibleSpec(f"declared d={d} is below the family's degree {needed}")
    return d


def _path(p, seed):
    n = _need(p, "n")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)], _degree_param(p, 2))


def _cycle(p, seed):
    n = _need(p, "n")
    if n < 3:
        raise InfeasibleSpec(f"a cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)], _degree_param(p, 2))


def _grid2d(p, seed):
    """``side x side`` torus; ``open=1`` gives the grid with boundary."""
    side = _need(p, "side", math.isqrt(_need(p, "n", 0)))
    open_ = bool(_need(p, "open", 0))
    if side < (1 if open_ else 3):
        raise InfeasibleSpec(f"grid side {side} too small")
    edges = set()
    for r in range(side):
        for c in range(side):
            v = r * side + c
            for r2, c2 in ((r, c + 1), (r + 1, c)):
                if open_ and (r2 >= side or c2 >= side):
                    continue
                w = (r2 % side) * side + (c2 % side)
                edges.add((min(v, w), max(v, w)))
    return build_graph(side * side, sorted(edges), _degree_param(p, 4))


def _complete_capped(p, seed):
    """Consecutive blocks of ``d+1`` vertices, each block a clique."""
    n, d = _need(p, "n"), _need(p, "d")
    if d < 0:
        raise InfeasibleSpec("d must be non-negative")
    edges = []
    for start in range(0, n, d + 1):
        block = range(start, min(n, start + d + 1))
        edges.extend((u, v) for u in block for v in block if u < v)
    return build_graph(n, edges, d)


def _random_regular(p, seed):
    """Configuration model with rejection; nonce increments on each retry."""
    n, d = _need(p, "n"), _need(p, "d")
    budget = _need(p, "retries", DEFAULT_RETRY_BUDGET)
    if n * d % 2:
        raise InfeasibleSpec(f"n*d must be even for a {d}-regular graph on {n} vertices")
    if d >= n and n > 0:
        raise InfeasibleSpec(f"need d < n, got d={d}, n={n}")
    if d == 0 or n == 0:
        return build_graph(n, [], d)
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for nonce in range(budget):
        order = np.argsort(stream(seed, nonce, stubs.size), kind="stable")
        pairs = stubs[order].reshape(-1, 2)
        lo, hi = pairs.min(axis=1), pairs.max(axis=1)
        if np.any(lo == hi):
            continue
        codes = lo * n + hi
        if np.unique(codes).size != codes.size:
            continue
        return build_graph(n, zip(lo.tolist(), hi.tolist()), d)
    raise RetryBudgetExceeded(f"no simple {d}-regular graph on {n} vertices in {budget} tries")


def _random_bounded(p, seed):
    """Try ``m`` random pairs (default n*d/2), keeping those that stay simple
    and within the degree bound."""
    n, d = _need(p, "n"), _need(p, "d")
    attempts = _need(p, "m", n * d // 2)
    if n < 2 or attempts == 0:
        return build_graph(n, [], d)
    raw = stream(seed, 0, 2 * attempts).tolist()
    deg = [0] * n
    seen = set()
    edges = []
    for i in range(attempts):
        u = (raw[2 * i] * n) >> 64
        v = (raw[2 * i + 1] * n) >> 64
        if u == v:
            continue
        e = (min(u, v), max(u, v))
        if e in seen or deg[u] >= d or deg[v] >= d:
            continue
        seen.add(e)
        deg[u] += 1
        deg[v] += 1
        edges.append(e)
    return build_graph(n, edges, d)


def _tree_regular(p, seed):
    """First ``n`` vertices, in BFS order, of the infinite d-regular tree."""
    n, d = _need(p, "n"), _need(p, "d")
    if d < 1 and n > 1:
        raise InfeasibleSpec("a tree on more than one vertex needs d >= 1")
    edges = []
    nxt = 1
    for v in range(n):
        children = d if v == 0 else d - 1
        for _ in range(children):
            if nxt >= n:
                break
            edges.append((v, nxt))
            nxt += 1
        if nxt >= n:
            break
    return build_graph(n, edges, d)


_BUILDERS = {
    "path": _path,
    "cycle": _cycle,
    "grid2d": _grid2d,
    "complete_capped": _complete_capped,
    "random_regular": _random_regular,
    "random_bounded": _random_bounded,
    "tree_regular": _tree_regular,
}


def generate(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    return _BUILDERS[spec.name](spec.params, spec.seed)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m} {g.d}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def save_graph(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_graph(g))


def parse_graph(text: str) -> Graph:
    header = None
    edges = []
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last = lineno
        parts = line.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise ParseError(f"expected integers, got {raw!r}", lineno) from None
        if header is None:
            if len(nums) != 3 or min(nums) < 0:
                raise ParseError("header must be 'n m d' with non-negative integers", lineno)
            header = nums
            continue
        if len(nums) != 2:
            raise ParseError(f"edge line needs two ids, got {len(nums)} fields", lineno)
        u, v = nums
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise ParseError(f"vertex id out of range in ({u}, {v})", lineno)
        edges.append((u, v))
    if header is None:
        raise ParseError("missing header line")
    n, m, d = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}", last)
    return build_graph(n, edges, d)


def load_graph(path: str | os.PathLike) -> Graph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_graph(text)
