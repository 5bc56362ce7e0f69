"""Neighbourhood statistics in the local (Benjamini-Schramm) topology."""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .canon import DEFAULT_MAX_VERTICES, canonical_code
from .errors import RadiusMismatch
from .exact import matching_ratio, maximum_matching
from .generators import FamilySpec, generate
from .graph import Graph, ball_extract
from .hashing import SAMPLE_TAG, bounded, mix3
from .oracle import OracleConfig, estimate_matching_ratio, hoeffding_samples

EXACT_LIMIT = 1_000_000


@dataclass(frozen=True)
class BallDistribution:
    """Frequencies of rooted r-ball types; weights are exact rationals."""

    r: int
    weights: dict[bytes, Fraction]

    def items(self) -> list[tuple[bytes, Fraction]]:
        return sorted(self.weights.items())

    def digest(self) -> str:
        h = hashlib.sha256(f"r={self.r}\n".encode())
        for code, w in self.items():
            h.update(f"{code.hex()} {w}\n".encode())
        return h.hexdigest()

    def to_dict(self) -> dict:
        return {"r": self.r, "types": [[code.hex(), str(w)] for code, w in self.items()]}


def ball_distribution(
    g: Graph,
    r: int,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    exact_limit: int = EXACT_LIMIT,
    epsilon: float = 0.01,
    delta: float = 0.01,
    sample_seed: int = 0,
    threads: int = 1,
) -> BallDistribution:
    """Distribution of ``canonical_code(ball_extract(g, v, r))`` over vertices.

    Exact over all vertices when ``g.n <= exact_limit``; above that, a uniform
    sample sized by Hoeffding for ``(epsilon, delta)``.
    """
    if g.n > exact_limit:
        roots = [
            bounded(mix3(sample_seed ^ SAMPLE_TAG, 1, i), g.n)
            for i in range(hoeffding_samples(epsilon, delta))
        ]
    else:
        roots = range(g.n)
    cache: dict[tuple, bytes] = {}

    def code_of(v: int) -> bytes:
        ball = ball_extract(g, v, r)
        key = (ball.adj, ball.dist)
        code = cache.get(key)
        if code is None:
            code = cache[key] = canonical_code(ball, max_vertices)
        return code

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = Counter(pool.map(code_of, roots))
    else:
        counts = Counter(map(code_of, roots))
    total = sum(counts.values())
    return BallDistribution(r, {c: Fraction(k, total) for c, k in counts.items()})


def tv_distance(a: BallDistribution, b: BallDistribution) -> Fraction:
    """Total-variation distance ``(1/2) sum |a(t) - b(t)|``."""
    if a.r != b.r:
        raise RadiusMismatch(f"radius {a.r} vs {b.r}")
    zero = Fraction(0)
    keys = a.weights.keys() | b.weights.keys()
    return sum((abs(a.weights.get(k, zero) - b.weights.get(k, zero)) for k in keys), zero) / 2


@dataclass(frozen=True)
class TraceEntry:
    family: str
    n: int
    r: int
    digest: str
    tv_to_prev: Fraction | None
    m_lower: float
    m_upper: float
    m_exact: Fraction | None

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "n": self.n,
            "r": self.r,
            "digest": self.digest,
            "tv_to_prev": None if self.tv_to_prev is None else float(self.tv_to_prev),
            "m_lower": self.m_lower,
            "m_upper": self.m_upper,
        }
        if self.m_exact is not None:
            out["m_exact"] = float(self.m_exact)
            out["m_exact_fraction"] = str(self.m_exact)
        return out


@dataclass(frozen=True)
class ConvergenceTrace:
    entries: tuple[TraceEntry, ...]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(e.to_dict(), sort_keys=True) + "\n" for e in self.entries)

    def to_csv(self) -> str:
        rows = ["n,tv,m_lower,m_upper"]
        for e in self.entries:
            tv = "" if e.tv_to_prev is None else repr(float(e.tv_to_prev))
            rows.append(f"{e.n},{tv},{e.m_lower!r},{e.m_upper!r}")
        return "\n".join(rows) + "\n"


def run_convergence_experiment(
    family: FamilySpec | str,
    sizes: list[int],
    r: int,
    cfg: OracleConfig,
    use_exact: bool,
    epsilon: float = 0.05,
    delta: float = 0.05,
    sample_seed: int = 0,
    threads: int = 1,
) -> ConvergenceTrace:
    """Ball statistics and matching-ratio brackets along growing sizes.

    Each size ``n`` instantiates the family with ``n=<size>`` (the grid uses
    ``side = isqrt(n)``).  Entries are ordered by vertex count.
    """
    if isinstance(family, str):
        family = FamilySpec.parse(family)
    entries = []
    prev = None
    for size in sorted(sizes):
        spec = family.with_params(n=size)
        g = generate(spec)
        dist = ball_distribution(g, r, threads=threads)
        rep = estimate_matching_ratio(g, cfg, epsilon, delta, sample_seed, threads=threads)
        exact = matching_ratio(g, maximum_matching(g)) if use_exact else None
        entries.append(
            TraceEntry(
                family=str(family),
                n=g.n,
                r=r,
                digest=dist.digest(),
                tv_to_prev=None if prev is None else tv_distance(prev, dist),
                m_lower=rep.lower,
                m_upper=rep.upper,
                m_exact=exact,
            )
        )
        prev = dist
    return ConvergenceTrace(tuple(sorted(entries, key=lambda e: e.n)))
