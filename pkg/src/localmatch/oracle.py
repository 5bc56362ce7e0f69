"""Per-vertex matched-status oracle and the sampling estimator.

A query for vertex ``v`` reads adjacency lists only inside ``B_R(v)`` and
replays the improver's rounds there.  Keys are hashes of vertex ids, so a
centre's activity is decided from its own ``8T``-ball.  Working backwards
from the last round, the region whose state must be exact shrinks by ``8T``
per round (a centre within ``4T`` of the region reads state up to ``4T``
beyond itself), and the outermost centres still need their ``8T``-ball for
activation.  Hence ``R = 8T*phases + 4T`` suffices for the status of ``v``;
the short-path test needs exact state on ``B_{2T+1}(v)`` and uses
``R + 2T + 1``.

Only centres inside the shrinking cone are replayed.  When the ball turns out
to contain all of v's component, the replay is the full computation on that
component and is memoised per component.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ProbeBudgetExceeded
from .graph import Graph, bfs_layers
from .hashing import SAMPLE_TAG, bounded, mix3, round_keys
from .local_matcher import (
    Adjacency,
    ImproverConfig,
    _ball,
    _eliminate,
    _has_path,
    _is_active,
)


@dataclass(frozen=True)
class OracleConfig:
    improver: ImproverConfig = field(default_factory=ImproverConfig)
    probe_budget: int | None = None

    @property
    def radius(self) -> int:
        """Dependency radius for a vertex's matched status."""
        T, P = self.improver.T, self.improver.phases
        return 8 * T * P + 4 * T

    @property
    def endpoint_radius(self) -> int:
        return self.radius + 2 * self.improver.T + 1


@dataclass(frozen=True)
class EstimateReport:
    s_hat: float
    q_hat: float
    lower: float
    upper: float
    epsilon: float
    delta: float
    samples: int
    probes: int
    T: int
    matched: int
    bad: int

    @property
    def estimate(self) -> float:
        """Bracket midpoint."""
        return (self.lower + self.upper) / 2

    @property
    def probes_per_query(self) -> float:
        return self.probes / self.samples

    def to_dict(self) -> dict:
        return {
            "s_hat": self.s_hat,
            "q_hat": self.q_hat,
            "lower": self.lower,
            "upper": self.upper,
            "estimate": self.estimate,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "samples": self.samples,
            "probes": self.probes,
            "probes_per_query": self.probes_per_query,
            "T": self.T,
            "matched": self.matched,
            "bad": self.bad,
        }


def hoeffding_samples(epsilon: float, delta: float) -> int:
    """Samples so that two Hoeffding bounds hold jointly with prob. 1-delta."""
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return math.ceil(math.log(4 / delta) / (2 * epsilon * epsilon))


@dataclass
class _Ball:
    layers: list[np.ndarray]
    whole_component: bool
    adj: Adjacency | None = None
    dist: dict[int, int] | None = None

    @property
    def vertices(self) -> list[int]:
        return np.concatenate(self.layers).tolist()


class LocalOracle:
    """Answers matched-status queries for one (graph, config) pair.

    Probe accounting: one probe is one adjacency-list read.  With
    ``record=True`` the probed vertices of the latest query are kept in
    ``last_probed`` for locality checks.
    """

    def __init__(self, g: Graph, cfg: OracleConfig, record: bool = False):
        self.g = g
        self.cfg = cfg
        self.record = record
        self.probes = 0
        self.last_probes = 0
        self.last_probed: set[int] = set()
        self._components: dict[int, dict[int, int]] = {}
        self._lock = threading.Lock()

    def _probe_ball(self, v: int, radius: int) -> _Ball:
        layers = bfs_layers(self.g, [v], radius)
        count = sum(int(layer.size) for layer in layers)
        budget = self.cfg.probe_budget
        if budget is not None and count > budget:
            with self._lock:
                self.probes += budget
                self.last_probes = budget
            raise ProbeBudgetExceeded(f"query at {v} needs {count} probes, budget {budget}")
        with self._lock:
            self.probes += count
            self.last_probes = count
        # a frontier that ran dry before the radius means the component is exhausted
        whole = len(layers) <= radius
        if self.record:
            self.last_probed = set(np.concatenate(layers).tolist())
        if whole:
            # every neighbour of a component vertex is in the component
            return _Ball(layers, True, self.g.adj)
        dist = {}
        for k, layer in enumerate(layers):
            for x in layer.tolist():
                dist[x] = k
        gadj = self.g.adj
        adj = {x: tuple(y for y in gadj[x] if y in dist) for x in dist}
        return _Ball(layers, False, adj, dist)

    def _replay(self, ball: _Ball, margin: int) -> dict[int, int]:
        """Replay all rounds inside ``ball``; exact on ``B_margin(v)``."""
        T, P, seed = self.cfg.improver.T, self.cfg.improver.phases, self.cfg.improver.seed
        adj = ball.adj
        vertices = ball.vertices
        mate = dict.fromkeys(vertices, -1)
        ids = np.asarray(vertices, dtype=np.int64)
        for p in range(1, P + 1):
            if ball.whole_component:
                region = vertices
            else:
                reach = 8 * T * (P - p) + margin + 4 * T
                region = [u for u in vertices if ball.dist[u] <= reach]
            key = dict(zip(vertices, round_keys(seed, p, ids)))
            for u in sorted(region):
                if _is_active(adj, key, u, 8 * T):
                    _eliminate(adj, mate, _ball(adj, u, 4 * T), T)
        return mate

    def _state(self, v: int, radius: int, margin: int) -> tuple[dict, dict]:
        ball = self._probe_ball(v, radius)
        if ball.whole_component:
            comp = min(int(layer[0]) for layer in ball.layers)
            mate = self._components.get(comp)
            if mate is None:
                mate = self._replay(ball, margin)
                self._components[comp] = mate
            return ball.adj, mate
        return ball.adj, self._replay(ball, margin)

    def query_matched(self, v: int) -> tuple[bool, int | None]:
        _, mate = self._state(v, self.cfg.radius, 0)
        w = mate[v]
        return (w != -1, None if w == -1 else w)

    def query(self, v: int) -> tuple[int | None, bool]:
        """``(partner, bad)`` from a single ``B_{R+2T+1}(v)`` extraction."""
        T = self.cfg.improver.T
        adj, mate = self._state(v, self.cfg.endpoint_radius, 2 * T + 1)
        w = mate[v]
        if w != -1:
            return w, False
        return None, _has_path(adj, mate, v, T)

    def query_short_path_endpoint(self, v: int) -> bool:
        return self.query(v)[1]


def query_matched(g: Graph, cfg: OracleConfig, v: int) -> tuple[bool, int | None]:
    """Status of ``v`` in ``run_improver(g, cfg.improver)``, computed locally."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range")
    return LocalOracle(g, cfg).query_matched(v)


def query_short_path_endpoint(g: Graph, cfg: OracleConfig, v: int) -> bool:
    """True iff ``v`` is unmatched after the improver and starts a short path."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range")
    return LocalOracle(g, cfg).query_short_path_endpoint(v)


def sample_vertices(n: int, count: int, sample_seed: int) -> list[int]:
    """Uniform sample with replacement, fixed by ``sample_seed``."""
    return [bounded(mix3(sample_seed ^ SAMPLE_TAG, 0, i), n) for i in range(count)]


def estimate_matching_ratio(
    g: Graph,
    cfg: OracleConfig,
    epsilon: float,
    delta: float,
    sample_seed: int = 0,
    threads: int = 1,
    oracle: LocalOracle | None = None,
) -> EstimateReport:
    """Sample vertices, query each locally and bracket the matching ratio.

    With probability at least ``1 - delta`` the returned interval contains the
    maximum-matching ratio of ``g``.  Probes per query depend on the ball
    size around the sample, not on ``n`` directly.
    """
    samples = hoeffding_samples(epsilon, delta)
    T = cfg.improver.T
    if g.n == 0:
        return EstimateReport(0.0, 0.0, 0.0, 0.0, epsilon, delta, samples, 0, T, 0, 0)
    oracle = oracle if oracle is not None else LocalOracle(g, cfg)
    picks = sample_vertices(g.n, samples, sample_seed)
    before = oracle.probes
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            answers = list(pool.map(oracle.query, picks))
    else:
        answers = [oracle.query(v) for v in picks]
    matched = sum(1 for w, _ in answers if w is not None)
    bad = sum(1 for _, b in answers if b)
    s_hat = matched / (2 * samples)
    q_hat = bad / samples
    ratio = Fraction(T + 1, T)
    lower = max(0.0, s_hat - epsilon)
    upper = min(1.0, (s_hat + epsilon) * float(ratio) + q_hat + epsilon)
    return EstimateReport(
        s_hat=s_hat,
        q_hat=q_hat,
        lower=lower,
        upper=upper,
        epsilon=epsilon,
        delta=delta,
        samples=samples,
        probes=oracle.probes - before,
        T=T,
        matched=matched,
        bad=bad,
    )
