"""Scale-free interaction topology built by preferential attachment.

The generator grows a graph from a fully connected core: each new node
links to a fixed number of distinct existing nodes, drawn with
probability proportional to their current degree. Generated graphs are
simple (no self-loops, no duplicate edges), connected, and fully
determined by their :class:`NetworkConfig`, seed included.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NetworkConfig:
    """Parameters of the preferential-attachment generator.

    ``seed_core_size`` nodes start as a clique; every later node brings
    ``attach_count`` edges. ``attach_count`` may not exceed the core size,
    otherwise a new node could not find enough distinct targets.
    """

    n: int
    seed_core_size: int = 3
    attach_count: int = 2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.seed_core_size < 2:
            raise ValueError(f"seed_core_size must be >= 2, got {self.seed_core_size}")
        if not 1 <= self.attach_count <= self.seed_core_size:
            raise ValueError(
                f"attach_count must be in [1, seed_core_size={self.seed_core_size}], "
                f"got {self.attach_count}"
            )
        if self.n < self.seed_core_size:
            raise ValueError(
                f"n must be >= seed_core_size={self.seed_core_size}, got {self.n}"
            )

    @property
    def expected_edge_count(self) -> int:
        """Edge count forced by construction: core clique + attachments."""
        core = self.seed_core_size
        return core * (core - 1) // 2 + (self.n - core) * self.attach_count


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph over node ids 0..n-1.

    ``edges`` holds normalized (u < v) pairs sorted ascending;
    ``adjacency`` holds per-node neighbor tuples sorted ascending.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges) -> Graph:
        """Build a graph from an iterable of (u, v) pairs, validating them."""
        if n < 1:
            raise ValueError(f"graph needs at least one node, got n={n}")
        normalized: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            normalized.add((u, v) if u < v else (v, u))
        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in normalized:
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        return cls(
            n=n,
            edges=tuple(sorted(normalized)),
            adjacency=tuple(tuple(sorted(s)) for s in neighbor_sets),
        )

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


def generate_scale_free(config: NetworkConfig) -> Graph:
    """Grow a scale-free graph by degree-proportional attachment.

    Starts from a clique on the first ``seed_core_size`` nodes. Each new
    node picks ``attach_count`` distinct targets among the existing nodes
    via repeated degree-proportional draws, discarding duplicates; its own
    edges are added only after all its targets are chosen, so the draws
    see the degrees as they were before the node joined. Identical config
    (seed included) yields an identical edge set.
    """
    rng = np.random.default_rng(config.seed)
    n, core, attach = config.n, config.seed_core_size, config.attach_count

    edges: list[tuple[int, int]] = [
        (i, j) for i in range(core) for j in range(i + 1, core)
    ]
    degrees = np.zeros(n, dtype=np.int64)
    degrees[:core] = core - 1

    for v in range(core, n):
        cumulative = np.cumsum(degrees[:v])
        total = cumulative[-1]
        targets: set[int] = set()
        while len(targets) < attach:
            draw = rng.random() * total
            targets.add(int(np.searchsorted(cumulative, draw, side="right")))
        for u in sorted(targets):
            edges.append((u, v))
            degrees[u] += 1
            degrees[v] += 1

    return Graph.from_edges(n, edges)


def neighbors(g: Graph, v: int) -> list[int]:
    """Neighbors of ``v`` sorted ascending (stable order for reproducibility)."""
    if not 0 <= v < g.n:
        raise IndexError(f"node {v} out of range for graph with n={g.n}")
    return list(g.adjacency[v])


def is_connected(g: Graph) -> bool:
    """True iff every node is reachable from node 0."""
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    reached = 1
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                reached += 1
                queue.append(w)
    return reached == g.n


@dataclass(frozen=True)
class DegreeStats:
    """Degree histogram plus a log-log least-squares slope diagnostic."""

    histogram: dict[int, int]
    max_degree: int
    slope: float | None


def degree_stats(g: Graph) -> DegreeStats:
    """Histogram over observed degrees and the fitted power-law slope.

    The slope is a least-squares fit of log(count) against log(degree)
    over the observed degrees >= 1; it is None when fewer than two such
    degrees occur (a flat histogram has no meaningful slope).
    """
    histogram: dict[int, int] = {}
    for v in range(g.n):
        k = g.degree(v)
        histogram[k] = histogram.get(k, 0) + 1
    max_degree = max(histogram)

    points = [(k, c) for k, c in histogram.items() if k >= 1]
    if len(points) < 2:
        return DegreeStats(histogram, max_degree, None)
    log_k = np.log([k for k, _ in points])
    log_c = np.log([c for _, c in points])
    slope = float(np.polyfit(log_k, log_c, 1)[0])
    return DegreeStats(histogram, max_degree, slope)


def edge_list_text(g: Graph) -> str:
    """Edge-list export: one ``u v`` pair per line, ascending by (u, v)."""
    return "".join(f"{u} {v}\n" for u, v in g.edges)
