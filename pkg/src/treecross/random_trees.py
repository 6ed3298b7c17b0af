"""Uniformly random labeled trees and rejection sampling on crossing counts.

Trees are drawn with the first-entry random walk on the complete graph: a
walk started at a uniform vertex steps to a uniform other vertex until all
vertices have been visited, and the edges that first reach each vertex
form a uniform spanning tree. Vertex labels double as positions (the
identity arrangement), so a sampled tree comes with a random arrangement
for free.

Randomness discipline: every consumer derives an independent generator
from a 64-bit master seed and an integer key path via ``stream``. Derived
streams make parallel runs reproducible for any worker count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .crossings import count_crossings_identity
from .graph_core import LabeledTree, LinearArrangement, build_tree, identity_positions


class SamplingExhaustedError(RuntimeError):
    """Rejection sampling hit its attempt budget before accepting."""

    def __init__(self, attempts: int, message: str):
        super().__init__(message)
        self.attempts = attempts


@dataclass(frozen=True)
class SamplerConfig:
    """Settings for conditioned tree sampling.

    ``max_crossings`` is the rejection threshold on the crossing count
    under the identity arrangement; None accepts every tree. The attempt
    budget applies per accepted tree and exhaustion is an error, never a
    silently relaxed condition.
    """

    n: int
    seed: int
    max_crossings: Optional[int] = None
    max_attempts: int = 10_000_000

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.max_attempts < 1:
            raise ValueError(f"max_attempts must be >= 1, got {self.max_attempts}")


def stream(seed: int, *key: int) -> np.random.Generator:
    """Generator derived from (master seed, integer key path).

    PCG64 seeded through SeedSequence spawn keys; the same (seed, key)
    always yields the same stream, and distinct keys give independent
    streams.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def random_walk_tree_edges(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Raw first-entry edge list of a complete-graph random walk."""
    if n == 1:
        return []
    visited = [False] * (n + 1)
    cur = int(rng.integers(1, n + 1))
    visited[cur] = True
    edges = []
    while len(edges) < n - 1:
        step = int(rng.integers(0, n - 1))
        # uniform over the n - 1 vertices other than cur
        nxt = step + 1 if step < cur - 1 else step + 2
        if not visited[nxt]:
            visited[nxt] = True
            edges.append((cur, nxt))
        cur = nxt
    return edges


def aldous_broder(n: int, rng: np.random.Generator) -> LabeledTree:
    """Uniformly random labeled tree on vertices 1..n."""
    return build_tree(n, random_walk_tree_edges(n, rng))


def identity_arrangement(n: int) -> LinearArrangement:
    """Arrangement placing every vertex at its own label."""
    return LinearArrangement(identity_positions(n))


def sample_conditioned(
    config: SamplerConfig, rng: np.random.Generator
) -> tuple[LabeledTree, int]:
    """Draw trees until the identity-arrangement crossing count is accepted.

    Returns the accepted tree and the number of attempts consumed, for
    rejection-rate reporting. Raises SamplingExhaustedError when the
    budget runs out; the attempt count rises steeply with n under tight
    thresholds, which is why the budget exists.
    """
    threshold = config.max_crossings
    for attempt in range(1, config.max_attempts + 1):
        edges = random_walk_tree_edges(config.n, rng)
        if threshold is None or count_crossings_identity(edges, cap=threshold) <= threshold:
            return build_tree(config.n, edges), attempt
    raise SamplingExhaustedError(
        config.max_attempts,
        f"no tree with at most {threshold} crossings in {config.max_attempts} attempts "
        f"(n={config.n})",
    )


def all_labeled_trees(n: int) -> Iterator[LabeledTree]:
    """Every labeled tree on 1..n, decoded from integer sequences.

    There are n^(n-2) trees for n >= 2. Each length-(n-2) sequence over
    1..n decodes to a distinct tree, so this enumeration is exhaustive
    and duplicate-free. Only practical for small n.
    """
    if n == 1:
        yield LabeledTree(n=1, edges=())
        return
    if n == 2:
        yield build_tree(2, [(1, 2)])
        return

    def decode(seq: tuple[int, ...]) -> LabeledTree:
        degree = [1] * (n + 1)
        for x in seq:
            degree[x] += 1
        edges = []
        # classic decode: repeatedly join the smallest leaf to the next code entry
        import heapq

        leaves = [v for v in range(1, n + 1) if degree[v] == 1]
        heapq.heapify(leaves)
        for x in seq:
            leaf = heapq.heappop(leaves)
            edges.append((leaf, x))
            degree[x] -= 1
            if degree[x] == 1:
                heapq.heappush(leaves, x)
        u = heapq.heappop(leaves)
        v = heapq.heappop(leaves)
        edges.append((u, v))
        return build_tree(n, edges)

    import itertools

    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        yield decode(seq)
