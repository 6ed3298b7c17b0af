"""Crossing-number predictors for trees in linear arrangements.

Three levels of knowledge about the arrangement:

* ``e0``: only the tree is known. The expected number of crossings under
  a uniformly random arrangement is one third of the potentially crossing
  pairs, since two vertex-disjoint edges cross with probability 1/3.
* ``e2``: additionally, the observed length of every edge is known, and
  each potentially crossing pair contributes the exact probability that
  two edges of those lengths cross (``p_cross_given_lengths``).
* ``e_full``: full knowledge of the length function. Exact expectation of
  the crossing count over every arrangement that preserves all edge
  lengths, by brute-force enumeration (small n only).

Placement probabilities are exact rationals; floats appear only at the
reporting boundary.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional

import numpy as np

from .graph_core import LabeledTree, LinearArrangement, c_max, degree_second_moment

#: Largest n for which the length-preserving permutation scan runs by default.
BRUTE_FORCE_CAP = 9


def _check_length(n: int, d: int, name: str) -> None:
    if not 1 <= d <= n - 1:
        raise ValueError(f"{name}={d} out of range 1..{n - 1} for n={n}")


def beta_pairs(n: int, d1: int, d2: int) -> int:
    """Valid placements of two vertex-disjoint edges of lengths d1 and d2.

    Counts ordered pairs (s1, s2) of initial positions with s1 in 1..n-d1,
    s2 in 1..n-d2 and no shared endpoint, by explicit enumeration.
    """
    _check_length(n, d1, "d1")
    _check_length(n, d2, "d2")
    count = 0
    for s1 in range(1, n - d1 + 1):
        e1 = s1 + d1
        for s2 in range(1, n - d2 + 1):
            e2 = s2 + d2
            if s2 != s1 and s2 != e1 and e2 != s1 and e2 != e1:
                count += 1
    return count


def alpha_pairs(n: int, d1: int, d2: int) -> int:
    """Valid placements of two edges of lengths d1, d2 that interleave."""
    _check_length(n, d1, "d1")
    _check_length(n, d2, "d2")
    count = 0
    for s1 in range(1, n - d1 + 1):
        e1 = s1 + d1
        for s2 in range(1, n - d2 + 1):
            e2 = s2 + d2
            if s2 == s1 or s2 == e1 or e2 == s1 or e2 == e1:
                continue
            if (s1 < s2 < e1 < e2) or (s2 < s1 < e2 < e1):
                count += 1
    return count


def p_cross_given_lengths(n: int, d1: int, d2: int) -> Fraction:
    """Probability that two disjoint edges of the given lengths cross.

    Ratio of interleaving placements to valid placements; 0 by convention
    when no valid placement exists.
    """
    b = beta_pairs(n, d1, d2)
    if b == 0:
        return Fraction(0)
    return Fraction(alpha_pairs(n, d1, d2), b)


def _pair_counts(n: int, d1: int, d2: int) -> tuple[int, int]:
    # Single pass computing (interleaving, valid) together; used by the
    # table builder, cross-checked against alpha_pairs/beta_pairs in tests.
    crossing = 0
    valid = 0
    for s1 in range(1, n - d1 + 1):
        e1 = s1 + d1
        for s2 in range(1, n - d2 + 1):
            e2 = s2 + d2
            if s2 == s1 or s2 == e1 or e2 == s1 or e2 == e1:
                continue
            valid += 1
            if (s1 < s2 < e1 < e2) or (s2 < s1 < e2 < e1):
                crossing += 1
    return crossing, valid


@dataclass(frozen=True)
class PCrossTable:
    """Crossing probabilities for every length pair at a fixed n.

    ``fractions[d1 - 1][d2 - 1]`` is the exact probability; ``floats`` is
    an (n, n) array indexed directly by (d1, d2) with a zero padding row
    and column, convenient for numeric inner loops. The float array is
    frozen read-only so the table can be shared.
    """

    n: int
    fractions: tuple[tuple[Fraction, ...], ...]
    floats: np.ndarray

    def probability(self, d1: int, d2: int) -> Fraction:
        _check_length(self.n, d1, "d1")
        _check_length(self.n, d2, "d2")
        return self.fractions[d1 - 1][d2 - 1]


@lru_cache(maxsize=None)
def build_p_table(n: int) -> PCrossTable:
    """Full (n-1) x (n-1) crossing-probability table, memoized per n.

    Only the lower triangle is enumerated; the table is symmetric because
    placement validity and interleaving are symmetric in the two edges.
    """
    if n < 2:
        raise ValueError(f"table needs n >= 2, got {n}")
    grid = [[Fraction(0)] * (n - 1) for _ in range(n - 1)]
    for d1 in range(1, n):
        for d2 in range(1, d1 + 1):
            crossing, valid = _pair_counts(n, d1, d2)
            p = Fraction(crossing, valid) if valid else Fraction(0)
            grid[d1 - 1][d2 - 1] = p
            grid[d2 - 1][d1 - 1] = p
    floats = np.zeros((n, n), dtype=np.float64)
    for d1 in range(1, n):
        for d2 in range(1, n):
            floats[d1, d2] = float(grid[d1 - 1][d2 - 1])
    floats.setflags(write=False)
    return PCrossTable(n=n, fractions=tuple(tuple(row) for row in grid), floats=floats)


@dataclass(frozen=True)
class PredictionReport:
    """Predicted crossings for one (tree, arrangement) pair.

    Relative values are None when no pair of edges can cross.
    """

    e0: float
    e2: float
    e0_rel: Optional[float]
    e2_rel: Optional[float]
    c_max: int
    k2: float


def e0(tree: LabeledTree) -> float:
    """Expected crossings knowing only the tree: potential pairs / 3."""
    return c_max(tree) / 3.0


def e2(tree: LabeledTree, arr: LinearArrangement, table: PCrossTable) -> float:
    """Expected crossings from pairwise length knowledge.

    Sums, over unordered vertex-disjoint edge pairs, the probability that
    two edges with the observed lengths cross.
    """
    if table.n != tree.n:
        raise ValueError(f"table built for n={table.n}, tree has n={tree.n}")
    pos = arr.positions
    edges = tree.edges
    lengths = [abs(pos[u - 1] - pos[v - 1]) for u, v in edges]
    p = table.floats
    total = 0.0
    for i in range(len(edges)):
        u1, v1 = edges[i]
        d1 = lengths[i]
        for j in range(i + 1, len(edges)):
            u2, v2 = edges[j]
            if u2 == u1 or u2 == v1 or v2 == u1 or v2 == v1:
                continue
            total += p[d1, lengths[j]]
    return float(total)


def prediction_report(
    tree: LabeledTree, arr: LinearArrangement, table: Optional[PCrossTable] = None
) -> PredictionReport:
    """Bundle e0 and e2 with their relative versions."""
    if table is None:
        table = build_p_table(tree.n) if tree.n >= 2 else None
    potential = c_max(tree)
    blind = potential / 3.0
    informed = e2(tree, arr, table) if table is not None else 0.0
    return PredictionReport(
        e0=blind,
        e2=informed,
        e0_rel=blind / potential if potential > 0 else None,
        e2_rel=informed / potential if potential > 0 else None,
        c_max=potential,
        k2=degree_second_moment(tree),
    )


@dataclass(frozen=True)
class LengthClassReport:
    """Exhaustive scan of all arrangements preserving a length profile.

    ``pair_crossings`` maps each vertex-disjoint edge pair to the number
    of class members in which that pair crosses.
    """

    class_size: int
    mean_crossings: float
    pair_crossings: Mapping[tuple[tuple[int, int], tuple[int, int]], int]


def length_preserving_report(
    tree: LabeledTree, arr: LinearArrangement, cap: int = BRUTE_FORCE_CAP
) -> LengthClassReport:
    """Enumerate every arrangement with the same edge lengths as ``arr``.

    The class is defined by unsigned lengths: a permutation belongs when
    every tree edge has the same |position difference| as under the
    reference arrangement. The reference itself always qualifies, so the
    class is never empty. Refuses n above ``cap`` (n! scan).
    """
    n = tree.n
    if n > cap:
        raise ValueError(
            f"length-preserving scan needs {n}! permutations; refusing n={n} > cap={cap}"
        )
    pos = arr.positions
    edges = tree.edges
    target = [abs(pos[u - 1] - pos[v - 1]) for u, v in edges]
    disjoint = []
    for i in range(len(edges)):
        u1, v1 = edges[i]
        for j in range(i + 1, len(edges)):
            u2, v2 = edges[j]
            if u2 != u1 and u2 != v1 and v2 != u1 and v2 != v1:
                disjoint.append((i, j))
    class_size = 0
    crossing_total = 0
    pair_counts = {(edges[i], edges[j]): 0 for i, j in disjoint}
    for perm in itertools.permutations(range(1, n + 1)):
        ok = True
        for (u, v), d in zip(edges, target):
            if abs(perm[u - 1] - perm[v - 1]) != d:
                ok = False
                break
        if not ok:
            continue
        class_size += 1
        for i, j in disjoint:
            u1, v1 = edges[i]
            u2, v2 = edges[j]
            p1, q1 = perm[u1 - 1], perm[v1 - 1]
            s1, e1 = (p1, q1) if p1 < q1 else (q1, p1)
            p2, q2 = perm[u2 - 1], perm[v2 - 1]
            s2, e2 = (p2, q2) if p2 < q2 else (q2, p2)
            if (s1 < s2 < e1 < e2) or (s2 < s1 < e2 < e1):
                crossing_total += 1
                pair_counts[(edges[i], edges[j])] += 1
    return LengthClassReport(
        class_size=class_size,
        mean_crossings=crossing_total / class_size,
        pair_crossings=pair_counts,
    )


def e_full(tree: LabeledTree, arr: LinearArrangement, cap: int = BRUTE_FORCE_CAP) -> float:
    """Expected crossings over the length-preserving arrangement class."""
    return length_preserving_report(tree, arr, cap=cap).mean_crossings


def joint_length_distribution(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Distribution of the two lengths of two disjoint random edges.

    Enumerates every placement of four labeled distinct vertices into n
    positions (all n(n-1)(n-2)(n-3) ordered placements equally likely) and
    tallies (|p1 - p2|, |p3 - p4|). Entry [d1 - 1][d2 - 1]; sums to 1.
    """
    if n < 4:
        raise ValueError(f"two disjoint edges need n >= 4, got {n}")
    counts = [[0] * (n - 1) for _ in range(n - 1)]
    total = 0
    for p1, p2, p3, p4 in itertools.permutations(range(1, n + 1), 4):
        counts[abs(p1 - p2) - 1][abs(p3 - p4) - 1] += 1
        total += 1
    return tuple(
        tuple(Fraction(c, total) for c in row) for row in counts
    )


def verify_identity(n: int) -> Fraction:
    """Exact mix of conditional crossing probabilities over the length law.

    Returns sum over (d1, d2) of p(cross | d1, d2) * p(d1, d2) in rational
    arithmetic. The unconditional crossing probability is 1/3, so this
    must equal Fraction(1, 3) exactly for every n >= 4.
    """
    table = build_p_table(n)
    joint = joint_length_distribution(n)
    acc = Fraction(0)
    for d1 in range(1, n):
        for d2 in range(1, n):
            acc += table.fractions[d1 - 1][d2 - 1] * joint[d1 - 1][d2 - 1]
    return acc


def expected_k2_random_tree(n: int) -> float:
    """Mean squared degree of a uniformly random labeled tree."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return (1.0 - 1.0 / n) * (5.0 - 6.0 / n)


def expected_e0_random_tree(n: int) -> float:
    """Average of e0 over uniformly random labeled trees."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return n * n / 6.0 - n + 11.0 / 6.0 - 1.0 / n
