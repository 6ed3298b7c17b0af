import itertools

import numpy as np
import pytest

from oracles import batch_crossing_counts, crossing_count_reference, mean_and_se
from treecross import (
    EdgeSpan,
    LinearArrangement,
    all_labeled_trees,
    build_tree,
    c_max,
    count_crossings,
    data_file,
    e0,
    edges_cross,
    read_arrangement,
    read_tree,
)
from treecross.crossings import count_crossings_identity
from treecross.graph_core import identity_positions
from treecross.random_trees import aldous_broder, stream


def identity(n):
    return LinearArrangement(identity_positions(n))


class TestPredicate:
    def test_interleaving(self):
        assert edges_cross(EdgeSpan(1, 3), EdgeSpan(2, 4))

    def test_nesting(self):
        assert not edges_cross(EdgeSpan(1, 4), EdgeSpan(2, 3))

    def test_disjoint_intervals(self):
        assert not edges_cross(EdgeSpan(1, 2), EdgeSpan(3, 4))

    def test_symmetry(self):
        for (a, b), (c, d) in itertools.combinations(itertools.combinations(range(1, 7), 2), 2):
            if len({a, b, c, d}) < 4:
                continue
            assert edges_cross(EdgeSpan(a, b), EdgeSpan(c, d)) == edges_cross(
                EdgeSpan(c, d), EdgeSpan(a, b)
            )

    def test_shared_position_asserts(self):
        with pytest.raises(AssertionError):
            edges_cross(EdgeSpan(1, 3), EdgeSpan(3, 5))


class TestCountCrossings:
    def test_sentence_a_has_none(self):
        tree = read_tree(data_file("sentence_a.edges"))
        counted = count_crossings(tree, identity(7))
        assert counted.total == 0
        assert counted.relative == 0.0

    def test_sentence_b_has_one(self):
        tree = read_tree(data_file("sentence_b.edges"))
        arr = read_arrangement(data_file("sentence_b.positions"), 7)
        counted = count_crossings(tree, arr)
        assert counted.total == 1
        assert counted.relative == pytest.approx(1 / 9)
        # the fronted adverb's edge crosses the noun-pronoun edge
        assert counted.per_edge[(6, 7)] == 1
        assert counted.per_edge[(2, 3)] == 1

    def test_star_relative_absent(self):
        tree = build_tree(5, [(1, v) for v in range(2, 6)])
        counted = count_crossings(tree, LinearArrangement((3, 1, 2, 5, 4)))
        assert counted.total == 0
        assert counted.relative is None

    def test_per_edge_sums_to_twice_total(self):
        rng = stream(21, 0)
        for _ in range(50):
            n = int(rng.integers(4, 15))
            tree = aldous_broder(n, rng)
            arr = LinearArrangement(tuple(int(p) + 1 for p in rng.permutation(n)))
            counted = count_crossings(tree, arr)
            assert sum(counted.per_edge.values()) == 2 * counted.total

    def test_reversal_invariance(self):
        rng = stream(21, 1)
        for _ in range(50):
            n = int(rng.integers(2, 15))
            tree = aldous_broder(n, rng)
            arr = LinearArrangement(tuple(int(p) + 1 for p in rng.permutation(n)))
            assert count_crossings(tree, arr).total == count_crossings(tree, arr.reversed()).total

    def test_bounded_by_potential(self):
        rng = stream(21, 2)
        for _ in range(100):
            n = int(rng.integers(2, 20))
            tree = aldous_broder(n, rng)
            arr = LinearArrangement(tuple(int(p) + 1 for p in rng.permutation(n)))
            assert 0 <= count_crossings(tree, arr).total <= c_max(tree)

    def test_matches_reference_implementation(self):
        rng = stream(21, 3)
        for _ in range(100):
            n = int(rng.integers(2, 12))
            tree = aldous_broder(n, rng)
            positions = tuple(int(p) + 1 for p in rng.permutation(n))
            arr = LinearArrangement(positions)
            assert count_crossings(tree, arr).total == crossing_count_reference(
                tree.edges, positions
            )

    def test_no_crossings_below_four_vertices(self):
        # exhaustive: every tree and every arrangement for n <= 3
        for n in (1, 2, 3):
            for tree in all_labeled_trees(n):
                for perm in itertools.permutations(range(1, n + 1)):
                    assert count_crossings(tree, LinearArrangement(perm)).total == 0


class TestIdentityCounter:
    def test_matches_general_counter(self):
        rng = stream(21, 4)
        for _ in range(100):
            n = int(rng.integers(2, 15))
            tree = aldous_broder(n, rng)
            expected = count_crossings(tree, identity(n)).total
            assert count_crossings_identity(list(tree.edges)) == expected

    def test_cap_exits_early(self):
        # a heavily crossing configuration: spokes 1-5, 2-6, 3-7, 4-8 all interleave
        edges = [(1, 5), (2, 6), (3, 7), (4, 8), (8, 9), (9, 10), (5, 2), (6, 3), (7, 4)]
        # not a tree, but the counter only looks at pairs
        full = count_crossings_identity(edges)
        assert full > 3
        assert count_crossings_identity(edges, cap=3) == 4  # stops just past the cap


class TestMonteCarloBridge:
    def test_mean_crossings_matches_blind_expectation(self):
        # lighter sibling of the acceptance check: one tree, 30k arrangements
        rng = stream(21, 5)
        tree = aldous_broder(8, rng)
        perms = np.vstack([rng.permutation(8) + 1 for _ in range(30_000)])
        counts = batch_crossing_counts(tree.edges, perms)
        mean, se = mean_and_se(counts)
        assert abs(mean - e0(tree)) <= 4 * se
