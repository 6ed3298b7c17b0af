import numpy as np
import pytest

from treecross import (
    LabeledTree,
    LinearArrangement,
    ValidationError,
    all_labeled_trees,
    build_tree,
    c_max,
    degree_second_moment,
    disjoint_edge_pairs,
    edge_span,
    read_arrangement,
    read_tree,
    total_length,
)
from treecross.graph_core import format_tree, identity_positions, iter_trees
from treecross.random_trees import aldous_broder, stream


def path(n):
    return build_tree(n, [(i, i + 1) for i in range(1, n)])


def star(n):
    return build_tree(n, [(1, v) for v in range(2, n + 1)])


def identity(n):
    return LinearArrangement(identity_positions(n))


class TestBuildTree:
    def test_path_and_star(self):
        t = path(4)
        assert t.n == 4 and len(t.edges) == 3
        s = star(4)
        assert s.degrees()[1] == 3

    def test_cycle_rejected(self):
        with pytest.raises(ValidationError, match="cycle"):
            build_tree(4, [(1, 2), (2, 3), (1, 3)])

    def test_wrong_edge_count(self):
        with pytest.raises(ValidationError, match="needs 3 edges"):
            build_tree(4, [(1, 2), (2, 3)])

    def test_self_loop(self):
        with pytest.raises(ValidationError, match="self-loop"):
            build_tree(3, [(1, 1), (2, 3)])

    def test_duplicate_edge(self):
        with pytest.raises(ValidationError, match="duplicate"):
            build_tree(3, [(1, 2), (2, 1)])

    def test_vertex_out_of_range(self):
        with pytest.raises(ValidationError, match="outside"):
            build_tree(3, [(1, 2), (2, 5)])

    def test_single_vertex(self):
        assert build_tree(1, []).edges == ()

    def test_edges_normalized_sorted(self):
        t = build_tree(3, [(3, 2), (2, 1)])
        assert t.edges == ((1, 2), (2, 3))


class TestArrangement:
    def test_bijection_required(self):
        with pytest.raises(ValidationError, match="bijection"):
            LinearArrangement((1, 1, 3))

    def test_reversed(self):
        arr = LinearArrangement((2, 1, 4, 3))
        assert arr.reversed().positions == (3, 4, 1, 2)


class TestSpansAndLength:
    def test_adjacent_positions(self):
        span = edge_span(path(4), identity(4), (2, 3))
        assert (span.start, span.end, span.length) == (2, 3, 1)

    def test_scrambled_arrangement(self):
        arr = LinearArrangement((1, 4, 2, 3))
        span = edge_span(path(4), arr, (1, 2))
        assert (span.start, span.end, span.length) == (1, 4, 3)

    def test_star_outer_edge(self):
        span = edge_span(star(4), identity(4), (1, 4))
        assert (span.start, span.end, span.length) == (1, 4, 3)

    def test_edge_not_in_tree(self):
        with pytest.raises(ValidationError, match="not in the tree"):
            edge_span(path(4), identity(4), (1, 3))

    def test_total_length_path_identity(self):
        assert total_length(path(4), identity(4)) == 3

    def test_total_length_star_identity(self):
        assert total_length(star(4), identity(4)) == 6

    def test_total_length_scrambled(self):
        # positions of 1..4 are 2,1,4,3: |2-1| + |1-4| + |4-3| = 6... recompute
        # edges (1,2): |2-1|=1? no: pi(1)=2, pi(2)=1 -> 1; (2,3): |1-4|=3; (3,4): |4-3|=1
        arr = LinearArrangement((2, 1, 4, 3))
        assert total_length(path(4), arr) == 1 + 3 + 1

    def test_reversal_invariance(self):
        rng = stream(11, 90)
        for _ in range(50):
            n = int(rng.integers(2, 20))
            tree = aldous_broder(n, rng)
            arr = LinearArrangement(tuple(int(p) + 1 for p in rng.permutation(n)))
            assert total_length(tree, arr) == total_length(tree, arr.reversed())


class TestDegreeStatistics:
    def test_k2_path(self):
        assert degree_second_moment(path(4)) == pytest.approx(2.5)

    def test_k2_star(self):
        assert degree_second_moment(star(4)) == pytest.approx(3.0)

    def test_handshake(self):
        rng = stream(12, 91)
        for _ in range(100):
            n = int(rng.integers(1, 40))
            tree = aldous_broder(n, rng)
            assert sum(tree.degrees()) == 2 * (n - 1)


class TestPotentialCrossings:
    def test_star_zero(self):
        for n in range(2, 12):
            assert c_max(star(n)) == 0

    def test_path4(self):
        assert c_max(path(4)) == 1
        assert disjoint_edge_pairs(path(4)) == 1

    def test_star5_no_disjoint_pairs(self):
        assert disjoint_edge_pairs(star(5)) == 0

    def test_path_closed_form(self):
        # (n-2)(n-3)/2 also covers n = 2 and 3, where it vanishes
        for n in range(2, 31):
            assert c_max(path(n)) == (n - 2) * (n - 3) // 2

    def test_exhaustive_small_trees(self):
        for n in range(1, 8):
            for tree in all_labeled_trees(n):
                assert c_max(tree) == disjoint_edge_pairs(tree)

    def test_random_trees_up_to_50(self):
        rng = stream(13, 92)
        for _ in range(1000):
            n = int(rng.integers(2, 51))
            tree = aldous_broder(n, rng)
            assert c_max(tree) == disjoint_edge_pairs(tree)


class TestFileFormats:
    def test_round_trip(self, tmp_path):
        tree = build_tree(5, [(1, 3), (2, 3), (3, 4), (4, 5)])
        p = tmp_path / "t.edges"
        p.write_text(format_tree(tree, comments=["example"]))
        assert read_tree(p) == tree

    def test_comments_and_blanks(self, tmp_path):
        p = tmp_path / "t.edges"
        p.write_text("# a comment\n\n3\n# another\n1 2\n2 3\n")
        assert read_tree(p).edges == ((1, 2), (2, 3))

    def test_bad_header(self, tmp_path):
        p = tmp_path / "t.edges"
        p.write_text("x\n1 2\n")
        with pytest.raises(ValidationError, match="vertex count"):
            read_tree(p)

    def test_bad_edge_line(self, tmp_path):
        p = tmp_path / "t.edges"
        p.write_text("3\n1 2 9\n2 3\n")
        with pytest.raises(ValidationError, match="expected 'u v'"):
            read_tree(p)

    def test_trailing_content(self, tmp_path):
        p = tmp_path / "t.edges"
        p.write_text("2\n1 2\n7 7\n")
        with pytest.raises(ValidationError, match="trailing"):
            read_tree(p)

    def test_empty_file(self, tmp_path):
        p = tmp_path / "t.edges"
        p.write_text("# nothing\n")
        with pytest.raises(ValidationError, match="empty"):
            read_tree(p)

    def test_iter_trees_blocks(self, tmp_path):
        t1 = build_tree(3, [(1, 2), (2, 3)])
        t2 = build_tree(2, [(1, 2)])
        p = tmp_path / "many.edges"
        p.write_text(format_tree(t1) + "\n" + format_tree(t2))
        assert list(iter_trees(p)) == [t1, t2]

    def test_arrangement_file(self, tmp_path):
        p = tmp_path / "a.positions"
        p.write_text("# order\n2 1 4 3\n")
        assert read_arrangement(p, 4).positions == (2, 1, 4, 3)

    def test_arrangement_wrong_count(self, tmp_path):
        p = tmp_path / "a.positions"
        p.write_text("2 1 3\n")
        with pytest.raises(ValidationError, match="expected 4 positions"):
            read_arrangement(p, 4)

    def test_arrangement_not_bijection(self, tmp_path):
        p = tmp_path / "a.positions"
        p.write_text("1 1 2 3\n")
        with pytest.raises(ValidationError, match="bijection"):
            read_arrangement(p, 4)
