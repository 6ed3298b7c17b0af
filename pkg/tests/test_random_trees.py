import numpy as np
import pytest
from scipy.stats import chi2

from oracles import chi_square_statistic, mean_and_se
from treecross import (
    SamplerConfig,
    SamplingExhaustedError,
    aldous_broder,
    all_labeled_trees,
    count_crossings,
    degree_second_moment,
    e0,
    expected_e0_random_tree,
    expected_k2_random_tree,
    identity_arrangement,
    sample_conditioned,
    stream,
)


class TestStream:
    def test_reproducible(self):
        a = stream(42, 1, 2).integers(0, 1000, size=10)
        b = stream(42, 1, 2).integers(0, 1000, size=10)
        assert (a == b).all()

    def test_distinct_keys_differ(self):
        a = stream(42, 1, 2).integers(0, 1000, size=10)
        b = stream(42, 1, 3).integers(0, 1000, size=10)
        assert (a != b).any()


class TestAldousBroder:
    def test_tiny_sizes(self):
        rng = stream(1, 0)
        assert aldous_broder(1, rng).edges == ()
        assert aldous_broder(2, rng).edges == ((1, 2),)

    def test_deterministic_sequence(self):
        first = [aldous_broder(6, stream(99, i)) for i in range(20)]
        second = [aldous_broder(6, stream(99, i)) for i in range(20)]
        assert first == second

    def test_valid_trees(self):
        rng = stream(2, 0)
        for _ in range(200):
            n = int(rng.integers(1, 30))
            tree = aldous_broder(n, rng)
            assert tree.n == n and len(tree.edges) == n - 1

    def test_uniform_n5(self):
        # all 125 labeled trees, 1000 samples each on average
        expected_keys = [t.edges for t in all_labeled_trees(5)]
        assert len(expected_keys) == 125
        rng = stream(3, 0)
        observed = {}
        total = 125_000
        for _ in range(total):
            key = aldous_broder(5, rng).edges
            observed[key] = observed.get(key, 0) + 1
        assert set(observed) <= set(expected_keys)
        statistic = chi_square_statistic(observed, total, expected_keys)
        assert statistic < chi2.ppf(1 - 0.001, len(expected_keys) - 1)


class TestIdentityArrangement:
    def test_positions(self):
        assert identity_arrangement(3).positions == (1, 2, 3)
        assert identity_arrangement(1).positions == (1,)

    def test_labels_as_positions(self):
        rng = stream(4, 0)
        tree = aldous_broder(9, rng)
        counted = count_crossings(tree, identity_arrangement(9))
        # positions equal labels, so sorting edge endpoints gives the spans
        manual = 0
        edges = tree.edges
        for i in range(len(edges)):
            s1, e1 = edges[i]
            for j in range(i + 1, len(edges)):
                s2, e2 = edges[j]
                if len({s1, e1, s2, e2}) < 4:
                    continue
                if s1 < s2 < e1 < e2 or s2 < s1 < e2 < e1:
                    manual += 1
        assert counted.total == manual


class TestMomentLaws:
    @pytest.mark.parametrize("n", [5, 10])
    def test_degree_second_moment_mean(self, n):
        rng = stream(5, n)
        values = [degree_second_moment(aldous_broder(n, rng)) for _ in range(10_000)]
        mean, se = mean_and_se(values)
        assert abs(mean - expected_k2_random_tree(n)) <= 3 * se

    @pytest.mark.parametrize("n", [5, 10])
    def test_blind_expectation_mean(self, n):
        rng = stream(6, n)
        values = [e0(aldous_broder(n, rng)) for _ in range(10_000)]
        mean, se = mean_and_se(values)
        assert abs(mean - expected_e0_random_tree(n)) <= 3 * se


class TestSampleConditioned:
    def test_small_trees_always_accepted(self):
        # every 4-vertex tree has at most one potential crossing
        config = SamplerConfig(n=4, seed=0, max_crossings=3)
        rng = stream(7, 0)
        for _ in range(200):
            tree, attempts = sample_conditioned(config, rng)
            assert attempts == 1
            assert count_crossings(tree, identity_arrangement(4)).total <= 3

    def test_accepted_tree_satisfies_threshold(self):
        config = SamplerConfig(n=9, seed=0, max_crossings=1)
        rng = stream(7, 1)
        for _ in range(30):
            tree, attempts = sample_conditioned(config, rng)
            assert count_crossings(tree, identity_arrangement(9)).total <= 1
            assert attempts >= 1

    def test_unconditioned_accepts_first(self):
        config = SamplerConfig(n=12, seed=0, max_crossings=None)
        tree, attempts = sample_conditioned(config, stream(7, 2))
        assert attempts == 1 and tree.n == 12

    def test_exhaustion_is_an_error(self):
        config = SamplerConfig(n=20, seed=0, max_crossings=0, max_attempts=25)
        with pytest.raises(SamplingExhaustedError) as err:
            sample_conditioned(config, stream(7, 3))
        assert err.value.attempts == 25
        assert "25 attempts" in str(err.value)

    def test_deterministic(self):
        config = SamplerConfig(n=8, seed=0, max_crossings=2)
        run1 = [sample_conditioned(config, stream(8, 0)) for _ in range(5)]
        run2 = [sample_conditioned(config, stream(8, 0)) for _ in range(5)]
        assert run1 == run2

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SamplerConfig(n=0, seed=1)
        with pytest.raises(ValueError):
            SamplerConfig(n=3, seed=1, max_attempts=0)


class TestEnumeration:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 3), (4, 16), (5, 125), (6, 1296)])
    def test_cayley_counts(self, n, count):
        trees = list(all_labeled_trees(n))
        assert len(trees) == count
        assert len({t.edges for t in trees}) == count
