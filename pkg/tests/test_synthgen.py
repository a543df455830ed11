"""Synthetic clustering generators: determinism and structural invariants."""

import collections

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clucmp import (
    IndivisibleSize,
    NoSuchLevel,
    binary_hierarchy,
    build_clustering,
    cluster_size_entropy,
    element_score_values,
    equal_partition,
    level_slice,
    pa_skew,
    random_partition,
    shuffle_memberships,
)


class TestEqualPartition:
    def test_consecutive_blocks(self):
        c = equal_partition(6, 3)
        assert dict(c.clusters) == {
            0: frozenset({0, 1}),
            1: frozenset({2, 3}),
            2: frozenset({4, 5}),
        }
        assert c.is_partition

    def test_indivisible(self):
        with pytest.raises(IndivisibleSize):
            equal_partition(10, 3)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            equal_partition(0, 1)


class TestRandomPartition:
    def test_sizes_differ_by_at_most_one(self):
        rng = np.random.default_rng(42)
        for _ in range(20):
            n = int(rng.integers(2, 200))
            c = int(rng.integers(1, n + 1))
            p = random_partition(n, c, rng)
            assert p.n_clusters == c and p.n_elements == n
            assert p.sizes.max() - p.sizes.min() <= 1

    def test_deterministic_in_seed(self):
        a = random_partition(50, 7, 123)
        b = random_partition(50, 7, 123)
        np.testing.assert_array_equal(a.labels, b.labels)
        assert (random_partition(50, 7, 124).labels != a.labels).any()

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            random_partition(3, 4)
        with pytest.raises(ValueError):
            random_partition(3, 0)


class TestShuffleMemberships:
    def test_p_zero_is_identity(self):
        base = equal_partition(12, 3)
        np.testing.assert_array_equal(
            shuffle_memberships(base, 0.0, 1).labels, base.labels
        )

    def test_preserves_size_multiset(self):
        rng = np.random.default_rng(7)
        base = random_partition(40, 6, rng)
        for p in (0.3, 0.7, 1.0):
            shuffled = shuffle_memberships(base, p, rng)
            assert sorted(shuffled.sizes) == sorted(base.sizes)
            assert shuffled.universe == base.universe

    @given(st.floats(0.0, 1.0), st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_moves_at_most_floor_pn_elements(self, p, seed):
        base = equal_partition(24, 4)
        shuffled = shuffle_memberships(base, p, seed)
        changed = int((shuffled.labels != base.labels).sum())
        assert changed <= int(p * 24)

    def test_deterministic_in_seed(self):
        base = equal_partition(30, 5)
        np.testing.assert_array_equal(
            shuffle_memberships(base, 0.5, 9).labels,
            shuffle_memberships(base, 0.5, 9).labels,
        )

    def test_p_validation(self):
        with pytest.raises(ValueError):
            shuffle_memberships(equal_partition(4, 2), 1.5)

    def test_similarity_decays_with_p(self):
        base = equal_partition(256, 8)
        means = []
        for p in (0.2, 0.8):
            values = [
                float(
                    element_score_values(
                        base, shuffle_memberships(base, p, seed)
                    ).mean()
                )
                for seed in range(5)
            ]
            means.append(np.mean(values))
        assert means[0] > means[1]


class TestPaSkew:
    def test_zero_steps_returns_input_unchanged(self):
        base = equal_partition(12, 3)
        snapshots = list(pa_skew(base, steps=0, seed=1))
        assert len(snapshots) == 1
        snap, entropy = snapshots[0]
        np.testing.assert_array_equal(snap.labels, base.labels)
        assert entropy == cluster_size_entropy(base)

    def test_yields_steps_plus_one_snapshots(self):
        base = equal_partition(16, 4)
        snapshots = list(pa_skew(base, steps=25, seed=3))
        assert len(snapshots) == 26

    def test_partition_invariants_every_step(self):
        base = equal_partition(32, 8)
        previous = None
        for snap, entropy in pa_skew(base, steps=200, seed=11):
            assert snap.is_partition
            assert snap.n_clusters == 8
            assert (snap.sizes >= 1).all()
            assert entropy == cluster_size_entropy(snap)
            if previous is not None:
                # one element moved at most
                assert int((snap.labels != previous).sum()) <= 1
            previous = snap.labels

    def test_deterministic_in_seed(self):
        base = equal_partition(20, 4)
        run1 = [snap.labels for snap, _ in pa_skew(base, steps=50, seed=7)]
        run2 = [snap.labels for snap, _ in pa_skew(base, steps=50, seed=7)]
        for x, y in zip(run1, run2):
            np.testing.assert_array_equal(x, y)

    def test_entropy_drifts_down(self):
        base = equal_partition(64, 8)
        finals = []
        for seed in range(5):
            *_, (snap, entropy) = pa_skew(base, steps=3000, seed=seed)
            finals.append(entropy)
        assert np.mean(finals) < cluster_size_entropy(base)

    def test_steps_validation(self):
        with pytest.raises(ValueError):
            list(pa_skew(equal_partition(4, 2), steps=-1))


class TestBinaryHierarchy:
    def test_structure(self):
        c = binary_hierarchy(depth=3, leaf_size=2)
        assert c.n_elements == 16
        assert c.n_clusters == sum(2**j for j in range(4))
        assert len(c.hierarchy.edges) == 2 * (2**3 - 1)
        by_level = collections.Counter(
            int(cid[1:3]) for cid in c.cluster_ids
        )
        assert by_level == {0: 1, 1: 2, 2: 4, 3: 8}

    def test_levels_are_fractions_of_depth(self):
        c = binary_hierarchy(depth=4, leaf_size=1)
        for cid, level in c.hierarchy.levels.items():
            tree_depth = int(cid[1:3])
            assert level == pytest.approx(tree_depth / 4, abs=1e-15)

    def test_internal_clusters_union_children(self):
        c = binary_hierarchy(depth=2, leaf_size=3)
        members = c.clusters
        for parent, child in c.hierarchy.edges:
            assert members[child] <= members[parent]
        assert members["L00C000000"] == frozenset(range(12))

    def test_leaves_are_consecutive(self):
        c = binary_hierarchy(depth=2, leaf_size=2)
        assert c.clusters["L02C000001"] == frozenset({2, 3})

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            binary_hierarchy(0, 2)
        with pytest.raises(ValueError):
            binary_hierarchy(2, 0)


class TestLevelSlice:
    def test_slices_match_block_partitions(self):
        c = binary_hierarchy(depth=3, leaf_size=2)
        for d in range(4):
            flat = level_slice(c, d)
            assert flat.is_partition
            assert flat.n_clusters == 2**d
            assert flat.n_elements == 16
            assert flat.hierarchy is None

    def test_missing_level(self):
        c = binary_hierarchy(depth=2, leaf_size=2)
        with pytest.raises(NoSuchLevel):
            level_slice(c, 5)

    def test_flat_input(self):
        with pytest.raises(NoSuchLevel):
            level_slice(build_clustering({"a": [1, 2]}), 0)
