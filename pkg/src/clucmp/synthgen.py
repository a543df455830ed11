"""Seeded generators for synthetic clusterings and bias probes.

Each generator is deterministic in its ``seed`` (anything accepted by
``numpy.random.default_rng``: an int, a ``SeedSequence``, or a
``Generator``).  Element ids are consecutive ints, cluster ids ints or,
for hierarchies, strings encoding (level, index).
"""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from .errors import IndivisibleSize, NoSuchLevel
from .model import (
    Clustering,
    build_clustering,
    cluster_size_entropy,
    partition_from_labels,
    root_distances,
)

__all__ = [
    "equal_partition",
    "random_partition",
    "shuffle_memberships",
    "pa_skew",
    "binary_hierarchy",
    "level_slice",
]


def equal_partition(n: int, k: int) -> Clustering:
    """Partition of n int elements into k equal consecutive blocks.

    Element i goes to cluster i // (n // k).  Raises ``IndivisibleSize``
    unless k divides n.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    if n % k != 0:
        raise IndivisibleSize(f"{k} clusters cannot evenly split {n} elements")
    labels = np.repeat(np.arange(k, dtype=np.intp), n // k)
    return partition_from_labels(range(n), range(k), labels)


def random_partition(n: int, c: int, seed=None) -> Clustering:
    """Uniformly random partition into c clusters of near-equal size.

    Cluster sizes differ by at most one (the first n mod c clusters get the
    extra element); the assignment of elements to the size slots is a
    uniform random permutation.
    """
    if n < 1 or not 1 <= c <= n:
        raise ValueError("need 1 <= c <= n")
    rng = np.random.default_rng(seed)
    base, extra = divmod(n, c)
    sizes = np.full(c, base, dtype=np.intp)
    sizes[:extra] += 1
    slots = np.repeat(np.arange(c, dtype=np.intp), sizes)
    labels = slots[rng.permutation(n)]
    return partition_from_labels(range(n), range(c), labels)


def shuffle_memberships(clustering: Clustering, p: float, seed=None) -> Clustering:
    """Randomly permute the memberships of a fraction p of the elements.

    floor(p * N) elements are drawn uniformly without replacement and their
    cluster labels are permuted uniformly among themselves, so the cluster
    size multiset never changes.  p = 0 returns an identical partition,
    p = 1 a fully relabeled one.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    labels = clustering.labels.copy()
    n = clustering.n_elements
    m = math.floor(p * n)
    rng = np.random.default_rng(seed)
    chosen = rng.choice(n, size=m, replace=False)
    labels[chosen] = labels[chosen][rng.permutation(m)]
    return Clustering._from_labels(clustering.universe, clustering.cluster_ids, labels)


def pa_skew(
    clustering: Clustering, steps: int = 10_000, seed=None
) -> Iterator[tuple[Clustering, float]]:
    """Preferential-attachment membership drift, one snapshot per step.

    Yields (snapshot, cluster-size entropy) pairs lazily: first the input
    partition unchanged, then one pair after each step.  A step moves a
    uniformly chosen element to a cluster drawn proportionally to current
    size (before the element is removed); moving to the own cluster is a
    legal no-op, and a move that would empty the source cluster is
    rejected and redrawn.  Long runs drift toward skewed, low-entropy
    cluster sizes.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    labels = clustering.labels.copy()
    sizes = clustering.sizes.copy()
    n = clustering.n_elements
    universe = clustering.universe
    cluster_ids = clustering.cluster_ids
    rng = np.random.default_rng(seed)

    def snapshot() -> tuple[Clustering, float]:
        snap = Clustering._from_labels(universe, cluster_ids, labels.copy())
        return snap, cluster_size_entropy(snap)

    yield snapshot()
    for _ in range(steps):
        while True:
            element = int(rng.integers(n))
            source = labels[element]
            # size-proportional draw, exact integer arithmetic
            target = int(np.searchsorted(np.cumsum(sizes), rng.integers(n), side="right"))
            if sizes[source] == 1 and target != source:
                continue
            break
        labels[element] = target
        sizes[source] -= 1
        sizes[target] += 1
        yield snapshot()


def binary_hierarchy(depth: int, leaf_size: int) -> Clustering:
    """Complete binary hierarchy over leaf_size * 2**depth int elements.

    Tree depth j holds 2**j clusters; each leaf covers ``leaf_size``
    consecutive elements and every internal cluster is the union of its
    descendants.  Cluster ids encode (depth, index) as zero-padded strings
    so the canonical order walks the tree level by level.
    """
    if depth < 1 or leaf_size < 1:
        raise ValueError("depth and leaf_size must be positive")
    n = leaf_size * 2**depth
    clusters: dict[str, range] = {}
    edges: list[tuple[str, str]] = []

    def node_id(level: int, index: int) -> str:
        return f"L{level:02d}C{index:06d}"

    for level in range(depth + 1):
        span = leaf_size * 2 ** (depth - level)
        for index in range(2**level):
            clusters[node_id(level, index)] = range(index * span, (index + 1) * span)
            if level < depth:
                edges.append((node_id(level, index), node_id(level + 1, 2 * index)))
                edges.append((node_id(level, index), node_id(level + 1, 2 * index + 1)))
    return build_clustering(clusters, edges)


def level_slice(clustering: Clustering, d: int) -> Clustering:
    """Flat clustering of the clusters at hierarchy depth d.

    Depth is the longest root distance in edges.  Raises ``NoSuchLevel``
    for flat inputs or depths no cluster sits at.
    """
    if clustering.hierarchy is None:
        raise NoSuchLevel("clustering has no hierarchy")
    depths = root_distances(clustering.hierarchy)
    chosen = [cid for cid in clustering.cluster_ids if depths[cid] == d]
    if not chosen:
        raise NoSuchLevel(f"no cluster sits at depth {d}")
    members = clustering.clusters
    return build_clustering({cid: members[cid] for cid in chosen})
