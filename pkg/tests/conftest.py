"""Shared random-clustering builders for the test suite.

These build through the public dict-based constructor on purpose, so the
generator modules under test never validate themselves.
"""

import itertools

import numpy as np

from clucmp import build_clustering


def labels_clustering(labels, prefix="c"):
    """Flat partition from an int label array over elements 0..N-1."""
    clusters = {}
    for i, lab in enumerate(labels):
        clusters.setdefault(f"{prefix}{int(lab)}", []).append(i)
    return build_clustering(clusters)


def random_flat(rng, n, k_max=8):
    k = int(rng.integers(1, min(k_max, n) + 1))
    return labels_clustering(rng.integers(0, k, size=n))


def random_cover(rng, n, k_max=6):
    """Overlapping clustering whose universe is exactly 0..n-1."""
    k = int(rng.integers(2, k_max + 1))
    clusters = {}
    for c in range(k):
        size = int(rng.integers(1, n + 1))
        members = rng.choice(n, size=size, replace=False)
        clusters[f"c{c}"] = [int(m) for m in members]
    covered = set().union(*clusters.values())
    for e in range(n):
        if e not in covered:
            clusters[f"c{int(rng.integers(k))}"].append(e)
    return build_clustering(clusters)


def random_hierarchy(rng, n, max_depth=3):
    """Random binary tree of nested consecutive ranges over 0..n-1."""
    clusters = {}
    edges = []
    counter = itertools.count()

    def grow(lo, hi, depth, parent=None):
        cid = f"n{next(counter):03d}"
        clusters[cid] = list(range(lo, hi))
        if parent is not None:
            edges.append((parent, cid))
        if depth < max_depth and hi - lo >= 2 and rng.random() < 0.8:
            mid = int(rng.integers(lo + 1, hi))
            grow(lo, mid, depth + 1, cid)
            grow(mid, hi, depth + 1, cid)

    grow(0, n, 0)
    return build_clustering(clusters, edges or None)


def random_clustering(rng, n, kind=None):
    kind = kind or rng.choice(["flat", "cover", "hierarchy"])
    if kind == "flat":
        return random_flat(rng, n)
    if kind == "cover":
        return random_cover(rng, n)
    return random_hierarchy(rng, n)
