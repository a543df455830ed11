"""Core data model: element universes, clusterings, hierarchy levels, JSON I/O.

A clustering assigns every element of a universe to one or more clusters.
The universe is always the union of all cluster members, so two clusterings
are comparable exactly when those unions coincide.  Hierarchical structure
is an acyclic parent->child relation over cluster ids; each cluster gets a
depth level rescaled to [0, 1] (roots at 0, leaves at 1).
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    CyclicHierarchy,
    EmptyCluster,
    EmptyInput,
    NotAPartition,
    ParseError,
    UnknownClusterInDAG,
)

ElementId = Hashable
ClusterId = Hashable
Edge = tuple[ClusterId, ClusterId]

__all__ = [
    "ElementUniverse",
    "HierarchyDAG",
    "Clustering",
    "build_clustering",
    "partition_from_labels",
    "rescale_levels",
    "root_distances",
    "cluster_size_entropy",
    "clustering_to_obj",
    "clustering_from_obj",
    "load_clustering",
    "save_clustering",
]


@dataclass(frozen=True, eq=False)
class ElementUniverse:
    """Ordered set of element ids shared by clusterings under comparison.

    ``ids`` is sorted, so any two universes over the same elements have the
    same canonical order.  ``index`` maps each id to its position in ``ids``.
    """

    ids: tuple
    index: Mapping[ElementId, int]

    @classmethod
    def from_ids(cls, ids: Iterable[ElementId]) -> "ElementUniverse":
        ordered = tuple(sorted(set(ids)))
        if not ordered:
            raise EmptyInput("universe has no elements")
        return cls(ids=ordered, index={e: i for i, e in enumerate(ordered)})

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, element: ElementId) -> bool:
        return element in self.index

    def __iter__(self):
        return iter(self.ids)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ElementUniverse) and self.ids == other.ids


@dataclass(frozen=True, eq=False)
class HierarchyDAG:
    """Acyclic parent->child relation over cluster ids, with depth levels.

    ``levels`` maps every cluster id to a float in [0, 1]: 0 for roots,
    1 for leaves, interior nodes in between (see :func:`rescale_levels`).
    """

    nodes: tuple
    edges: tuple
    levels: Mapping[ClusterId, float]

    @classmethod
    def from_edges(
        cls, nodes: Iterable[ClusterId], edges: Iterable[Edge]
    ) -> "HierarchyDAG":
        node_tuple = tuple(nodes)
        known = set(node_tuple)
        edge_set = set()
        for parent, child in edges:
            if parent not in known:
                raise UnknownClusterInDAG(f"edge parent {parent!r} is not a cluster")
            if child not in known:
                raise UnknownClusterInDAG(f"edge child {child!r} is not a cluster")
            edge_set.add((parent, child))
        edge_tuple = tuple(sorted(edge_set))
        levels = _compute_levels(node_tuple, edge_tuple)
        return cls(nodes=node_tuple, edges=edge_tuple, levels=levels)


def _topological_order(nodes: Sequence[ClusterId], edges: Sequence[Edge]) -> list:
    children = defaultdict(list)
    indegree = {v: 0 for v in nodes}
    for parent, child in edges:
        children[parent].append(child)
        indegree[child] += 1
    queue = deque(v for v in nodes if indegree[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for ch in children[v]:
            indegree[ch] -= 1
            if indegree[ch] == 0:
                queue.append(ch)
    if len(order) != len(nodes):
        raise CyclicHierarchy("hierarchy edges contain a directed cycle")
    return order


def _compute_levels(
    nodes: Sequence[ClusterId], edges: Sequence[Edge]
) -> dict[ClusterId, float]:
    order = _topological_order(nodes, edges)
    children = defaultdict(list)
    for parent, child in edges:
        children[parent].append(child)
    # longest path from any root, walking topological order forward
    down = {v: 0 for v in nodes}
    for v in order:
        for ch in children[v]:
            down[ch] = max(down[ch], down[v] + 1)
    # longest path to any leaf, walking it backward
    up = {v: 0 for v in nodes}
    for v in reversed(order):
        for ch in children[v]:
            up[v] = max(up[v], up[ch] + 1)
    levels = {}
    for v in nodes:
        total = down[v] + up[v]
        # an isolated node is root and leaf at once; treat it as a leaf
        levels[v] = 1.0 if total == 0 else down[v] / total
    return levels


def rescale_levels(dag: HierarchyDAG) -> dict[ClusterId, float]:
    """Depth of each cluster rescaled to [0, 1].

    level(v) = D(v) / (D(v) + U(v)) where D is the longest root-to-v path
    and U the longest v-to-leaf path, both in edges.  Roots get 0.0, leaves
    1.0, and a node that is both (isolated) gets 1.0.  Along every edge the
    level strictly increases.
    """
    return _compute_levels(dag.nodes, dag.edges)


def root_distances(dag: HierarchyDAG) -> dict[ClusterId, int]:
    """Longest distance (in edges) from any root, per cluster id."""
    order = _topological_order(dag.nodes, dag.edges)
    children = defaultdict(list)
    for parent, child in dag.edges:
        children[parent].append(child)
    down = {v: 0 for v in dag.nodes}
    for v in order:
        for ch in children[v]:
            down[ch] = max(down[ch], down[v] + 1)
    return down


class Clustering:
    """Immutable assignment of elements to one or more clusters.

    The universe is the union of all members.  Clusters are keyed by id;
    ids of both elements and clusters can be any hashable, mutually
    orderable values (strings, ints).  Build instances through
    :func:`build_clustering`, :func:`partition_from_labels`, or the JSON
    loaders rather than mutating one in place.
    """

    __slots__ = (
        "_universe",
        "_clusters",
        "_order",
        "_cluster_index",
        "_hierarchy",
        "_sizes",
        "_labels",
        "_member_indices",
    )

    def __init__(
        self,
        clusters: Mapping[ClusterId, Iterable[ElementId]],
        hierarchy_edges: Iterable[Edge] | None = None,
    ):
        if not clusters:
            raise EmptyInput("clustering has no clusters")
        materialized: dict[ClusterId, frozenset] = {}
        for cid, members in clusters.items():
            member_set = frozenset(members)
            if not member_set:
                raise EmptyCluster(f"cluster {cid!r} has no members")
            materialized[cid] = member_set
        self._clusters = materialized
        self._universe = ElementUniverse.from_ids(
            e for members in materialized.values() for e in members
        )
        self._order = tuple(sorted(materialized))
        self._cluster_index = {cid: k for k, cid in enumerate(self._order)}
        edges = tuple(hierarchy_edges) if hierarchy_edges is not None else ()
        self._hierarchy = HierarchyDAG.from_edges(self._order, edges) if edges else None
        self._sizes = None
        self._labels = None
        self._member_indices = None

    @classmethod
    def _from_labels(
        cls,
        universe: ElementUniverse,
        cluster_ids: Sequence[ClusterId],
        labels: np.ndarray,
    ) -> "Clustering":
        """Fast partition constructor from a per-element cluster-index array.

        Trusted path used by the generators: clusters stay unmaterialized
        until asked for.  Every cluster id must receive at least one element.
        """
        labels = np.asarray(labels, dtype=np.intp)
        if labels.shape != (len(universe),):
            raise NotAPartition("labels must assign exactly one cluster per element")
        if labels.size and (labels.min() < 0 or labels.max() >= len(cluster_ids)):
            raise EmptyCluster("label values must index into cluster_ids")
        sizes = np.bincount(labels, minlength=len(cluster_ids))
        if (sizes == 0).any():
            raise EmptyCluster("every cluster id must receive at least one element")
        obj = cls.__new__(cls)
        obj._universe = universe
        obj._clusters = None
        obj._order = tuple(cluster_ids)
        obj._cluster_index = {cid: k for k, cid in enumerate(obj._order)}
        obj._hierarchy = None
        obj._sizes = sizes.astype(np.int64)
        obj._labels = labels
        obj._member_indices = None
        return obj

    @property
    def universe(self) -> ElementUniverse:
        return self._universe

    @property
    def clusters(self) -> Mapping[ClusterId, frozenset]:
        if self._clusters is None:
            ids = self._universe.ids
            buckets: list[list] = [[] for _ in self._order]
            for pos, lab in enumerate(self._labels):
                buckets[lab].append(ids[pos])
            self._clusters = {
                cid: frozenset(buckets[k]) for k, cid in enumerate(self._order)
            }
        return MappingProxyType(self._clusters)

    @property
    def cluster_ids(self) -> tuple:
        """Cluster ids in canonical (sorted) order."""
        return self._order

    @property
    def hierarchy(self) -> HierarchyDAG | None:
        return self._hierarchy

    @property
    def n_elements(self) -> int:
        return len(self._universe)

    @property
    def n_clusters(self) -> int:
        return len(self._order)

    @property
    def sizes(self) -> np.ndarray:
        """Cluster sizes as int64, aligned with ``cluster_ids``."""
        if self._sizes is None:
            counts = [len(self._clusters[cid]) for cid in self._order]
            self._sizes = np.asarray(counts, dtype=np.int64)
        return self._sizes

    @property
    def is_partition(self) -> bool:
        """True when every element belongs to exactly one cluster."""
        # the universe is the union, so total size N means one cluster each
        return int(self.sizes.sum()) == self.n_elements

    @property
    def labels(self) -> np.ndarray:
        """Cluster index per element (universe order); partitions only."""
        if self._labels is None:
            if not self.is_partition:
                raise NotAPartition("labels are defined only for flat partitions")
            labels = np.empty(self.n_elements, dtype=np.intp)
            index = self._universe.index
            for k, cid in enumerate(self._order):
                for e in self._clusters[cid]:
                    labels[index[e]] = k
            self._labels = labels
        return self._labels

    @property
    def member_indices(self) -> list[np.ndarray]:
        """Per cluster, the member positions in universe order."""
        if self._member_indices is None:
            if self._labels is not None and self._clusters is None:
                order = np.argsort(self._labels, kind="stable")
                bounds = np.cumsum(self.sizes)[:-1]
                self._member_indices = [
                    np.sort(part) for part in np.split(order, bounds)
                ]
            else:
                index = self._universe.index
                self._member_indices = [
                    np.array(sorted(index[e] for e in self._clusters[cid]), dtype=np.intp)
                    for cid in self._order
                ]
        return self._member_indices

    def __repr__(self) -> str:
        kind = "hierarchical" if self._hierarchy is not None else (
            "partition" if self.is_partition else "overlapping"
        )
        return (
            f"Clustering({kind}, n_elements={self.n_elements}, "
            f"n_clusters={self.n_clusters})"
        )


def build_clustering(
    memberships: Mapping[ClusterId, Iterable[ElementId]],
    hierarchy_edges: Iterable[Edge] | None = None,
) -> Clustering:
    """Build a clustering from a cluster-id -> members mapping.

    The element universe is the union of all members.  ``hierarchy_edges``
    gives parent->child pairs over the cluster ids; levels are computed
    immediately.  Raises ``EmptyInput``/``EmptyCluster`` on empty inputs,
    ``UnknownClusterInDAG``/``CyclicHierarchy`` on bad hierarchies.
    """
    return Clustering(memberships, hierarchy_edges)


def partition_from_labels(
    element_ids: Sequence[ElementId],
    cluster_ids: Sequence[ClusterId],
    labels: np.ndarray,
) -> Clustering:
    """Build a flat partition from a per-element array of cluster indices.

    ``labels[i]`` indexes into ``cluster_ids`` for the i-th element of the
    sorted universe over ``element_ids``.  Every cluster id must be used.
    """
    universe = ElementUniverse.from_ids(element_ids)
    if len(element_ids) != len(universe):
        raise NotAPartition("element ids must be unique")
    return Clustering._from_labels(universe, tuple(cluster_ids), labels)


def cluster_size_entropy(clustering: Clustering) -> float:
    """Shannon entropy (nats) of the cluster-size distribution a_k / N.

    Each membership counts once, so a partition's sizes sum to N and the
    value is the entropy of the induced cluster label distribution.
    """
    p = clustering.sizes.astype(np.float64) / clustering.n_elements
    return float(-(p * np.log(p)).sum())


def clustering_to_obj(clustering: Clustering) -> dict[str, Any]:
    """Plain-JSON form: {"clusters": {id: [element ids]}, "hierarchy": [[parent, child]]}.

    Ids are written as strings; members and edges are sorted for stable output.
    """
    obj: dict[str, Any] = {
        "clusters": {
            str(cid): sorted(str(e) for e in clustering.clusters[cid])
            for cid in clustering.cluster_ids
        }
    }
    if clustering.hierarchy is not None:
        obj["hierarchy"] = [
            [str(p), str(c)] for p, c in sorted(clustering.hierarchy.edges)
        ]
    return obj


def clustering_from_obj(obj: Any) -> Clustering:
    """Parse the plain-JSON clustering form; raises ``ParseError`` on bad shape."""
    if not isinstance(obj, dict):
        raise ParseError("clustering document must be a JSON object")
    if "clusters" not in obj:
        raise ParseError('clustering document must have a "clusters" key')
    clusters = obj["clusters"]
    if not isinstance(clusters, dict):
        raise ParseError('"clusters" must map cluster ids to member lists')
    for cid, members in clusters.items():
        if not isinstance(members, list) or not all(
            isinstance(e, str) for e in members
        ):
            raise ParseError(f'cluster {cid!r} members must be a list of strings')
    edges = None
    if "hierarchy" in obj and obj["hierarchy"] is not None:
        raw_edges = obj["hierarchy"]
        if not isinstance(raw_edges, list):
            raise ParseError('"hierarchy" must be a list of [parent, child] pairs')
        edges = []
        for pair in raw_edges:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, str) for x in pair)
            ):
                raise ParseError('"hierarchy" entries must be [parent, child] string pairs')
            edges.append((pair[0], pair[1]))
    return build_clustering(clusters, edges or None)


def load_clustering(path) -> Clustering:
    """Read a clustering JSON file (UTF-8)."""
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    return clustering_from_obj(obj)


def save_clustering(clustering: Clustering, path) -> None:
    """Write a clustering as JSON (UTF-8)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(clustering_to_obj(clustering), fh, indent=2, sort_keys=True)
        fh.write("\n")
