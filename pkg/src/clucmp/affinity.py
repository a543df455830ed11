"""Element affinities via personalized PageRank on cluster-induced graphs.

A clustering induces a bipartite affiliation graph between elements and
clusters; projecting it onto the elements gives a row-stochastic transition
matrix

    w_ij = sum_g  a_ig * a_jg / (sum_k a_ik * sum_m a_mg),

i.e. a lazy walk element -> own cluster -> member of that cluster.  The
affinity of a source element to every other element is the stationary
personalized PageRank distribution

    p = (1 - alpha) * e_source + alpha * p W,

with restart probability 1 - alpha.  For hierarchical clusterings the
affiliation weight of a cluster at rescaled level l is exp(r * l), so the
sign of r steers the walk toward fine (r > 0) or coarse (r < 0) levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NonStochasticGraph, NotAPartition
from .model import Clustering

__all__ = [
    "AffiliationGraph",
    "ElementGraph",
    "AffinityRow",
    "hierarchy_weight",
    "build_affiliation",
    "project_element_graph",
    "ppr_solve",
    "ppr_partition_analytic",
    "ppr_affinity_matrix",
    "membership_classes",
]

# direct linear solve below this many elements, power iteration above
DENSE_SOLVER_MAX_N = 2000
POWER_TOL = 1e-12
ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class AffiliationGraph:
    """Element-by-cluster weight matrix (N x K), rows follow the universe order."""

    weights: np.ndarray
    element_ids: tuple
    cluster_ids: tuple


@dataclass(frozen=True)
class ElementGraph:
    """Row-stochastic element-to-element transition matrix (N x N)."""

    transition: np.ndarray
    element_ids: tuple


@dataclass(frozen=True)
class AffinityRow:
    """Stationary visit distribution of one source element.

    ``p`` sums to one, and the source keeps at least the restart mass:
    p[source] >= 1 - alpha.
    """

    source: object
    p: np.ndarray
    alpha: float


def hierarchy_weight(level: float, r: float) -> float:
    """Affiliation weight exp(r * level) for a cluster at rescaled level."""
    if not 0.0 <= level <= 1.0:
        raise ValueError(f"level must lie in [0, 1], got {level!r}")
    return math.exp(r * level)


def build_affiliation(clustering: Clustering, r: float = 8.0) -> AffiliationGraph:
    """Affiliation weights of a clustering.

    Flat clusterings get unit weights; hierarchical ones weight each cluster
    by :func:`hierarchy_weight` of its level, so ``r`` tunes the resolution
    scale the induced walk is most sensitive to.
    """
    n = clustering.n_elements
    k = clustering.n_clusters
    weights = np.zeros((n, k), dtype=np.float64)
    dag = clustering.hierarchy
    for col, idx in enumerate(clustering.member_indices):
        if dag is None:
            weights[idx, col] = 1.0
        else:
            weights[idx, col] = hierarchy_weight(dag.levels[clustering.cluster_ids[col]], r)
    return AffiliationGraph(
        weights=weights,
        element_ids=clustering.universe.ids,
        cluster_ids=clustering.cluster_ids,
    )


def project_element_graph(affiliation: AffiliationGraph) -> ElementGraph:
    """Project the bipartite affiliation onto elements.

    The result is row-stochastic by construction: each row i spreads the
    element's membership mass over clusters, then over their members.
    """
    weights = affiliation.weights
    row_sums = weights.sum(axis=1)
    col_sums = weights.sum(axis=0)
    if (row_sums <= 0).any():
        raise NonStochasticGraph("every element needs at least one affiliation")
    if (col_sums <= 0).any():
        raise NonStochasticGraph("every cluster needs at least one member")
    transition = (weights / row_sums[:, None]) @ (weights / col_sums[None, :]).T
    return ElementGraph(transition=transition, element_ids=affiliation.element_ids)


def _check_row_stochastic(transition: np.ndarray) -> None:
    if transition.ndim != 2 or transition.shape[0] != transition.shape[1]:
        raise NonStochasticGraph("transition matrix must be square")
    if (transition < 0).any():
        raise NonStochasticGraph("transition weights must be non-negative")
    if np.abs(transition.sum(axis=1) - 1.0).max() > ROW_SUM_TOL:
        raise NonStochasticGraph("every row must sum to one")


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly between 0 and 1, got {alpha!r}")


def _power_iteration_budget(alpha: float) -> int:
    return 10 * math.ceil(math.log(POWER_TOL) / math.log(alpha))


def _stationary_rows(
    transition: np.ndarray, alpha: float, sources: np.ndarray
) -> np.ndarray:
    """Solve p = (1-alpha) e_s + alpha p W for each source, one row per source."""
    n = transition.shape[0]
    if n <= DENSE_SOLVER_MAX_N:
        system = np.eye(n) - alpha * transition.T
        rhs = np.zeros((n, len(sources)))
        rhs[sources, np.arange(len(sources))] = 1.0 - alpha
        return np.linalg.solve(system, rhs).T
    rows = np.empty((len(sources), n))
    budget = _power_iteration_budget(alpha)
    for out, s in enumerate(sources):
        teleport = np.zeros(n)
        teleport[s] = 1.0 - alpha
        p = np.zeros(n)
        p[s] = 1.0
        converged = False
        for _ in range(budget):
            nxt = teleport + alpha * (p @ transition)
            if np.abs(nxt - p).sum() <= POWER_TOL:
                p = nxt
                converged = True
                break
            p = nxt
        if not converged:
            raise NoConvergence(
                f"power iteration did not reach L1 tolerance {POWER_TOL:g} "
                f"within {budget} iterations"
            )
        rows[out] = p
    return rows


def ppr_solve(graph: ElementGraph, source: int, alpha: float = 0.9) -> AffinityRow:
    """Stationary personalized PageRank row for one source element index."""
    _check_alpha(alpha)
    _check_row_stochastic(graph.transition)
    n = graph.transition.shape[0]
    if not 0 <= source < n:
        raise IndexError(f"source index {source} out of range for {n} elements")
    p = _stationary_rows(graph.transition, alpha, np.array([source]))[0]
    return AffinityRow(source=graph.element_ids[source], p=p, alpha=alpha)


def ppr_partition_analytic(
    clustering: Clustering, alpha: float = 0.9
) -> list[AffinityRow]:
    """Closed-form affinity rows for a flat partition, one per element.

    Inside the source's cluster c the stationary distribution is uniform,
    alpha / |c| per member, plus the restart mass 1 - alpha on the source;
    it is zero elsewhere.  Raises ``NotAPartition`` otherwise.
    """
    _check_alpha(alpha)
    if not clustering.is_partition:
        raise NotAPartition("analytic affinities require a flat partition")
    labels = clustering.labels
    sizes = clustering.sizes
    ids = clustering.universe.ids
    members = clustering.member_indices
    rows = []
    for i, lab in enumerate(labels):
        p = np.zeros(clustering.n_elements)
        p[members[lab]] = alpha / sizes[lab]
        p[i] += 1.0 - alpha
        rows.append(AffinityRow(source=ids[i], p=p, alpha=alpha))
    return rows


def membership_classes(clustering: Clustering) -> list[list]:
    """Group elements by identical cluster-membership sets.

    Elements in one class are interchangeable for the induced walk, so a
    single affinity row per class determines all the others.  Classes and
    their members follow the universe order.
    """
    signature: list[list[int]] = [[] for _ in range(clustering.n_elements)]
    for col, idx in enumerate(clustering.member_indices):
        for i in idx:
            signature[i].append(col)
    groups: dict[tuple, list] = {}
    ids = clustering.universe.ids
    for i, sig in enumerate(signature):
        groups.setdefault(tuple(sig), []).append(ids[i])
    return list(groups.values())


def ppr_affinity_matrix(
    clustering: Clustering, alpha: float = 0.9, r: float = 8.0
) -> np.ndarray:
    """All pairwise affinities as an N x N array in universe order.

    Row i is the stationary distribution sourced at element i.  Only one
    row per membership class is solved; rows of the other class members
    follow by swapping the two entries, since exchanging interchangeable
    elements leaves the walk unchanged.
    """
    _check_alpha(alpha)
    graph = project_element_graph(build_affiliation(clustering, r))
    index = clustering.universe.index
    classes = membership_classes(clustering)
    reps = np.array([index[group[0]] for group in classes], dtype=np.intp)
    rep_rows = _stationary_rows(graph.transition, alpha, reps)
    n = clustering.n_elements
    out = np.empty((n, n), dtype=np.float64)
    for group, rep, row in zip(classes, reps, rep_rows):
        out[rep] = row
        for e in group[1:]:
            j = index[e]
            out[j] = row
            out[j, [rep, j]] = row[[j, rep]]
    return out
