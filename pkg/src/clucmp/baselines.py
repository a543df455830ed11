"""Classical clustering-comparison measures.

Pair-counting indices (Rand, adjusted Rand, Jaccard, F) and information
theoretic ones (mutual information, NMI under four normalizations,
variation of information) are defined for flat partitions over the same
universe.  The overlapping NMI variant treats each cluster as a binary
membership variable and also accepts overlapping clusterings.

All entropies and information values are in nats.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateARI, NotAPartition, UniverseMismatch
from .model import Clustering

__all__ = [
    "ContingencyTable",
    "PairCounts",
    "contingency",
    "pair_counts",
    "rand_index",
    "adjusted_rand",
    "jaccard",
    "f_measure",
    "mutual_information",
    "nmi",
    "vi",
    "onmi",
    "NMI_NORMS",
]

NMI_NORMS = ("min", "sqrt", "avg", "max")


@dataclass(frozen=True)
class ContingencyTable:
    """Cluster overlap counts n_km = |a_k intersect b_m|.

    ``row_sums``/``col_sums`` are the cluster sizes of the two inputs and
    ``partitions`` records whether both inputs were flat partitions (the
    pair-counting and MI measures require that).
    """

    counts: np.ndarray
    row_sums: np.ndarray
    col_sums: np.ndarray
    n_elements: int
    partitions: bool


@dataclass(frozen=True)
class PairCounts:
    """Element-pair agreement counts between two partitions."""

    n11: int  # together in both
    n10: int  # together only in the first
    n01: int  # together only in the second
    n00: int  # separate in both

    @property
    def total(self) -> int:
        return self.n11 + self.n10 + self.n01 + self.n00


def _require_same_universe(a: Clustering, b: Clustering) -> None:
    if a.universe != b.universe:
        raise UniverseMismatch("clusterings must cover the same elements")


def contingency(a: Clustering, b: Clustering) -> ContingencyTable:
    """Overlap counts between the clusters of two clusterings.

    Works for overlapping clusterings too; consumers that need partitions
    check the ``partitions`` flag.
    """
    _require_same_universe(a, b)
    flat = a.is_partition and b.is_partition
    if flat:
        k_b = b.n_clusters
        joint = a.labels.astype(np.int64) * k_b + b.labels
        counts = np.bincount(joint, minlength=a.n_clusters * k_b).reshape(
            a.n_clusters, k_b
        )
    else:
        n = a.n_elements
        ind_a = np.zeros((a.n_clusters, n), dtype=np.int64)
        for k, idx in enumerate(a.member_indices):
            ind_a[k, idx] = 1
        ind_b = np.zeros((b.n_clusters, n), dtype=np.int64)
        for m, idx in enumerate(b.member_indices):
            ind_b[m, idx] = 1
        counts = ind_a @ ind_b.T
    return ContingencyTable(
        counts=counts,
        row_sums=a.sizes,
        col_sums=b.sizes,
        n_elements=a.n_elements,
        partitions=flat,
    )


def _comb2(x) -> "np.ndarray | int":
    return x * (x - 1) // 2


def pair_counts(table: ContingencyTable) -> PairCounts:
    """Classify all element pairs by co-membership in the two partitions."""
    if not table.partitions:
        raise NotAPartition("pair counting requires two flat partitions")
    n11 = int(_comb2(table.counts).sum())
    q_a = int(_comb2(table.row_sums).sum())
    q_b = int(_comb2(table.col_sums).sum())
    total = _comb2(table.n_elements)
    return PairCounts(
        n11=n11, n10=q_a - n11, n01=q_b - n11, n00=total - q_a - q_b + n11
    )


def _rand_index(pc: PairCounts) -> float:
    if pc.total == 0:
        return 1.0  # a single element: the partitions are identical
    return (pc.n11 + pc.n00) / pc.total


def _adjusted_rand(pc: PairCounts) -> float:
    # permutation-model expectation; all exact integer arithmetic
    q_a = pc.n11 + pc.n10
    q_b = pc.n11 + pc.n01
    total = pc.total
    denominator = total * (q_a + q_b) - 2 * q_a * q_b
    if denominator == 0:
        # max index equals expected index only when both partitions are all
        # singletons or both are one cluster; either way they are identical
        if q_a == q_b and q_a in (0, total):
            return 1.0
        raise DegenerateARI("adjusted Rand undefined: zero normalization")
    return 2 * (total * pc.n11 - q_a * q_b) / denominator


def _jaccard(pc: PairCounts) -> float:
    denominator = pc.n11 + pc.n10 + pc.n01
    if denominator == 0:
        return 1.0  # no co-clustered pairs anywhere: trivially agreeing
    return pc.n11 / denominator


def _f_measure(pc: PairCounts) -> float:
    if pc.n11 + pc.n10 + pc.n01 == 0:
        return 1.0
    return 2 * pc.n11 / (2 * pc.n11 + pc.n10 + pc.n01)


def _entropy_from_sizes(sizes: np.ndarray, n: int) -> float:
    p = sizes.astype(np.float64) / n
    return float(-(p * np.log(p)).sum())


def _mutual_information(table: ContingencyTable) -> float:
    nz = table.counts > 0
    joint = table.counts[nz].astype(np.float64)
    outer = np.outer(table.row_sums, table.col_sums)[nz].astype(np.float64)
    n = table.n_elements
    return float((joint / n * np.log(joint * n / outer)).sum())


def _partition_table(a: Clustering, b: Clustering) -> ContingencyTable:
    table = contingency(a, b)
    if not table.partitions:
        raise NotAPartition("this measure requires two flat partitions")
    return table


def rand_index(a: Clustering, b: Clustering) -> float:
    """Fraction of element pairs treated consistently by both partitions."""
    return _rand_index(pair_counts(_partition_table(a, b)))


def adjusted_rand(a: Clustering, b: Clustering) -> float:
    """Rand index rescaled so random relabelings score 0 and identity 1.

    Uses the permutation-model expectation.  Identical degenerate inputs
    (both all-singleton or both one-cluster) return 1.0; any other zero
    normalization raises ``DegenerateARI``.
    """
    return _adjusted_rand(pair_counts(_partition_table(a, b)))


def jaccard(a: Clustering, b: Clustering) -> float:
    """Co-clustered pair overlap |both| / |either|; 1.0 when no pairs exist."""
    return _jaccard(pair_counts(_partition_table(a, b)))


def f_measure(a: Clustering, b: Clustering) -> float:
    """Harmonic mean of pair precision and recall; 1.0 when no pairs exist."""
    return _f_measure(pair_counts(_partition_table(a, b)))


def mutual_information(a: Clustering, b: Clustering) -> float:
    """Mutual information (nats) between the two partition label variables."""
    return _mutual_information(_partition_table(a, b))


def _nmi(table: ContingencyTable, norm: str) -> float:
    if norm not in NMI_NORMS:
        raise ValueError(f"norm must be one of {NMI_NORMS}, got {norm!r}")
    h_a = _entropy_from_sizes(table.row_sums, table.n_elements)
    h_b = _entropy_from_sizes(table.col_sums, table.n_elements)
    if h_a == 0.0 and h_b == 0.0:
        return 1.0  # both trivial one-cluster partitions, hence identical
    if norm == "min":
        denominator = min(h_a, h_b)
    elif norm == "sqrt":
        denominator = float(np.sqrt(h_a * h_b))
    elif norm == "avg":
        denominator = (h_a + h_b) / 2.0
    else:
        denominator = max(h_a, h_b)
    if denominator == 0.0:
        return 0.0  # one side carries no information at all
    value = _mutual_information(table) / denominator
    # mathematically in [0, 1]; shave off float round-off
    return min(max(value, 0.0), 1.0)


def nmi(a: Clustering, b: Clustering, norm: str = "avg") -> float:
    """Normalized mutual information with ``norm`` in min/sqrt/avg/max."""
    return _nmi(_partition_table(a, b), norm)


def _vi(table: ContingencyTable) -> float:
    # sum_km (n/N) * [ln(a_k/n) + ln(b_m/n)]; identical inputs give exact 0.0
    nz = table.counts > 0
    joint = table.counts[nz].astype(np.float64)
    rows = np.broadcast_to(table.row_sums[:, None], table.counts.shape)[nz]
    cols = np.broadcast_to(table.col_sums[None, :], table.counts.shape)[nz]
    terms = joint / table.n_elements * (np.log(rows / joint) + np.log(cols / joint))
    return float(terms.sum())


def vi(a: Clustering, b: Clustering) -> float:
    """Variation of information (nats): H(A|B) + H(B|A).

    A metric on partitions: zero iff the partitions coincide, symmetric,
    and obeying the triangle inequality.
    """
    return _vi(_partition_table(a, b))


def _h(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    safe = np.where(x > 0.0, x, 1.0)
    return -safe * np.log(safe)


def _onmi_conditional(table: ContingencyTable) -> tuple[np.ndarray, np.ndarray]:
    """Per-cluster normalized conditional entropies, both directions."""
    n = np.asarray(table.counts, dtype=np.float64)
    size_a = table.row_sums.astype(np.float64)[:, None]
    size_b = table.col_sums.astype(np.float64)[None, :]
    total = float(table.n_elements)
    # joint distribution of the two binary membership indicators
    p11 = n / total
    p10 = (size_a - n) / total
    p01 = (size_b - n) / total
    p00 = (total - size_a - size_b + n) / total
    h11, h10, h01, h00 = _h(p11), _h(p10), _h(p01), _h(p00)
    joint_entropy = h11 + h10 + h01 + h00
    # marginals share the joint's float expressions so a perfect match
    # yields a conditional entropy of exactly zero
    h_a = _h(size_a[:, 0] / total) + _h((total - size_a[:, 0]) / total)
    h_b = _h(size_b[0, :] / total) + _h((total - size_b[0, :]) / total)
    # candidates must carry more agreement than disagreement information
    admissible = (h11 + h00) > (h01 + h10)
    # conditional entropies, non-negative up to round-off
    cond_ab = np.maximum(joint_entropy - h_b[None, :], 0.0)
    cond_ba = np.maximum(joint_entropy - h_a[:, None], 0.0)

    def reduce(cond: np.ndarray, fallback: np.ndarray, axis: int) -> np.ndarray:
        masked = np.where(admissible, cond, np.inf)
        best = masked.min(axis=axis)
        has_candidate = admissible.any(axis=axis)
        return np.where(has_candidate, best, fallback)

    best_ab = reduce(cond_ab, h_a, axis=1)
    best_ba = reduce(cond_ba, h_b, axis=0)
    norm_ab = np.divide(best_ab, h_a, out=np.zeros_like(best_ab), where=h_a > 0)
    norm_ba = np.divide(best_ba, h_b, out=np.zeros_like(best_ba), where=h_b > 0)
    return norm_ab, norm_ba


def onmi(a: Clustering, b: Clustering) -> float:
    """Overlap-capable NMI treating each cluster as a binary variable.

    For each cluster of one side, the best admissible match on the other
    side bounds its conditional entropy; candidates whose joint carries
    more disagreement than agreement information are rejected, falling
    back to total ignorance.  Accepts overlapping clusterings.
    """
    norm_ab, norm_ba = _onmi_conditional(contingency(a, b))
    value = 1.0 - 0.5 * (float(norm_ab.mean()) + float(norm_ba.mean()))
    return min(max(value, 0.0), 1.0)
