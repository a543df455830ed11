"""Registry of comparison measures under stable CLI names.

``evaluate_many`` is the preferred entry point when several measures run
on one pair: the contingency table is built once and shared.  Measures
that only make sense for flat partitions raise
``MeasureInputUnsupported`` on anything else.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .baselines import (
    ContingencyTable,
    _adjusted_rand,
    _f_measure,
    _jaccard,
    _nmi,
    _onmi_conditional,
    _rand_index,
    _vi,
    contingency,
    pair_counts,
)
from .elementsim import DEFAULT_ALPHA, DEFAULT_R, element_score_values
from .errors import MeasureInputUnsupported, UnknownMeasure
from .model import Clustering

__all__ = ["MEASURE_NAMES", "evaluate", "evaluate_many"]

# partition-only pair-counting and information measures
_PARTITION_MEASURES = (
    "ri",
    "ari",
    "jaccard",
    "fmeasure",
    "nmi_min",
    "nmi_sqrt",
    "nmi_avg",
    "nmi_max",
    "vi",
)

# every registered measure name, in registry order
MEASURE_NAMES = ("elsim",) + _PARTITION_MEASURES + ("onmi",)


def _onmi_from_table(table: ContingencyTable) -> float:
    norm_ab, norm_ba = _onmi_conditional(table)
    value = 1.0 - 0.5 * (float(norm_ab.mean()) + float(norm_ba.mean()))
    return min(max(value, 0.0), 1.0)


def evaluate_many(
    names: Iterable[str],
    a: Clustering,
    b: Clustering,
    alpha: float = DEFAULT_ALPHA,
    r: float = DEFAULT_R,
) -> dict[str, float]:
    """Evaluate several measures on one pair, sharing the contingency table."""
    requested = list(names)
    for name in requested:
        if name not in MEASURE_NAMES:
            raise UnknownMeasure(f"unknown measure {name!r}")
    table: ContingencyTable | None = None
    counts = None
    out: dict[str, float] = {}

    def shared_table() -> ContingencyTable:
        nonlocal table
        if table is None:
            table = contingency(a, b)
        return table

    for name in requested:
        if name == "elsim":
            out[name] = float(element_score_values(a, b, alpha=alpha, r=r).mean())
            continue
        if name == "onmi":
            out[name] = _onmi_from_table(shared_table())
            continue
        t = shared_table()
        if not t.partitions:
            raise MeasureInputUnsupported(
                f"measure {name!r} requires two flat partitions"
            )
        if name in ("ri", "ari", "jaccard", "fmeasure"):
            if counts is None:
                counts = pair_counts(t)
            if name == "ri":
                out[name] = _rand_index(counts)
            elif name == "ari":
                out[name] = _adjusted_rand(counts)
            elif name == "jaccard":
                out[name] = _jaccard(counts)
            else:
                out[name] = _f_measure(counts)
        elif name == "vi":
            out[name] = _vi(t)
        else:
            out[name] = _nmi(t, name.removeprefix("nmi_"))
    return out


def evaluate(
    name: str,
    a: Clustering,
    b: Clustering,
    alpha: float = DEFAULT_ALPHA,
    r: float = DEFAULT_R,
) -> float:
    """Evaluate one registered measure on a pair of clusterings."""
    return evaluate_many([name], a, b, alpha=alpha, r=r)[name]
