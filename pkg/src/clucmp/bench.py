"""Benchmark scenarios probing measure biases, with CSV output.

Four scenarios stress different failure modes of clustering comparisons:

* ``shuffle``      - randomly permute a fraction p of memberships of an
                     equal-sized partition and compare against the original.
* ``skew``         - hold one random partition fixed while an independent
                     one drifts toward skewed sizes by preferential
                     attachment; measures are binned by size entropy.
* ``clustercount`` - compare a random partition with a fixed number of
                     clusters against random partitions with 2..1024.
* ``bothrandom``   - compare two independent random partitions with the
                     same number of clusters each.

Runs are deterministic in (seed, parameters) regardless of worker count:
every (grid point, repetition) gets its own spawned seed.  Worker
processes are capped by the ``CLUCMP_THREADS`` environment variable.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .elementsim import DEFAULT_ALPHA, DEFAULT_R, element_score_values
from .errors import UnknownScenario
from .measures import MEASURE_NAMES, evaluate_many
from .model import cluster_size_entropy
from .synthgen import (
    binary_hierarchy,
    equal_partition,
    level_slice,
    pa_skew,
    random_partition,
    shuffle_memberships,
)

__all__ = [
    "ScenarioRow",
    "ZoomRow",
    "ScenarioTable",
    "SCENARIO_NAMES",
    "DEFAULT_MEASURES",
    "run_scenario",
    "run_zoom",
    "zoom_to_csv",
]

SCENARIO_NAMES = ("shuffle", "skew", "clustercount", "bothrandom")
DEFAULT_MEASURES = MEASURE_NAMES

DEFAULT_N = 1024
DEFAULT_K = 32
DEFAULT_REPS = 100
DEFAULT_STEPS = 10_000
DEFAULT_BINS = 40
DEFAULT_SHUFFLE_GRID = tuple(i / 20 for i in range(21))
DEFAULT_COUNT_GRID = tuple(2**j for j in range(1, 11))
DEFAULT_BOTH_GRID = tuple(2**j for j in range(3, 11))
FIXED_COUNT_SIDE = 8
DEFAULT_ZOOM_R_GRID = (-10.0, -5.0, 0.0, 5.0, 10.0)

CSV_COLUMNS = ("scenario", "param", "measure", "mean", "std", "reps", "seed")


@dataclass(frozen=True)
class ScenarioRow:
    """One (scenario, grid value, measure) aggregate."""

    scenario: str
    param: "int | float"
    measure: str
    mean: float
    std: float
    reps: int
    seed: int


@dataclass(frozen=True)
class ZoomRow:
    """Similarity of a hierarchy to one of its flat level slices at one r."""

    r: float
    level: int
    similarity: float


def _format_number(value) -> str:
    # repr floats round-trip exactly; ints stay bare
    return repr(float(value)) if isinstance(value, float) else str(value)


def _parse_number(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


@dataclass(frozen=True)
class ScenarioTable:
    """Aggregated scenario results, sorted by (scenario, param, measure)."""

    rows: tuple[ScenarioRow, ...]

    def to_csv(self, target) -> None:
        """Write CSV to a path or text file object, byte-deterministically."""
        if hasattr(target, "write"):
            self._write(target)
        else:
            with open(target, "w", encoding="utf-8", newline="") as fh:
                self._write(fh)

    def _write(self, fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(
                [
                    row.scenario,
                    _format_number(row.param),
                    row.measure,
                    repr(row.mean),
                    repr(row.std),
                    row.reps,
                    row.seed,
                ]
            )

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        self._write(buf)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, source) -> "ScenarioTable":
        """Read back a table written by :meth:`to_csv` (exact round trip)."""
        if hasattr(source, "read"):
            return cls._read(source)
        with open(source, encoding="utf-8", newline="") as fh:
            return cls._read(fh)

    @classmethod
    def _read(cls, fh) -> "ScenarioTable":
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {header!r}")
        rows = [
            ScenarioRow(
                scenario=rec[0],
                param=_parse_number(rec[1]),
                measure=rec[2],
                mean=float(rec[3]),
                std=float(rec[4]),
                reps=int(rec[5]),
                seed=int(rec[6]),
            )
            for rec in reader
            if rec
        ]
        return cls(rows=tuple(rows))


def _resolve_workers(n_units: int) -> int:
    env = os.environ.get("CLUCMP_THREADS")
    if env is not None:
        cap = int(env)
        if cap < 1:
            raise ValueError("CLUCMP_THREADS must be a positive integer")
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, n_units))


def _run_units(worker: Callable, payloads: Sequence[tuple]) -> list:
    """Run payloads through the worker, in order, optionally in parallel."""
    workers = _resolve_workers(len(payloads))
    if workers <= 1 or len(payloads) <= 1:
        return [worker(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, payloads))


def _unit_rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def _aggregate(
    scenario: str,
    param,
    samples: dict[str, list[float]],
    seed: int,
    reps: int,
) -> list[ScenarioRow]:
    rows = []
    for measure in sorted(samples):
        values = np.asarray(samples[measure], dtype=np.float64)
        rows.append(
            ScenarioRow(
                scenario=scenario,
                param=param,
                measure=measure,
                mean=float(values.mean()),
                std=float(values.std()),
                reps=reps,
                seed=seed,
            )
        )
    return rows


def _shuffle_unit(payload: tuple) -> list[ScenarioRow]:
    grid_index, p, n, k, reps, seed, measures, alpha, r = payload
    base = equal_partition(n, k)
    samples: dict[str, list[float]] = {m: [] for m in measures}
    for rep in range(reps):
        rng = _unit_rng(seed, grid_index, rep)
        other = shuffle_memberships(base, p, rng)
        for name, value in evaluate_many(measures, base, other, alpha, r).items():
            samples[name].append(value)
    return _aggregate("shuffle", p, samples, seed, reps)


def _clustercount_unit(payload: tuple) -> list[ScenarioRow]:
    grid_index, c, n, k_fixed, reps, seed, measures, alpha, r = payload
    samples: dict[str, list[float]] = {m: [] for m in measures}
    for rep in range(reps):
        rng = _unit_rng(seed, grid_index, rep)
        a = random_partition(n, k_fixed, rng)
        b = random_partition(n, c, rng)
        for name, value in evaluate_many(measures, a, b, alpha, r).items():
            samples[name].append(value)
    return _aggregate("clustercount", c, samples, seed, reps)


def _bothrandom_unit(payload: tuple) -> list[ScenarioRow]:
    grid_index, c, n, reps, seed, measures, alpha, r = payload
    samples: dict[str, list[float]] = {m: [] for m in measures}
    for rep in range(reps):
        rng = _unit_rng(seed, grid_index, rep)
        a = random_partition(n, c, rng)
        b = random_partition(n, c, rng)
        for name, value in evaluate_many(measures, a, b, alpha, r).items():
            samples[name].append(value)
    return _aggregate("bothrandom", c, samples, seed, reps)


def _skew_unit(payload: tuple) -> list[tuple[float, dict[str, float]]]:
    rep, n, k, steps, seed, measures, alpha, r = payload
    rng = _unit_rng(seed, rep)
    # The fixed side and the walk seed have independent memberships, so
    # every snapshot comparison isolates the size-sequence effect.
    reference = random_partition(n, k, rng)
    start = random_partition(n, k, rng)
    points = []
    for snapshot, entropy in pa_skew(start, steps, rng):
        points.append(
            (entropy, evaluate_many(measures, reference, snapshot, alpha, r))
        )
    return points


def _bin_skew_points(
    points: list[tuple[float, dict[str, float]]],
    bins: int,
    measures: Sequence[str],
    seed: int,
) -> list[ScenarioRow]:
    entropies = np.array([e for e, _ in points])
    lo = float(entropies.min())
    hi = float(entropies.max())
    if hi > lo:
        width = (hi - lo) / bins
        indices = np.minimum((entropies - lo) / width, bins - 1).astype(int)
    else:
        width = 0.0
        indices = np.zeros(len(points), dtype=int)
    rows: list[ScenarioRow] = []
    for b in range(bins):
        mask = indices == b
        count = int(mask.sum())
        if count == 0:
            continue
        center = lo + (b + 0.5) * width if width > 0.0 else lo
        selected = [points[i][1] for i in np.flatnonzero(mask)]
        for measure in sorted(measures):
            values = np.array([s[measure] for s in selected])
            rows.append(
                ScenarioRow(
                    scenario="skew",
                    param=center,
                    measure=measure,
                    mean=float(values.mean()),
                    std=float(values.std()),
                    reps=count,
                    seed=seed,
                )
            )
    return rows


def run_scenario(
    name: str,
    n: int = DEFAULT_N,
    k: int = DEFAULT_K,
    reps: int = DEFAULT_REPS,
    seed: int = 0,
    measures: Sequence[str] = DEFAULT_MEASURES,
    grid: Sequence["int | float"] | None = None,
    steps: int = DEFAULT_STEPS,
    bins: int = DEFAULT_BINS,
    alpha: float = DEFAULT_ALPHA,
    r: float = DEFAULT_R,
) -> ScenarioTable:
    """Run one named scenario and aggregate it into a sorted table.

    ``grid`` overrides the scenario's default sweep: the shuffled fraction
    for ``shuffle``, the varying cluster count for ``clustercount`` and
    ``bothrandom``; ``skew`` sweeps nothing and instead bins its ``steps``
    drift snapshots (times ``reps`` walks) into ``bins`` entropy bins.
    """
    measures = tuple(measures)
    if name == "shuffle":
        sweep = tuple(grid) if grid is not None else DEFAULT_SHUFFLE_GRID
        payloads = [
            (gi, float(p), n, k, reps, seed, measures, alpha, r)
            for gi, p in enumerate(sweep)
        ]
        results = _run_units(_shuffle_unit, payloads)
        rows = [row for unit in results for row in unit]
    elif name == "clustercount":
        sweep = tuple(grid) if grid is not None else DEFAULT_COUNT_GRID
        payloads = [
            (gi, int(c), n, FIXED_COUNT_SIDE, reps, seed, measures, alpha, r)
            for gi, c in enumerate(sweep)
        ]
        results = _run_units(_clustercount_unit, payloads)
        rows = [row for unit in results for row in unit]
    elif name == "bothrandom":
        sweep = tuple(grid) if grid is not None else DEFAULT_BOTH_GRID
        payloads = [
            (gi, int(c), n, reps, seed, measures, alpha, r)
            for gi, c in enumerate(sweep)
        ]
        results = _run_units(_bothrandom_unit, payloads)
        rows = [row for unit in results for row in unit]
    elif name == "skew":
        payloads = [
            (rep, n, k, steps, seed, measures, alpha, r) for rep in range(reps)
        ]
        results = _run_units(_skew_unit, payloads)
        points = [point for unit in results for point in unit]
        rows = _bin_skew_points(points, bins, measures, seed)
    else:
        raise UnknownScenario(f"unknown scenario {name!r}")
    rows.sort(key=lambda row: (row.scenario, row.param, row.measure))
    return ScenarioTable(rows=tuple(rows))


def run_zoom(
    depth: int = 4,
    leaf_size: int = 4,
    alpha: float = DEFAULT_ALPHA,
    r_grid: Sequence[float] = DEFAULT_ZOOM_R_GRID,
) -> list[ZoomRow]:
    """Similarity of a complete binary hierarchy to each of its level slices.

    For every r in the grid the hierarchy is compared against the flat
    clustering formed by each tree depth 0..depth.  Negative r pulls the
    affinities toward coarse levels, positive r toward fine ones, so the
    best-matching level shifts accordingly.
    """
    hierarchy = binary_hierarchy(depth, leaf_size)
    slices = [level_slice(hierarchy, d) for d in range(depth + 1)]
    rows = []
    for r in sorted(float(x) for x in r_grid):
        for level, flat in enumerate(slices):
            values = element_score_values(hierarchy, flat, alpha=alpha, r=r)
            rows.append(ZoomRow(r=r, level=level, similarity=float(values.mean())))
    return rows


def zoom_to_csv(rows: Iterable[ZoomRow], target) -> None:
    """Write zoom rows as CSV (columns r, level, similarity)."""

    def write(fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("r", "level", "similarity"))
        for row in rows:
            writer.writerow([repr(row.r), row.level, repr(row.similarity)])

    if hasattr(target, "write"):
        write(target)
    else:
        with open(target, "w", encoding="utf-8", newline="") as fh:
            write(fh)
