"""Acceptance gate: the headline guarantees at their stated tolerances.

Each test prints one [PASS]/[FAIL] line naming its criterion (run pytest
with -s to see the lines for passing tests too).  Scenario tables are
computed once per module and shared by the criteria that read them.
"""

import itertools
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest
from scipy import stats

from clucmp import (
    build_clustering,
    contingency,
    element_score_values,
    f_measure,
    jaccard,
    pair_counts,
    ppr_affinity_matrix,
    ppr_partition_analytic,
    run_scenario,
    run_zoom,
    similarity,
    vi,
)

from conftest import labels_clustering, random_clustering, random_flat


@contextmanager
def criterion(name):
    try:
        yield
    except AssertionError:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def means_by_param(table, measure):
    rows = [r for r in table.rows if r.measure == measure]
    return {r.param: r.mean for r in rows}


def table_row(table, measure, param):
    for r in table.rows:
        if r.measure == measure and r.param == param:
            return r
    raise KeyError((measure, param))


@pytest.fixture(scope="module")
def shuffle_table():
    start = time.monotonic()
    table = run_scenario(
        "shuffle",
        n=1024,
        k=32,
        reps=100,
        seed=20_240_815,
        measures=("ari", "onmi", "elsim", "vi"),
        grid=(0.0, 0.5, 0.6, 0.9, 1.0),
    )
    return table, time.monotonic() - start


@pytest.fixture(scope="module")
def skew_table():
    start = time.monotonic()
    table = run_scenario(
        "skew",
        n=1024,
        k=32,
        reps=20,
        seed=77,
        measures=("elsim", "nmi_avg", "jaccard", "fmeasure", "vi"),
        steps=10_000,
        bins=40,
    )
    return table, time.monotonic() - start


@pytest.fixture(scope="module")
def clustercount_table():
    table = run_scenario(
        "clustercount",
        n=1024,
        reps=100,
        seed=99,
        measures=("elsim", "nmi_min", "nmi_sqrt", "nmi_avg", "nmi_max", "vi"),
        grid=tuple(2**j for j in range(3, 11)),
    )
    return table


@pytest.fixture(scope="module")
def bothrandom_table():
    table = run_scenario(
        "bothrandom",
        n=1024,
        reps=100,
        seed=41,
        measures=("elsim", "onmi"),
        grid=tuple(2**j for j in range(3, 11)),
    )
    return table


def test_identity_and_range_suite():
    with criterion(
        "identity & range: 200 random clusterings (N<=256), "
        "similarity(A,A)=1 within 1e-10, all S_i in [0,1], runtime < 60 s"
    ):
        start = time.monotonic()
        rng = np.random.default_rng(20_240_815)
        kinds = itertools.cycle(("flat", "cover", "hierarchy"))
        for _ in range(200):
            n = int(rng.integers(2, 257))
            c = random_clustering(rng, n, kind=next(kinds))
            report = similarity(c, c)
            assert abs(report.score - 1.0) <= 1e-10
            values = np.fromiter(
                report.element_scores.scores.values(), dtype=np.float64
            )
            assert values.min() >= 0.0 and values.max() <= 1.0
        assert time.monotonic() - start < 60.0


def test_analytic_vs_numeric_ppr():
    with criterion(
        "analytic vs numeric affinities: 100 random partitions (N<=200), "
        "max elementwise deviation <= 1e-8"
    ):
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(100):
            n = int(rng.integers(2, 201))
            c = random_flat(rng, n, k_max=12)
            numeric = ppr_affinity_matrix(c, alpha=0.9)
            analytic = np.vstack(
                [row.p for row in ppr_partition_analytic(c, alpha=0.9)]
            )
            worst = max(worst, float(np.abs(numeric - analytic).max()))
        assert worst <= 1e-8


def test_worked_example():
    with criterion(
        "worked example: {{1,2},{3}} vs {{1},{2,3}} at alpha=0.9 "
        "scores 0.5 within 1e-10"
    ):
        a = build_clustering({"x": [1, 2], "y": [3]})
        b = build_clustering({"p": [1], "q": [2, 3]})
        assert similarity(a, b, alpha=0.9).score == pytest.approx(0.5, abs=1e-10)


def test_pair_count_oracle():
    with criterion(
        "pair-count oracle: 500 random partition pairs (N<=30) match brute "
        "force exactly; J = F/(2-F) within 1e-12"
    ):
        rng = np.random.default_rng(11)
        for _ in range(500):
            n = int(rng.integers(2, 31))
            a = random_flat(rng, n)
            b = random_flat(rng, n)
            pc = pair_counts(contingency(a, b))
            of_a = {e: cid for cid, ms in a.clusters.items() for e in ms}
            of_b = {e: cid for cid, ms in b.clusters.items() for e in ms}
            brute = [0, 0, 0, 0]
            for x, y in itertools.combinations(a.universe.ids, 2):
                same_a = of_a[x] == of_a[y]
                same_b = of_b[x] == of_b[y]
                brute[0] += same_a and same_b
                brute[1] += same_a and not same_b
                brute[2] += same_b and not same_a
                brute[3] += not same_a and not same_b
            assert [pc.n11, pc.n10, pc.n01, pc.n00] == brute
            f = f_measure(a, b)
            assert abs(jaccard(a, b) - f / (2 - f)) <= 1e-12


def test_scenario_shuffle(shuffle_table):
    table, elapsed = shuffle_table
    with criterion(
        "shuffle scenario (N=1024, K=32, 100 reps): ARI(p=1) within 0.02 of 0; "
        "ONMI(p=0.6) <= 0.02; elsim(p=1) > 0.02 with |elsim(1.0)-elsim(0.9)| "
        "< 0.02; runtime < 10 min"
    ):
        ari = means_by_param(table, "ari")
        onmi = means_by_param(table, "onmi")
        elsim = means_by_param(table, "elsim")
        assert abs(ari[1.0]) <= 0.02
        assert onmi[0.6] <= 0.02
        assert elsim[1.0] > 0.02
        assert abs(elsim[1.0] - elsim[0.9]) < 0.02
        assert elapsed < 600.0


def test_scenario_skew(skew_table):
    table, elapsed = skew_table
    with criterion(
        "skew scenario (20 reps): Spearman(bin entropy, mean) positive for "
        "elsim and NMI, negative for Jaccard and F; runtime < 10 min"
    ):
        for measure, sign in (
            ("elsim", 1),
            ("nmi_avg", 1),
            ("jaccard", -1),
            ("fmeasure", -1),
        ):
            by_param = means_by_param(table, measure)
            params = sorted(by_param)
            rho = stats.spearmanr(params, [by_param[p] for p in params]).statistic
            assert sign * rho > 0.0, (measure, rho)
        assert elapsed < 600.0


def test_scenario_clustercount(clustercount_table):
    with criterion(
        "cluster-count scenario: every NMI normalization strictly increases "
        "from n=8 to n=1024 while elsim strictly decreases"
    ):
        grid = tuple(2**j for j in range(3, 11))
        for norm in ("nmi_min", "nmi_sqrt", "nmi_avg", "nmi_max"):
            means = [means_by_param(clustercount_table, norm)[c] for c in grid]
            assert all(x < y for x, y in zip(means, means[1:])), (norm, means)
        elsim = [means_by_param(clustercount_table, "elsim")[c] for c in grid]
        assert all(x > y for x, y in zip(elsim, elsim[1:])), elsim


def test_scenario_bothrandom(bothrandom_table):
    with criterion(
        "both-random scenario: elsim is non-monotone in c and reaches exactly "
        "1.0 at c=2^10; ONMI(c=2^10) is exactly 1.0"
    ):
        grid = tuple(2**j for j in range(3, 11))
        elsim = [means_by_param(bothrandom_table, "elsim")[c] for c in grid]
        dip = int(np.argmin(elsim))
        assert 0 < dip < len(grid) - 1
        assert elsim[0] > elsim[dip] < elsim[-1]
        last = table_row(bothrandom_table, "elsim", 1024)
        assert last.mean == 1.0 and last.std == 0.0
        assert table_row(bothrandom_table, "onmi", 1024).mean == 1.0


def test_vi_identity_and_triangle():
    with criterion(
        "VI: identity exactly 0.0; triangle inequality on 1000 random "
        "partition triples (N<=50) within 1e-10"
    ):
        rng = np.random.default_rng(3)
        for _ in range(50):
            c = random_flat(rng, int(rng.integers(2, 51)))
            assert vi(c, c) == 0.0
        for _ in range(1000):
            n = int(rng.integers(3, 51))
            a, b, c = (random_flat(rng, n) for _ in range(3))
            assert vi(a, c) <= vi(a, b) + vi(b, c) + 1e-10


def test_vi_scenario_trends(shuffle_table, skew_table, clustercount_table):
    with criterion(
        "VI trends: increases with shuffle fraction, shrinks alongside the "
        "size entropy under skew (the counter-intuitive metric direction), "
        "and grows from n=8 to n=1024 cluster counts"
    ):
        shuffle_vi = means_by_param(shuffle_table[0], "vi")
        assert shuffle_vi[0.0] < shuffle_vi[0.5] < shuffle_vi[1.0]
        skew_vi = means_by_param(skew_table[0], "vi")
        params = sorted(skew_vi)
        rho = stats.spearmanr(params, [skew_vi[p] for p in params]).statistic
        assert rho > 0.0, rho
        count_vi = means_by_param(clustercount_table, "vi")
        assert count_vi[1024] > count_vi[8]


def test_zoom_lens():
    with criterion(
        "zoom: best-matching level at r=-10 sits strictly above the "
        "best-matching level at r=+10 (depth 4, leaf_size 4, alpha 0.9)"
    ):
        rows = run_zoom(depth=4, leaf_size=4, alpha=0.9, r_grid=(-10.0, 10.0))
        best = {}
        for r in (-10.0, 10.0):
            levels = [(row.similarity, row.level) for row in rows if row.r == r]
            best[r] = max(levels)[1]
        assert best[-10.0] < best[10.0]
