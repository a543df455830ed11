"""Command-line interface: compare clusterings, run scenarios, zoom hierarchies.

Exit codes: 0 success, 2 unparseable input (bad JSON, schema violations,
bad arguments), 3 universe mismatch, 4 measure unsupported for the given
input kind, 1 any other library error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

from .bench import (
    DEFAULT_BINS,
    DEFAULT_K,
    DEFAULT_N,
    DEFAULT_REPS,
    DEFAULT_STEPS,
    DEFAULT_ZOOM_R_GRID,
    SCENARIO_NAMES,
    run_scenario,
    run_zoom,
    zoom_to_csv,
)
from .elementsim import DEFAULT_ALPHA, DEFAULT_R, element_score_values
from .errors import (
    ClucmpError,
    MeasureInputUnsupported,
    NotAPartition,
    ParseError,
    UniverseMismatch,
)
from .measures import MEASURE_NAMES, evaluate
from .model import load_clustering

NMI_NORM_CHOICES = ("min", "sqrt", "avg", "max")


def _number_list(text: str) -> list:
    values = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            values.append(int(chunk))
        except ValueError:
            values.append(float(chunk))
    if not values:
        raise argparse.ArgumentTypeError("expected a comma-separated list of numbers")
    return values


def _measure_list(text: str) -> list[str]:
    names = [chunk.strip() for chunk in text.split(",") if chunk.strip()]
    unknown = [name for name in names if name not in MEASURE_NAMES]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown measures {unknown}; choose from {', '.join(MEASURE_NAMES)}"
        )
    return names


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clucmp",
        description="Compare clusterings and benchmark comparison measures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compare = sub.add_parser(
        "compare", help="evaluate one measure on two clustering JSON files"
    )
    compare.add_argument("file_a")
    compare.add_argument("file_b")
    compare.add_argument(
        "--measure",
        default="elsim",
        choices=MEASURE_NAMES + ("nmi",),
        help="measure name; plain nmi resolves via --norm",
    )
    compare.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    compare.add_argument("--r", type=float, default=DEFAULT_R)
    compare.add_argument("--norm", choices=NMI_NORM_CHOICES, default="avg")
    compare.add_argument(
        "--element-scores",
        action="store_true",
        help="attach the per-element score map (elsim only)",
    )
    compare.add_argument("--out", default=None, help="write JSON here instead of stdout")
    compare.set_defaults(func=_cmd_compare)

    scenario = sub.add_parser("scenario", help="run a bias scenario, emit CSV")
    scenario.add_argument("name", choices=SCENARIO_NAMES)
    scenario.add_argument("--n", type=int, default=DEFAULT_N)
    scenario.add_argument("--k", type=int, default=DEFAULT_K)
    scenario.add_argument("--reps", type=int, default=DEFAULT_REPS)
    scenario.add_argument("--seed", type=int, default=0)
    scenario.add_argument(
        "--measures",
        type=_measure_list,
        default=list(MEASURE_NAMES),
        help="comma-separated measure names (default: all)",
    )
    scenario.add_argument(
        "--grid",
        type=_number_list,
        default=None,
        help="comma-separated grid values (scenario-specific default)",
    )
    scenario.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    scenario.add_argument("--bins", type=int, default=DEFAULT_BINS)
    scenario.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    scenario.add_argument("--r", type=float, default=DEFAULT_R)
    scenario.add_argument("--out", default=None, help="write CSV here instead of stdout")
    scenario.set_defaults(func=_cmd_scenario)

    zoom = sub.add_parser(
        "zoom", help="similarity of a binary hierarchy to its level slices"
    )
    zoom.add_argument("--depth", type=int, default=4)
    zoom.add_argument("--leaf-size", type=int, default=4)
    zoom.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    zoom.add_argument(
        "--r-grid",
        type=_number_list,
        default=list(DEFAULT_ZOOM_R_GRID),
        help="comma-separated r values; use --r-grid=-10,10 for negative ones",
    )
    zoom.add_argument("--out", default=None, help="write CSV here instead of stdout")
    zoom.set_defaults(func=_cmd_zoom)
    return parser


def _emit(text: str, out_path: "str | None") -> None:
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_compare(args) -> int:
    try:
        a = load_clustering(args.file_a)
        b = load_clustering(args.file_b)
    except OSError as exc:
        print(f"clucmp: cannot read input: {exc}", file=sys.stderr)
        return 2
    except ClucmpError as exc:
        print(f"clucmp: invalid clustering file: {exc}", file=sys.stderr)
        return 2
    measure = args.measure
    if measure == "nmi":
        measure = f"nmi_{args.norm}"
    if args.element_scores and measure != "elsim":
        print("clucmp: --element-scores applies to measure elsim only", file=sys.stderr)
        return 2
    report: dict = {
        "measure": measure,
        "params": {"alpha": args.alpha, "r": args.r},
    }
    if args.element_scores:
        values = element_score_values(a, b, alpha=args.alpha, r=args.r)
        report["score"] = float(values.mean())
        report["element_scores"] = {
            str(e): float(v) for e, v in zip(a.universe.ids, values)
        }
    else:
        report["score"] = evaluate(measure, a, b, alpha=args.alpha, r=args.r)
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_scenario(args) -> int:
    table = run_scenario(
        args.name,
        n=args.n,
        k=args.k,
        reps=args.reps,
        seed=args.seed,
        measures=args.measures,
        grid=args.grid,
        steps=args.steps,
        bins=args.bins,
        alpha=args.alpha,
        r=args.r,
    )
    _emit(table.to_csv_text(), args.out)
    return 0


def _cmd_zoom(args) -> int:
    if args.depth < 2:
        print("clucmp: zoom needs --depth of at least 2", file=sys.stderr)
        return 2
    rows = run_zoom(
        depth=args.depth,
        leaf_size=args.leaf_size,
        alpha=args.alpha,
        r_grid=args.r_grid,
    )
    buf = io.StringIO()
    zoom_to_csv(rows, buf)
    _emit(buf.getvalue(), args.out)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"clucmp: {exc}", file=sys.stderr)
        return 2
    except UniverseMismatch as exc:
        print(f"clucmp: {exc}", file=sys.stderr)
        return 3
    except (MeasureInputUnsupported, NotAPartition) as exc:
        print(f"clucmp: {exc}", file=sys.stderr)
        return 4
    except ClucmpError as exc:
        print(f"clucmp: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
