"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 bad input data, 3 verification
failure (including a radius too small to construct the interleaving).
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import warnings
from collections import Counter

from .branch import branch_to_dot, branch_to_json, extract_branch_points
from .errors import DataError, StabilityError
from .fuzz import run_fuzz
from .hierarchy import build_gamma, gamma_to_dot, gamma_to_json, slice_ultrametric
from .io import read_cloud
from .metric import METRICS, config_hausdorff_distance, distance_matrix
from .stability import InterleavingReport, NestedPair, verify_interleaving


EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _delimiter(value):
    value = {"\\t": "\t", "tab": "\t"}.get(value, value)
    if len(value) != 1:
        raise argparse.ArgumentTypeError("delimiter must be a single character")
    return value


def _nonneg_int(value):
    v = int(value)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--k", type=_nonneg_int, default=0, help="density parameter (default 0)")
    common.add_argument("--metric", choices=METRICS, default="euclidean")
    common.add_argument("--delimiter", type=_delimiter, default=",", help="CSV delimiter (default ',')")
    common.add_argument("--header", action="store_true", help="skip the first CSV row")
    common.add_argument("--dedupe", action="store_true", help="drop repeated points with a warning")
    common.add_argument("--out", help="output path (default: standard output)")

    tree_opts = _Parser(add_help=False)
    tree_opts.add_argument("--format", choices=("json", "dot"), default="json")
    tree_opts.add_argument("--epsilon-merge", type=float, default=None, help="merge scale values closer than this")

    parser = _Parser(prog="branchstab", description="Degree-Rips hierarchies, branch points and their stability.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hierarchy", parents=[common, tree_opts], help="component hierarchy over all scales")
    p.add_argument("input")

    p = sub.add_parser("branches", parents=[common, tree_opts], help="branch-point tree")
    p.add_argument("input")
    p.add_argument("--strict-births", action="store_true", help="do not count blocks at the smallest scale as births")

    p = sub.add_parser("ultrametric", parents=[common], help="merge-height matrix of one scale slice")
    p.add_argument("input")
    p.add_argument("--scale-index", type=_nonneg_int, required=True)
    p.add_argument("--epsilon-merge", type=float, default=None)

    p = sub.add_parser("confdist", parents=[common], help="configuration-space Hausdorff distance")
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser("stability", parents=[common], help="verify the branch-point interleaving for X inside Y")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--r", type=float, default=None, help="radius (default: configuration distance + 1e-9)")

    p = sub.add_parser("fuzz", help="run the interleaving check on seeded random nested pairs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=_nonneg_int, default=50)
    p.add_argument("--k", type=_nonneg_int, default=2, help="largest k drawn")
    p.add_argument("--max-points", type=_nonneg_int, default=20)
    p.add_argument("--metric", choices=METRICS, default="euclidean")
    p.add_argument("--out", help="write per-instance results as JSON")
    return parser


def _emit(args, text, summary):
    """Artifact to --out (summary on stdout) or to stdout (summary on stderr)."""
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)


def _load(args, path):
    return read_cloud(path, delimiter=args.delimiter, header=args.header, dedupe=args.dedupe)


def _dumps(data):
    return json.dumps(data, indent=2) + "\n"


def cmd_hierarchy(args):
    cloud = _load(args, args.input)
    tree = build_gamma(distance_matrix(cloud, args.metric), args.k, epsilon_merge=args.epsilon_merge)
    text = _dumps(gamma_to_json(tree)) if args.format == "json" else gamma_to_dot(tree)
    _emit(args, text, f"n={tree.n} k={tree.k} scales={len(tree.grid)} nodes={len(tree.nodes)}")
    return EXIT_OK


def cmd_branches(args):
    cloud = _load(args, args.input)
    tree = build_gamma(distance_matrix(cloud, args.metric), args.k, epsilon_merge=args.epsilon_merge)
    bt = extract_branch_points(tree, strict_minimal_births=args.strict_births)
    text = _dumps(branch_to_json(bt)) if args.format == "json" else branch_to_dot(bt)
    counts = Counter(bt.tags.values())
    _emit(
        args,
        text,
        f"n={tree.n} k={tree.k} branch_points={len(bt)} birth={counts['birth']} merge={counts['merge']}",
    )
    return EXIT_OK


def cmd_ultrametric(args):
    cloud = _load(args, args.input)
    tree = build_gamma(distance_matrix(cloud, args.metric), args.k, epsilon_merge=args.epsilon_merge)
    if args.scale_index >= len(tree.grid):
        raise UsageError(f"--scale-index {args.scale_index} out of range (grid has {len(tree.grid)} scales)")
    try:
        labels, mat = slice_ultrametric(tree, args.scale_index)
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    buf = io.StringIO()
    buf.write("," + ",".join(str(l) for l in labels) + "\n")
    for lab, row in zip(labels, mat):
        buf.write(str(lab) + "," + ",".join(format(v, ".17g") for v in row) + "\n")
    _emit(args, buf.getvalue(), f"scale={tree.grid[args.scale_index]!r} blocks={len(labels)}")
    return EXIT_OK


def cmd_confdist(args):
    x, y = _load(args, args.x), _load(args, args.y)
    if x.dim != y.dim:
        raise DataError(f"dimension mismatch: {x.dim} vs {y.dim}")
    value = config_hausdorff_distance(x, y, args.k, args.metric)
    print(repr(value))
    return EXIT_OK


def cmd_stability(args):
    x, y = _load(args, args.x), _load(args, args.y)
    if args.r is not None and not args.r > 0:
        raise UsageError("--r must be positive")
    try:
        pair = NestedPair.build(x, y, args.k, r=args.r, metric=args.metric)
        report = verify_interleaving(pair)
    except StabilityError as exc:
        value = config_hausdorff_distance(x, y, args.k, args.metric)
        report = InterleavingReport(args.metric, args.k, args.r, value, {}, 0.0, error=str(exc))
    status = "pass" if report.passed else "FAIL"
    summary = f"{status}: k={report.k} r={report.r!r} config_hausdorff={report.config_hausdorff!r} max_shift={report.max_shift!r}"
    if report.error:
        summary += f"\nerror: {report.error}"
    _emit(args, report.dumps(), summary)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_fuzz(args):
    outcomes = run_fuzz(args.seed, args.count, max_points=args.max_points, max_k=args.k, metric=args.metric)
    failed = [o for o in outcomes if not o.passed]
    for o in failed:
        bad = [name for name, c in o.report.checks.items() if not c.passed]
        print(f"instance {o.instance}: |X|={o.n_x} |Y|={o.n_y} k={o.k} failed {', '.join(bad)}")
    if args.out:
        rows = [
            {"instance": o.instance, "n_x": o.n_x, "n_y": o.n_y, "k": o.k, "report": o.report.to_json()}
            for o in outcomes
        ]
        with open(args.out, "w") as fh:
            fh.write(_dumps(rows))
    print(f"seed={args.seed} instances={len(outcomes)} passed={len(outcomes) - len(failed)} failed={len(failed)}")
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {
    "hierarchy": cmd_hierarchy,
    "branches": cmd_branches,
    "ultrametric": cmd_ultrametric,
    "confdist": cmd_confdist,
    "stability": cmd_stability,
    "fuzz": cmd_fuzz,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                return COMMANDS[args.command](args)
            finally:
                for w in caught:
                    print(f"warning: {w.message}", file=sys.stderr)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
