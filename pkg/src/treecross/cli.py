"""Command-line interface.

Subcommands:
  analyze     crossing counts and predictions for one input file (JSON)
  ptable      exact crossing-probability table for a given n (CSV)
  random      sample labeled trees, optionally conditioned (edge-list text)
  experiment  prediction-error ensembles over random trees (CSV)
  verify      exact and Monte-Carlo self-checks (report lines)

Exit codes: 0 success, 1 failed check or exhausted sampler, 2 input error.
Every output stream starts with a comment or field echoing the semantic
invocation (seed included); the workers and output flags change neither
results nor that echo.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, TextIO

from .graph_core import (
    LabeledTree,
    LinearArrangement,
    ValidationError,
    build_tree,
    format_tree,
    identity_positions,
)
from .predictors import build_p_table, expected_e0_random_tree, expected_k2_random_tree, verify_identity
from .random_trees import SamplerConfig, SamplingExhaustedError, sample_conditioned, stream

_STREAM_RANDOM = 3
_STREAM_VERIFY = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treecross",
        description="Edge crossings in linear arrangements of trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
        p.add_argument("--workers", type=int, default=None, help="parallel workers (default: machine)")
        p.add_argument("--output", default="-", help="output path, or - for stdout")

    p = sub.add_parser("analyze", help="report crossings and predictions for one file")
    p.add_argument("input", help="edge-list tree file, or CoNLL-U file with --format conllu")
    p.add_argument("--format", choices=("edgelist", "conllu"), default="edgelist")
    p.add_argument("--arrangement", default=None, help="positions file (edgelist only; default identity)")
    common(p)

    p = sub.add_parser("ptable", help="exact p(cross | d1, d2) table as CSV")
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("random", help="sample uniformly random labeled trees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--max-crossings", type=int, default=None,
                   help="reject trees whose identity-order crossing count exceeds this")
    p.add_argument("--max-attempts", type=int, default=10_000_000)
    common(p)

    p = sub.add_parser("experiment", help="prediction-error ensembles over random trees")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=14)
    p.add_argument("--replicas", type=int, default=1000)
    p.add_argument("--c-true", default="0,1,2,3", help="comma-separated crossing counts")
    p.add_argument("--quota-mode", choices=("per-cell", "post-hoc"), default="per-cell")
    p.add_argument("--max-attempts", type=int, default=1_000_000_000,
                   help="candidate budget per work unit")
    common(p)

    p = sub.add_parser("verify", help="self-checks: exact identities and Monte-Carlo laws")
    p.add_argument("--n-max", type=int, default=8, help="identity checks run for n in 4..n_max")
    p.add_argument("--mc-samples", type=int, default=10_000)
    common(p)

    return parser


def _open_output(spec: str):
    if spec == "-":
        return sys.stdout, False
    return open(spec, "w", encoding="utf-8"), True


def conllu_ingest(path: str | Path) -> tuple[list[tuple[LabeledTree, LinearArrangement]], int]:
    """Read (tree, surface-order arrangement) pairs from a CoNLL-U file.

    Only token ids and heads are used. Multiword ranges (ids like 1-2)
    and empty nodes (ids like 1.1) are outside the tree and ignored.
    Sentences that do not form a tree (no single root, cycles, gaps in
    the id sequence) are skipped and counted, not fatal.
    """
    sentences: list[tuple[LabeledTree, LinearArrangement]] = []
    skipped = 0
    rows: list[tuple[int, int]] = []

    def flush() -> None:
        nonlocal skipped
        if not rows:
            return
        try:
            n = len(rows)
            if [i for i, _ in rows] != list(range(1, n + 1)):
                raise ValidationError("token ids are not 1..n")
            roots = [i for i, h in rows if h == 0]
            if len(roots) != 1:
                raise ValidationError(f"{len(roots)} roots")
            tree = build_tree(n, [(i, h) for i, h in rows if h != 0])
            sentences.append((tree, LinearArrangement(identity_positions(n))))
        except ValidationError:
            skipped += 1
        finally:
            rows.clear()

    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                flush()
                continue
            if line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) < 7:
                raise ValidationError(f"{path}:{lineno}: expected tab-separated columns with a head field")
            token_id = cols[0]
            if "-" in token_id or "." in token_id:
                continue
            try:
                idx = int(token_id)
                head = int(cols[6])
            except ValueError:
                raise ValidationError(
                    f"{path}:{lineno}: non-integer id or head ({token_id!r}, {cols[6]!r})"
                ) from None
            rows.append((idx, head))
    flush()
    return sentences, skipped


def cmd_analyze(args, out: TextIO) -> int:
    from .experiments import analyze, analyze_fixture

    invocation = (
        f"treecross analyze --format {args.format}"
        + (f" --arrangement {args.arrangement}" if args.arrangement else "")
        + f" --seed {args.seed} {args.input}"
    )
    if args.format == "edgelist":
        report = analyze_fixture(args.input, args.arrangement)
        payload = {
            "invocation": invocation,
            "input": str(args.input),
            "format": "edgelist",
            "arrangement": str(args.arrangement) if args.arrangement else None,
            "report": report.as_dict(),
        }
    else:
        if args.arrangement:
            raise ValidationError("--arrangement only applies to edgelist input")
        pairs, skipped = conllu_ingest(args.input)
        payload = {
            "invocation": invocation,
            "input": str(args.input),
            "format": "conllu",
            "skipped_sentences": skipped,
            "sentences": [analyze(tree, arr).as_dict() for tree, arr in pairs],
        }
    json.dump(payload, out, indent=2)
    out.write("\n")
    return 0


def cmd_ptable(args, out: TextIO) -> int:
    if args.n < 2:
        raise ValidationError(f"--n must be >= 2, got {args.n}")
    table = build_p_table(args.n)
    out.write(f"# treecross ptable --n {args.n} --seed {args.seed}\n")
    out.write("d1,d2,p_num,p_den,p\n")
    for d1 in range(1, args.n):
        for d2 in range(1, args.n):
            p = table.fractions[d1 - 1][d2 - 1]
            out.write(f"{d1},{d2},{p.numerator},{p.denominator},{float(p)!r}\n")
    return 0


def cmd_random(args, out: TextIO) -> int:
    if args.n < 1 or args.count < 1:
        raise ValidationError("--n and --count must be positive")
    invocation = (
        f"treecross random --n {args.n} --count {args.count}"
        + (f" --max-crossings {args.max_crossings}" if args.max_crossings is not None else "")
        + f" --max-attempts {args.max_attempts} --seed {args.seed}"
    )
    out.write(f"# {invocation}\n")
    config = SamplerConfig(
        n=args.n,
        seed=args.seed,
        max_crossings=args.max_crossings,
        max_attempts=args.max_attempts,
    )
    rng = stream(args.seed, _STREAM_RANDOM)
    for i in range(1, args.count + 1):
        tree, attempts = sample_conditioned(config, rng)
        out.write(format_tree(tree, comments=[f"tree {i}/{args.count} attempts={attempts}"]))
        if i < args.count:
            out.write("\n")
    return 0


def cmd_experiment(args, out: TextIO) -> int:
    from .experiments import EnsembleConfig, format_experiment_csv, run_ensemble

    try:
        c_values = tuple(int(part) for part in args.c_true.split(",") if part != "")
    except ValueError:
        raise ValidationError(f"--c-true must be comma-separated integers, got {args.c_true!r}") from None
    try:
        config = EnsembleConfig(
            n_min=args.n_min,
            n_max=args.n_max,
            replicas=args.replicas,
            c_true_values=c_values,
            seed=args.seed,
            quota_mode=args.quota_mode,
            max_attempts=args.max_attempts,
        )
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    invocation = (
        f"treecross experiment --n-min {config.n_min} --n-max {config.n_max}"
        f" --replicas {config.replicas} --c-true {','.join(map(str, config.c_true_values))}"
        f" --quota-mode {config.quota_mode} --max-attempts {config.max_attempts}"
        f" --seed {config.seed}"
    )
    stats = run_ensemble(config, workers=args.workers)
    out.write(format_experiment_csv(stats, invocation))
    if any(s.partial for s in stats):
        print("warning: some cells are partial (quota not reached)", file=sys.stderr)
    return 0


def cmd_verify(args, out: TextIO) -> int:
    from .random_trees import aldous_broder
    from .graph_core import degree_second_moment
    from .predictors import e0
    from .random_trees import all_labeled_trees

    if args.n_max < 4:
        raise ValidationError(f"--n-max must be >= 4, got {args.n_max}")
    out.write(
        f"# treecross verify --n-max {args.n_max} --mc-samples {args.mc_samples} --seed {args.seed}\n"
    )
    failures = 0

    def report(ok: bool, label: str, detail: str) -> None:
        nonlocal failures
        if not ok:
            failures += 1
        out.write(f"{'PASS' if ok else 'FAIL'} {label}: {detail}\n")

    third = Fraction(1, 3)
    for n in range(4, args.n_max + 1):
        value = verify_identity(n)
        report(value == third, f"length-mix identity n={n}", f"{value} == 1/3")

    # exhaustive n=4: average expected crossings over all 16 labeled trees
    trees4 = list(all_labeled_trees(4))
    mean_e0 = sum(e0(t) for t in trees4) / len(trees4)
    target = expected_e0_random_tree(4)
    report(
        abs(mean_e0 - target) < 1e-12,
        "exhaustive n=4 average of e0",
        f"{mean_e0} == {target}",
    )

    # Monte-Carlo laws for random labeled trees
    for n in (5, 10):
        rng = stream(args.seed, _STREAM_VERIFY, n)
        k2s = []
        e0s = []
        for _ in range(args.mc_samples):
            t = aldous_broder(n, rng)
            k2s.append(degree_second_moment(t))
            e0s.append(e0(t))
        for label, values, expect in (
            (f"mean squared degree n={n}", k2s, expected_k2_random_tree(n)),
            (f"mean e0 n={n}", e0s, expected_e0_random_tree(n)),
        ):
            mean = sum(values) / len(values)
            var = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
            se = (var / len(values)) ** 0.5
            ok = abs(mean - expect) <= 3 * se
            report(ok, label, f"{mean:.4f} vs {expect:.4f} (3 SE = {3 * se:.4f})")

    out.write(f"{'OK' if failures == 0 else 'FAILED'}: {failures} failed checks\n")
    return 0 if failures == 0 else 1


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out, close = _open_output(args.output)
    try:
        if args.command == "analyze":
            return cmd_analyze(args, out)
        if args.command == "ptable":
            return cmd_ptable(args, out)
        if args.command == "random":
            return cmd_random(args, out)
        if args.command == "experiment":
            return cmd_experiment(args, out)
        if args.command == "verify":
            return cmd_verify(args, out)
        raise AssertionError(f"unhandled command {args.command}")
    except (ValidationError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SamplingExhaustedError as exc:
        print(f"error: {exc} (attempts={exc.attempts})", file=sys.stderr)
        return 1
    finally:
        if close:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
