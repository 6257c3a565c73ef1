from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Sequence

from cli.documents import (
    StrategyDocument,
    TreeDocument,
    WitnessDocument,
    dumps,
    load_strategy,
    load_tree,
    load_witness,
    write_document,
)
from cli.render import describe_value, dump_tree, lottery_text, value_text
from config import SETTINGS, append_jsonl, ensure_runtime_dir
from criteria.binary import BinaryUtility
from criteria.compare import evaluate
from criteria.schemas import CriterionId, Embedding
from dtree.generator import TreeProfile, random_tree
from dtree.model import TreeMode
from dtree.reduction import strategy_lottery
from dtree.validation import errors_only, validate_strategy, validate_tree
from errors import BudgetExceededError, DocumentError, PossibilisticError
from lottery.degrees import KappaRank, parse_rational
from propcheck.dichotomy import dichotomy_report
from propcheck.fuzz import fuzz_monotonicity, replay
from propcheck.scaling import scaling_report
from solver.optimizer import meets_threshold, optimize
from solver.results import Method, OptimizationResult

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _err(line: str) -> None:
    sys.stderr.write(line + "\n")


def _embedding(args: argparse.Namespace) -> Embedding | None:
    return Embedding(args.embedding) if args.embedding else None


def _budget(args: argparse.Namespace) -> int | None:
    budget = args.budget if args.budget is not None else SETTINGS.strategy_budget
    return budget or None


def _report_issues(issues) -> int:
    for issue in issues:
        _out(str(issue))
    return EXIT_DOMAIN if errors_only(issues) else EXIT_OK


def _print_stats(result: OptimizationResult) -> None:
    s = result.stats
    visits = f" nodes_visited={s.nodes_visited} edges_visited={s.edges_visited}" if result.method is Method.DP else ""
    _err(
        f"method={result.label}{visits} strategies_examined={s.strategies_examined} "
        f"pruned={s.pruned} wall_time_sec={s.wall_time_sec:.6f}"
    )


def cmd_check(args: argparse.Namespace) -> int:
    tree = load_tree(args.tree)
    criterion = CriterionId(args.criterion) if args.criterion else None
    status = _report_issues(validate_tree(tree, criterion))
    if status == EXIT_OK:
        _out("ok")
    return status


def cmd_evaluate(args: argparse.Namespace) -> int:
    tree = load_tree(args.tree)
    strategy = load_strategy(args.strategy)
    criterion = CriterionId(args.criterion)
    issues = validate_tree(tree, criterion)
    if errors_only(issues):
        return _report_issues(issues)
    issues = validate_strategy(tree, strategy)
    if issues:
        return _report_issues(issues)
    lottery = strategy_lottery(tree, strategy)
    _out(f"lottery: {lottery_text(lottery)}")
    value = evaluate(criterion, lottery, _embedding(args))
    if value is None:
        _out(f"value: - ({criterion.value} is pairwise only)")
    else:
        _out(f"value: {describe_value(value)}")
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    tree = load_tree(args.tree)
    result = optimize(
        tree,
        CriterionId(args.criterion),
        method=Method(args.method),
        embedding=_embedding(args),
        unsafe=args.unsafe_dp,
        budget=_budget(args),
        workers=args.workers if args.workers is not None else SETTINGS.workers,
        prune=args.prune,
    )
    document = StrategyDocument.from_strategy(result.strategy)
    if args.out:
        write_document(document, args.out)
        _out(f"value: {describe_value(result.value)}")
    else:
        sys.stdout.write(dumps(document))
        _err(f"value: {describe_value(result.value)}")
    _err(f"lottery: {lottery_text(result.reduced)}")
    _print_stats(result)
    return EXIT_OK


def _replay(path: str) -> int:
    witness, trial = load_witness(path)
    violation = replay(trial, symmetric=witness.symmetric)
    if witness.reproduced_by(violation):
        _out(f"reproduced: {witness.criterion.value} {witness.left_value} vs {witness.right_value}")
        return EXIT_OK
    _out("not reproduced")
    return EXIT_DOMAIN


def cmd_fuzz(args: argparse.Namespace) -> int:
    if args.replay:
        return _replay(args.replay)
    if not args.criterion:
        raise DocumentError("fuzz needs --criterion (or --replay)")
    criterion = CriterionId(args.criterion)
    trials = args.trials if args.trials is not None else SETTINGS.fuzz_trials
    report = fuzz_monotonicity(
        criterion,
        trials,
        args.seed,
        symmetric=args.symmetric,
        embedding=_embedding(args),
        pinned=not args.no_pinned,
    )
    _out(f"{criterion.value}: {report.violations} violations in {trials} trials (seed {args.seed})")
    summary = report.summary()
    if report.first is not None:
        left, right = report.first.left_value, report.first.right_value
        _out(f"first violation at trial {report.first_index}: {value_text(left)} vs {value_text(right)}")
        path = Path(args.witness) if args.witness else ensure_runtime_dir() / f"witness-{criterion.value}-{args.seed}.json"
        write_document(WitnessDocument.from_violation(report.first, args.symmetric), path)
        _out(f"witness: {path}")
        summary["witness"] = str(path)
    if SETTINGS.record_runs:
        append_jsonl(ensure_runtime_dir() / "fuzz_runs.jsonl", summary)
    expected = "monotone" if report.expected_monotone else "non-monotone"
    _out(f"expected {expected}: {'match' if report.matches_expectation else 'MISMATCH'}")
    return EXIT_OK if report.matches_expectation else EXIT_DOMAIN


def cmd_gen(args: argparse.Namespace) -> int:
    profile = TreeProfile(
        depth=args.depth,
        branching=args.branching,
        mode=TreeMode(args.mode),
        binary_leaves=args.binary,
        fixed_branching=not args.varied,
        leaf_percent=args.leaf_percent,
        max_decision_nodes=args.max_decisions,
    )
    document = TreeDocument.from_tree(random_tree(args.seed, profile))
    if args.out:
        write_document(document, args.out)
    else:
        sys.stdout.write(dumps(document))
    return EXIT_OK


def cmd_dump(args: argparse.Namespace) -> int:
    tree = load_tree(args.tree)
    strategy = load_strategy(args.strategy) if args.strategy else None
    for line in dump_tree(tree, strategy):
        _out(line)
    return EXIT_OK


def _threshold(criterion: CriterionId, text: str):
    if criterion is CriterionId.OMEU:
        return KappaRank.parse(text)
    if criterion is CriterionId.PU:
        parts = text.split(",")
        if len(parts) != 2:
            raise DocumentError(f"a PU threshold is 'top,bottom', got {text!r}")
        return BinaryUtility.of(parts[0], parts[1])
    return parse_rational(text)


def cmd_decide(args: argparse.Namespace) -> int:
    tree = load_tree(args.tree)
    criterion = CriterionId(args.criterion)
    threshold = _threshold(criterion, args.threshold)
    answer, result = meets_threshold(tree, criterion, threshold, _embedding(args), _budget(args))
    _out(f"{'yes' if answer else 'no'}: best {describe_value(result.value)} against {value_text(threshold)}")
    _print_stats(result)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    rows = scaling_report(range(1, args.max_depth + 1), args.branching, args.seed)
    _out("depth decisions edges dp_edges strategies enumerated")
    for r in rows:
        enumerated = "-" if r.enumerated is None else str(r.enumerated)
        _out(f"{r.depth} {r.decision_nodes} {r.edges} {r.dp_edges_visited} {r.strategies} {enumerated}")
        _err(f"depth={r.depth} dp_wall_time_sec={r.dp_wall_time_sec:.6f}")
    return EXIT_OK if all(r.linear and r.closed_form for r in rows) else EXIT_DOMAIN


def cmd_table(args: argparse.Namespace) -> int:
    rows = dichotomy_report(args.trials, args.seed, trees=args.trees, search=args.search)
    _out("criterion violations dp_exact gap expected observed")
    for r in rows:
        _out(f"{r.name} {r.violations} {r.dp_exact} {r.gap_witness} {r.expected} {r.observed}")
    return EXIT_OK if all(r.agrees for r in rows) else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="possdt", description="Possibilistic and kappa decision trees")
    sub = parser.add_subparsers(dest="command", required=True)
    criteria = [c.value for c in CriterionId]
    embeddings = [e.value for e in Embedding]

    p = sub.add_parser("check", help="validate a tree document")
    p.add_argument("tree")
    p.add_argument("--criterion", choices=criteria)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("evaluate", help="reduce a strategy and evaluate it")
    p.add_argument("tree")
    p.add_argument("strategy")
    p.add_argument("--criterion", choices=criteria, required=True)
    p.add_argument("--embedding", choices=embeddings)
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("optimize", help="find an optimal strategy")
    p.add_argument("tree")
    p.add_argument("--criterion", choices=criteria, required=True)
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.AUTO.value)
    p.add_argument("--embedding", choices=embeddings)
    p.add_argument("--unsafe-dp", action="store_true", default=False)
    p.add_argument("--budget", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--prune", action="store_true", default=False)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_optimize)

    p = sub.add_parser("fuzz", help="fuzz weak monotonicity, or replay a witness")
    p.add_argument("--criterion", choices=criteria)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--embedding", choices=embeddings)
    p.add_argument("--symmetric", action="store_true", default=False)
    p.add_argument("--no-pinned", action="store_true", default=False)
    p.add_argument("--witness")
    p.add_argument("--replay")
    p.set_defaults(handler=cmd_fuzz)

    p = sub.add_parser("gen", help="generate a random tree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--branching", type=int, default=2)
    p.add_argument("--mode", choices=[m.value for m in TreeMode], default=TreeMode.POSSIBILISTIC.value)
    p.add_argument("--binary", action="store_true", default=False, help="binary utilities on leaves")
    p.add_argument("--varied", action="store_true", default=False, help="arity drawn up to --branching")
    p.add_argument("--leaf-percent", type=int, default=0)
    p.add_argument("--max-decisions", type=int)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("dump", help="print a tree outline")
    p.add_argument("tree")
    p.add_argument("--strategy")
    p.set_defaults(handler=cmd_dump)

    p = sub.add_parser("decide", help="does some strategy reach a threshold?")
    p.add_argument("tree")
    p.add_argument("--criterion", choices=criteria, required=True)
    p.add_argument("--threshold", required=True, help="rational, kappa rank for omeu, 'top,bottom' for pu")
    p.add_argument("--embedding", choices=embeddings)
    p.add_argument("--budget", type=int)
    p.set_defaults(handler=cmd_decide)

    p = sub.add_parser("bench", help="solver work on growing trees")
    p.add_argument("--max-depth", type=int, default=4)
    p.add_argument("--branching", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("table", help="classify every criterion as dp-solvable or hard")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trees", type=int, default=50)
    p.add_argument("--search", type=int, default=0, help="random trees to search for a dp gap")
    p.set_defaults(handler=cmd_table)
    return parser


def run(handler: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    try:
        return handler(args)
    except DocumentError as exc:
        _err(f"parse error: {exc}")
        return EXIT_PARSE
    except BudgetExceededError as exc:
        _err(str(exc))
        return EXIT_BUDGET
    except PossibilisticError as exc:
        _err(f"error: {exc}")
        return EXIT_DOMAIN


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(args.handler, args)
