from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from cli.documents import load_strategy, load_tree  # noqa: E402
from config import SETTINGS  # noqa: E402
from criteria.compare import evaluate  # noqa: E402
from criteria.schemas import CriterionId  # noqa: E402
from dtree.reduction import strategy_lottery  # noqa: E402
from lottery.degrees import KappaRank  # noqa: E402
from solver.dynamic import dp_optimize  # noqa: E402
from solver.exhaustive import exhaustive_optimize  # noqa: E402

DEMO = ROOT / "demo"
RUN_KEYS = {"criterion", "trials", "seed", "violations", "expected", "matches"}


def pinned_values() -> list[tuple[str, object, object]]:
    chn = load_tree(DEMO / "chn_gap_tree.json")
    chpi = load_tree(DEMO / "chpi_gap_tree.json")
    kappa = load_tree(DEMO / "kappa_tree.json")
    greedy = load_strategy(DEMO / "chn_greedy_strategy.json")
    return [
        ("chn greedy", evaluate(CriterionId.CHN, strategy_lottery(chn, greedy)), Fraction(653, 1000)),
        ("chn dp", dp_optimize(chn, CriterionId.CHN, unsafe=True).value, Fraction(653, 1000)),
        ("chn exhaustive", exhaustive_optimize(chn, CriterionId.CHN).value, Fraction(27, 40)),
        ("chn pruned", exhaustive_optimize(chn, CriterionId.CHN, prune=True).value, Fraction(27, 40)),
        ("chpi dp", dp_optimize(chpi, CriterionId.CHPI, unsafe=True).value, Fraction(353, 1000)),
        ("chpi exhaustive", exhaustive_optimize(chpi, CriterionId.CHPI).value, Fraction(3539, 10000)),
        ("omeu dp", dp_optimize(kappa, CriterionId.OMEU).value, KappaRank(1)),
    ]


def check_runs(path: Path) -> int:
    rows = []
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            rows.append(json.loads(line))
        except json.JSONDecodeError:
            print(f"FAIL: invalid JSONL at line {i} of {path}")
            return 1
    for idx, r in enumerate(rows):
        missing = RUN_KEYS - r.keys()
        if missing:
            print(f"FAIL: fuzz run {idx} missing {sorted(missing)}")
            return 1
        if not r["matches"]:
            print(f"FAIL: fuzz run {idx} ({r['criterion']}, seed {r['seed']}) contradicts {r['expected']}")
            return 1
    print(f"PASS: {len(rows)} fuzz runs match their expected classification")
    return 0


def main() -> int:
    for name, got, expected in pinned_values():
        if got != expected:
            print(f"FAIL: {name} = {got}, expected {expected}")
            return 1
    print("PASS: pinned values reproduced")

    runs = SETTINGS.runtime_dir / "fuzz_runs.jsonl"
    if runs.exists():
        return check_runs(runs)
    print(f"SKIP: no {runs}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
