from __future__ import annotations

import json

import pytest

from cli.commands import EXIT_BUDGET, EXIT_DOMAIN, EXIT_OK, EXIT_PARSE, main
from cli.documents import StrategyDocument, TreeDocument, WitnessDocument, dumps, load_tree, parse_document
from config import SETTINGS


@pytest.fixture(autouse=True)
def runtime(tmp_path, monkeypatch):
    monkeypatch.setattr(SETTINGS, "runtime_dir", tmp_path / "runtime")
    monkeypatch.setattr(SETTINGS, "record_runs", True)
    monkeypatch.setattr(SETTINGS, "strategy_budget", 0)
    monkeypatch.setattr(SETTINGS, "workers", 1)
    return tmp_path / "runtime"


def _write(path, payload) -> str:
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
    return str(path)


def _single_leaf(utility) -> dict:
    return {
        "version": 1,
        "root": "D0",
        "nodes": [
            {"id": "D0", "kind": "decision", "children": ["C0"]},
            {"id": "C0", "kind": "chance", "edges": [{"child": "L0", "degree": "1"}]},
            {"id": "L0", "kind": "leaf", "utility": utility},
        ],
    }


def test_check_ok(demo_dir, capsys):
    assert main(["check", str(demo_dir / "chn_gap_tree.json"), "--criterion", "chn"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "ok"


def test_check_reports_an_unnormalized_chance_node(tmp_path, capsys):
    doc = _single_leaf("0.3")
    doc["nodes"][1]["edges"][0]["degree"] = "0.9"
    assert main(["check", _write(tmp_path / "t.json", doc)]) == EXIT_DOMAIN
    assert "normalization" in capsys.readouterr().out


def test_check_the_outline_tree(demo_dir, capsys):
    assert main(["check", str(demo_dir / "outline_tree.json")]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "ok"


@pytest.mark.parametrize(
    "text",
    [
        '{"version": 1, "root": "D0", "nodes": [',
        json.dumps({**_single_leaf("0.3"), "nodes": [{"id": "L0", "kind": "leaf", "utility": 0.3}]}),
        json.dumps({**_single_leaf("0.3"), "version": 2}),
        json.dumps({**_single_leaf("0.3"), "colour": "red"}),
        json.dumps(_single_leaf("three tenths")),
    ],
)
def test_malformed_documents_exit_with_parse_status(tmp_path, capsys, text):
    assert main(["check", _write(tmp_path / "bad.json", text)]) == EXIT_PARSE
    assert "parse error" in capsys.readouterr().err


def test_missing_file_is_a_parse_error(tmp_path):
    assert main(["check", str(tmp_path / "nope.json")]) == EXIT_PARSE


def test_unnormalized_utility_pair_is_a_parse_error(tmp_path, capsys):
    doc = _single_leaf("0.3")
    doc["nodes"][2] = {"id": "L0", "kind": "leaf", "utility_pair": ["0.5", "0.5"]}
    assert main(["check", _write(tmp_path / "pair.json", doc)]) == EXIT_PARSE
    assert "parse error" in capsys.readouterr().err


def test_negative_kappa_rank_is_a_parse_error(demo_dir, tmp_path, capsys):
    doc = json.loads((demo_dir / "kappa_tree.json").read_text())
    doc["nodes"][-1]["mu"] = "-1"
    assert main(["check", _write(tmp_path / "kappa.json", doc)]) == EXIT_PARSE
    assert "parse error" in capsys.readouterr().err


def test_evaluate_the_greedy_strategy(demo_dir, capsys):
    status = main(
        ["evaluate", str(demo_dir / "chn_gap_tree.json"), str(demo_dir / "chn_greedy_strategy.json"), "--criterion", "chn"]
    )
    assert status == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out == ["lottery: <0.2/0, 0.5/0.51, 1/1>", "value: 653/1000 = 0.653"]


def test_evaluate_a_certain_outcome(tmp_path, capsys):
    tree = _write(tmp_path / "t.json", _single_leaf("0.3"))
    strategy = _write(tmp_path / "s.json", {"version": 1, "choices": {"D0": "C0"}})
    assert main(["evaluate", tree, strategy, "--criterion", "upes"]) == EXIT_OK
    assert "value: 3/10 = 0.3" in capsys.readouterr().out


def test_evaluate_a_kappa_strategy(demo_dir, tmp_path, capsys):
    strategy = _write(tmp_path / "s.json", {"version": 1, "choices": {"D0": "C0", "D1": "C2"}})
    assert main(["evaluate", str(demo_dir / "kappa_tree.json"), strategy, "--criterion", "omeu"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[-1] == "value: 1"


def test_evaluate_refuses_an_incomplete_strategy(demo_dir, tmp_path, capsys):
    strategy = _write(tmp_path / "s.json", {"version": 1, "choices": {"D0": "C0", "D1": "C1", "D2": "bottom"}})
    assert main(["evaluate", str(demo_dir / "chn_gap_tree.json"), strategy, "--criterion", "chn"]) == EXIT_DOMAIN
    assert "completeness" in capsys.readouterr().out


def test_optimize_writes_a_strategy_document(demo_dir, capsys):
    assert main(["optimize", str(demo_dir / "chn_gap_tree.json"), "--criterion", "upes"]) == EXIT_OK
    captured = capsys.readouterr()
    document = parse_document(StrategyDocument, captured.out)
    assert document.choices["D1"] == "C1"
    assert "method=dp nodes_visited=" in captured.err


def test_optimize_to_a_file(demo_dir, tmp_path, capsys):
    out = tmp_path / "best.json"
    assert main(["optimize", str(demo_dir / "chn_gap_tree.json"), "--criterion", "chn", "--out", str(out)]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.strip() == "value: 27/40 = 0.675"
    assert "method=exhaustive strategies_examined=" in captured.err
    assert "nodes_visited" not in captured.err
    assert parse_document(StrategyDocument, out.read_text()).choices == {"D0": "C0", "D1": "C2", "D2": "C3"}


def test_dp_on_chpi_is_refused_without_the_unsafe_flag(demo_dir, capsys):
    tree = str(demo_dir / "chpi_gap_tree.json")
    assert main(["optimize", tree, "--criterion", "chpi", "--method", "dp"]) == EXIT_DOMAIN
    assert "not weakly monotone" in capsys.readouterr().err
    assert main(["optimize", tree, "--criterion", "chpi", "--method", "dp", "--unsafe-dp"]) == EXIT_OK
    err = capsys.readouterr().err
    assert "value: 353/1000 = 0.353" in err
    assert "method=heuristic" in err


def test_budget_exit_status(demo_dir):
    tree = str(demo_dir / "chn_gap_tree.json")
    assert main(["optimize", tree, "--criterion", "chn", "--budget", "1"]) == EXIT_BUDGET


def test_fuzz_a_monotone_criterion(runtime, capsys):
    assert main(["fuzz", "--criterion", "upes", "--trials", "50", "--seed", "0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "upes: 0 violations in 50 trials (seed 0)" in out
    assert "expected monotone: match" in out
    record = json.loads((runtime / "fuzz_runs.jsonl").read_text().splitlines()[-1])
    assert record["criterion"] == "upes"
    assert record["matches"] is True


def test_fuzz_records_and_replays_a_witness(tmp_path, capsys):
    witness = tmp_path / "witness.json"
    assert main(["fuzz", "--criterion", "chn", "--trials", "20", "--seed", "1", "--witness", str(witness)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "first violation at trial 0: 0.653 vs 0.675" in out
    document = parse_document(WitnessDocument, witness.read_text())
    assert document.criterion.value == "chn"
    assert document.alpha == "0.55"

    assert main(["fuzz", "--replay", str(witness)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("reproduced: chn")

    tampered = document.model_copy(update={"left_value": "0.7"})
    witness.write_text(dumps(tampered))
    assert main(["fuzz", "--replay", str(witness)]) == EXIT_DOMAIN
    assert capsys.readouterr().out.strip() == "not reproduced"


def test_fuzz_witness_defaults_to_the_runtime_dir(runtime, capsys):
    assert main(["fuzz", "--criterion", "chpi", "--trials", "5", "--seed", "3"]) == EXIT_OK
    assert (runtime / "witness-chpi-3.json").exists()


def test_fuzz_needs_a_criterion():
    assert main(["fuzz"]) == EXIT_PARSE


def test_gen_is_deterministic(tmp_path, capsys):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    args = ["gen", "--seed", "7", "--depth", "3", "--branching", "3", "--varied", "--leaf-percent", "30"]
    assert main([*args, "--out", str(first)]) == EXIT_OK
    assert main([*args, "--out", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert main(["check", str(first)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "ok"


def test_gen_kappa_trees(capsys):
    assert main(["gen", "--seed", "4", "--mode", "kappa", "--depth", "2"]) == EXIT_OK
    document = parse_document(TreeDocument, capsys.readouterr().out)
    assert document.mode.value == "kappa"
    for node in document.nodes:
        if node.kind == "chance":
            assert "0" in [e.degree for e in node.edges]


def test_tree_documents_read_back_unchanged(tmp_path, chn_tree):
    path = _write(tmp_path / "t.json", dumps(TreeDocument.from_tree(chn_tree)))
    assert load_tree(path) == chn_tree


def test_dump_marks_the_chosen_children(demo_dir, capsys):
    status = main(["dump", str(demo_dir / "chn_gap_tree.json"), "--strategy", str(demo_dir / "chn_greedy_strategy.json")])
    assert status == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# mode=possibilistic root=D0"
    assert "  * C0 chance" in lines
    assert "    [0.55] D1 decision" in lines
    assert "      * C1 chance" in lines
    assert "      - C2 chance" in lines
    assert "        [0.2] L0 leaf 0" in lines


def test_documents_and_listings_print_degrees_alike(demo_dir, capsys):
    tree = str(demo_dir / "kappa_tree.json")
    document = TreeDocument.from_tree(load_tree(tree))
    degrees = {e.degree for node in document.nodes for e in node.edges or []}
    assert main(["dump", tree]) == EXIT_OK
    out = capsys.readouterr().out
    assert degrees
    assert all(f"[{degree}] " in out for degree in degrees)


def test_decide(demo_dir, capsys):
    tree = str(demo_dir / "chn_gap_tree.json")
    assert main(["decide", tree, "--criterion", "chn", "--threshold", "0.675"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "yes: best 27/40 = 0.675 against 0.675"
    assert main(["decide", tree, "--criterion", "chn", "--threshold", "7/10"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("no:")
    assert main(["decide", tree, "--criterion", "pu", "--embedding", "pessimistic", "--threshold", "1,0.5"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("yes:")
    assert main(["decide", tree, "--criterion", "pu", "--embedding", "pessimistic", "--threshold", "0.5"]) == EXIT_PARSE


def test_bench(capsys):
    assert main(["bench", "--max-depth", "3", "--branching", "2"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "depth decisions edges dp_edges strategies enumerated"
    assert [line.split()[4] for line in lines[1:]] == ["2", "8", "128"]
