"""CLI surface: subcommands, exit codes, JSON output."""

import json
import os

from endolab import cli

HERE = os.path.dirname(__file__)
DEMO = os.path.join(HERE, "..", "workspaces", "demo.json")


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", DEMO)
    assert code == 0
    assert "ok" in out


def test_validate_json(capsys):
    code, out, _ = run(capsys, "validate", DEMO, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert "e1R" in payload["modules"]


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/ws.json")
    assert code == 2
    assert "error" in err


def test_corrupted_workspace_is_input_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"rings": {"r": {"moduli": [4], "mul": [[[1]]], "one": [2]}}}',
                 encoding="utf-8")
    code, _, err = run(capsys, "validate", str(p))
    assert code == 2
    assert "r" in err


def test_analyze_e1R(capsys):
    code, out, _ = run(capsys, "analyze", DEMO, "e1R")
    assert code == 0
    assert "abelian endoregular: true" in out
    assert "subdirect product of simples: false" in out


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", DEMO, "e1R", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["end_size"] == 2
    assert payload["properties"]["abelian endoregular"]["value"] is True
    assert payload["radical_order"] == 2


def test_analyze_unknown_id(capsys):
    code, _, err = run(capsys, "analyze", DEMO, "nope")
    assert code == 2
    assert "nope" in err


def test_incidence_command(capsys):
    code, out, _ = run(capsys, "incidence", DEMO, "diamond", "z2",
                       "--module", "z2-regular", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["basis_pairs"] == 9
    assert payload["end_sizes"] == [2, 2]
    assert payload["isomorphic"] is True


def test_incidence_unknown_poset(capsys):
    code, _, err = run(capsys, "incidence", DEMO, "cube", "z2")
    assert code == 2
    assert "cube" in err


def test_search_small_deterministic(capsys):
    code1, out1, _ = run(capsys, "search", DEMO, "--count", "5",
                         "--seed", "11", "--json")
    code2, out2, _ = run(capsys, "search", DEMO, "--count", "5",
                         "--seed", "11", "--json")
    assert code1 == code2 == 0
    assert out1 == out2
    records = [json.loads(line) for line in out1.splitlines()]
    assert records
    assert all(r["status"] in ("pass", "skip") for r in records)


def test_suite_json_records_have_schema(tmp_path, capsys):
    ws = {
        "rings": {"z6": {"moduli": [6], "mul": [[[1]]], "one": [1]}},
        "modules": {"m": {"ring": "z6", "regular": True, "projective": True}},
        "corpora": {"c": ["m"]},
    }
    p = tmp_path / "ws.json"
    p.write_text(json.dumps(ws), encoding="utf-8")
    code, out, _ = run(capsys, "suite", str(p), "--json")
    assert code == 0
    for line in out.splitlines():
        rec = json.loads(line)
        assert {"corpus", "object", "check", "status", "detail"} <= set(rec)
        assert rec["status"] in ("pass", "fail", "skip")


def test_suite_without_corpora_is_input_error(tmp_path, capsys):
    p = tmp_path / "ws.json"
    p.write_text('{"rings": {}}', encoding="utf-8")
    code, _, err = run(capsys, "suite", str(p))
    assert code == 2
