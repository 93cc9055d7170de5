from __future__ import annotations

import contextlib
import io
import json

import pytest

from tl2b.cli import main


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


@pytest.mark.parametrize("argv", [
    ["relations", "--n", "2"],
    ["gram", "--n", "2"],
    ["basis", "--n", "3"],
    ["spinchain", "--n", "3"],
    ["modules", "--n", "3"],
    ["irreps", "--n", "2"],
    ["irreps", "--n", "3", "--theta", "+,0,+,+"],
])
def test_commands_pass(argv):
    code, out = run(argv + ["--seed", "2"])
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass"
    assert doc["schema"] == "tl2b/1"
    assert doc["config"]["seed"] == 2
    assert "version" in doc


def test_reports_are_deterministic():
    _, first = run(["basis", "--n", "3", "--seed", "9"])
    _, second = run(["basis", "--n", "3", "--seed", "9"])
    assert first == second


def test_report_embeds_point():
    _, out = run(["gram", "--n", "2", "--seed", "4"])
    doc = json.loads(out)
    assert set(doc["point"]) == {"s", "a", "v", "t", "bound"}
    assert doc["det_halfdiagram_basis"] != "0"
    assert doc["normalization_exponent"] == 4
    assert len(doc["exceptional_points"]) == 8


def test_modules_table_n3():
    _, out = run(["modules", "--n", "3"])
    doc = json.loads(out)
    dims = sorted(d["dim"] for d in doc["modules"])
    assert dims == [1, 1, 1, 1, 4, 8]
    assert any(e["to"] == "W(3)(b)" for e in doc["embedding_edges"])


def test_exceptional_report():
    code, out = run(["irreps", "--n", "4", "--theta=-,3,+,-"])
    doc = json.loads(out)
    assert code == 0 and doc["dims"] == doc["expected_dims"]


def test_failure_exit_code(monkeypatch):
    import tl2b.cli as cli

    def broken_audit(spec):
        return [{"identity_id": "forced", "status": "fail",
                 "deviation": "entry(0,0)"}]

    monkeypatch.setattr(cli.wordrep, "relation_audit", broken_audit)
    code, out = run(["relations", "--n", "2"])
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "fail"
    assert doc["first_failure"]["identity_id"] == "forced"


def test_csv_format(tmp_path):
    target = tmp_path / "gram.csv"
    code, _ = run(["gram", "--n", "2", "--out", str(target),
                   "--format", "csv"])
    lines = target.read_text().splitlines()
    assert lines[0].startswith("basis,")
    assert len(lines) == 5


def test_bad_chain_length():
    with pytest.raises(SystemExit):
        run(["relations", "--n", "1"])


def test_explicit_twist_roundtrip():
    code, out = run(["gram", "--n", "2", "--theta", "5/9"])
    doc = json.loads(out)
    assert code == 0 and doc["point"]["t"] == "5/9"


def test_symbolic_backend_guard():
    with pytest.raises(SystemExit):
        run(["relations", "--n", "5", "--backend", "symbolic"])
