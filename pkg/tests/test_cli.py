import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from toricliaison import liaison
from toricliaison.cli import main
from toricliaison.groebner import IdealPresentation
from toricliaison.poly import Mono

GOLDEN = Path(__file__).parent / "golden"
TRIANGLE = "1 2;2 3;3 1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gb_c4(capsys):
    code, out, _ = run(capsys, "gb", "--corpus", "C4", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["groebner_basis"] == ["e1*e3 - e2*e4"]
    assert report["initial_ideal"] == ["e1*e3"]
    assert report["height"] == 1


def test_cycles_on_forest(capsys):
    code, out, _ = run(capsys, "cycles", "--graph", "1 2;2 3", "--format", "json")
    assert code == 0 and json.loads(out)["cycles"] == []


@pytest.mark.parametrize("command", ["cycles", "toric", "gb", "chain", "vd"])
def test_triangle_is_a_domain_error(capsys, command):
    code, _, err = run(capsys, command, "--graph", TRIANGLE)
    assert code == 2 and "OddCycleFound" in err


def test_pom_validate_zigzag(capsys, tmp_path):
    text = "\n".join(f"{i} {i + 5}" for i in range(1, 6)) + "\n" + "\n".join(f"{i} {i + 6}" for i in range(1, 5))
    path = tmp_path / "zigzag.txt"
    path.write_text(text)
    code, out, _ = run(capsys, "pom", "validate", str(path), "--seed-pom", "e1,e2,e3,e4,e5", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["length"] == 5 and report["maximal"]
    assert report["pom"]["labeling"] == [[v, v] for v in range(1, 11)]


def test_pom_validate_c4_names_condition_b(capsys):
    code, _, err = run(capsys, "pom", "validate", "--corpus", "C4", "--seed-pom", "e1,e3")
    assert code == 2 and "ConditionB" in err and "condition (b)" in err


def test_pom_find_k23_is_length_one(capsys):
    code, out, _ = run(capsys, "pom", "find", "--corpus", "K23", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["length"] == 1 and report["maximal"]


def test_pom_extend(capsys):
    code, out, _ = run(capsys, "pom", "extend", "--corpus", "C8", "--seed-pom", "e1", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["length"] == 3 and report["maximal"]


def test_chain_c4_text(capsys):
    code, out, _ = run(capsys, "chain", "--corpus", "C4")
    assert code == 0
    assert "biliaisons: 1, splits: 1" in out and "complete intersection: (e3)" in out


def test_chain_k33_height_bookkeeping(capsys):
    code, out, _ = run(capsys, "chain", "--corpus", "K33", "--format", "json")
    summary = json.loads(out)["summary"]
    assert code == 0 and summary["height"] == 4 and len(summary["complete_intersection"]) == 4


@pytest.mark.parametrize("name", ["C4", "K23"])
def test_chain_matches_golden(capsys, name):
    code, out, _ = run(capsys, "chain", "--corpus", name, "--format", "json")
    assert code == 0
    assert out == (GOLDEN / f"{name}.chain.json").read_text()


def test_chain_output_file(capsys, tmp_path):
    target = tmp_path / "cert.json"
    code, out, _ = run(capsys, "chain", "--corpus", "C4", "--output", str(target))
    assert code == 0 and "complete intersection" in out
    assert target.read_text() == (GOLDEN / "C4.chain.json").read_text()


def test_no_verify_emits_skeleton(capsys):
    code, out, _ = run(capsys, "chain", "--corpus", "K23", "--no-verify", "--format", "json")
    cert = json.loads(out)
    assert code == 0 and cert["summary"]["verified"] is False
    assert all("verdicts" not in s for s in cert["steps"])


def test_verification_failure_exit_three(capsys, monkeypatch):
    real = liaison.build_I

    def broken(g, pom, order, **kw):
        ip = real(g, pom, order, **kw)
        if pom.r == 0:
            return ip
        return IdealPresentation(tuple(p for p in ip.generators if not isinstance(p, Mono)), order)

    monkeypatch.setattr(liaison, "build_I", broken)
    code, out, _ = run(capsys, "chain", "--corpus", "C4", "--no-vd", "--format", "json")
    assert code == 3
    report = json.loads(out)
    assert report["status"] == "verification_failed"
    assert report["step"]["kind"] == "BiliaisonDown"


def test_vd_examples(capsys):
    code, out, _ = run(capsys, "vd", "--corpus", "C4", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["vertex_decomposable"] and report["witness"]["shed"] == "e1"
    code, out, _ = run(capsys, "vd", "--corpus", "K23", "--format", "json")
    assert code == 0 and json.loads(out)["witness_replays"]
    code, out, _ = run(capsys, "vd", "--graph", "1 2;2 3;3 4", "--format", "json")
    assert code == 0 and json.loads(out)["witness"] == {"leaf": "simplex"}


def test_toric_with_order(capsys):
    code, out, _ = run(capsys, "toric", "--corpus", "C4", "--order", "e4,e3,e2,e1", "--format", "json")
    assert code == 0 and json.loads(out)["generators"] == ["e2*e4 - e1*e3"]


@pytest.mark.parametrize(
    "argv",
    [
        ["chain", "--bogus"],
        ["nosuch"],
        ["chain"],
        ["chain", "--corpus", "C4", "--graph", "1 2"],
        ["chain", "--corpus", "nosuch"],
        ["gb", "--corpus", "C4", "--order", "e1,e2"],
        ["gb", "--corpus", "C4", "--order", "e1,e2,e3,x"],
        ["chain", "--corpus", "C4", "--seed-pom", "e9"],
        ["cycles", "--corpus", "C4", "--max-cycles", "-1"],
        ["pom", "validate", "--corpus", "C4"],
        ["cycles", "--corpus", "C4", "--format", "xml"],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as info:
        sys.exit(main(argv))
    assert info.value.code == 1


def test_input_errors_exit_two(capsys, tmp_path):
    assert run(capsys, "cycles", str(tmp_path / "missing.txt"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n2 1\n")
    code, _, err = run(capsys, "cycles", str(bad))
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "cycles", "--corpus", "K33", "--max-cycles", "3")
    assert code == 2 and "TooManyCycles" in err


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("1 3\n3 2\n2 4\n4 1\n"))
    code, out, _ = run(capsys, "cycles", "-", "--format", "json")
    assert code == 0 and json.loads(out)["cycles"] == [["e1", "e2", "e3", "e4"]]


def test_corpus_command(capsys):
    code, out, _ = run(capsys, "corpus", "C4", "K23", "--no-vd")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2 and lines[0].startswith("C4") and "OK" in lines[1]


def test_module_entry_point_is_byte_identical_across_runs():
    cmd = [sys.executable, "-m", "toricliaison", "chain", "--corpus", "K23", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True, env={"PYTHONHASHSEED": "7", "PATH": ""}).stdout
    assert first == second == (GOLDEN / "K23.chain.json").read_bytes()
