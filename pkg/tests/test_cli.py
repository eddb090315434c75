"""Command-line behavior: payloads, human lines, exit codes, JSON envelope."""

import json
import shutil
import subprocess

import pytest

from zsseq.cli import main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


def run_json(run, *argv):
    code, out, err = run(*argv, "--json")
    return code, json.loads(out), err


def test_spectrum_json(run):
    code, doc, _ = run_json(run, "spectrum", "--seq", "2^5,-1^10")
    assert code == 0
    assert doc["status"] == "ok"
    assert doc["payload"] == {"length": 15, "lengths": [0, 3, 6, 9, 12, 15]}


def test_json_document_is_canonical(run):
    _, out, _ = run("constant", "--k", "2", "--t", "6", "--json")
    assert out == json.dumps(json.loads(out), sort_keys=True) + "\n"


def test_constant_finite_and_infinite(run):
    code, doc, _ = run_json(run, "constant", "--k", "2", "--t", "6")
    assert code == 0 and doc["payload"]["value"] == 8
    code, doc, _ = run_json(run, "constant", "--k", "2", "--t", "7")
    assert code == 0 and doc["payload"]["value"] == "infinite"


def test_check_human_output(run):
    code, out, _ = run("check", "--seq", "1^3,-1^3", "--t", "2")
    assert code == 0
    assert out.splitlines()[0] == "avoiding: false"
    assert "witness: -1^1,1^1" in out
    code, out, _ = run("check", "--seq", "1^3,-1^3", "--t", "3")
    assert code == 0
    assert out.splitlines() == ["avoiding: true"]


def test_check_json_witness(run):
    _, doc, _ = run_json(run, "check", "--seq", "1^3,-1^3", "--t", "2")
    payload = doc["payload"]
    assert payload["avoiding"] is False
    assert payload["witness"]["terms"] == [
        {"value": -1, "mult": 1},
        {"value": 1, "mult": 1},
    ]


def test_seq_file_matches_inline(run, tmp_path):
    path = tmp_path / "seq.txt"
    path.write_text("1^2,-1^2\n")
    _, from_file, _ = run("spectrum", "--seq-file", str(path), "--json")
    _, inline, _ = run("spectrum", "--seq", "1^2,-1^2", "--json")
    assert from_file == inline


def test_missing_seq_file_is_a_domain_error(run, tmp_path):
    code, _, err = run("spectrum", "--seq-file", str(tmp_path / "absent.txt"))
    assert code == 1
    assert "error:" in err


def test_bound_enforcement_fails_cleanly(run):
    code, _, err = run("check", "--seq", "5^1,-5^1", "--k", "2", "--t", "2")
    assert code == 1
    assert "error:" in err


def test_domain_error_exit_code_and_envelope(run):
    code, out, err = run("bounds", "--k", "2", "--t", "7", "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "error"
    assert "error" in doc["payload"]
    assert err.startswith("error:")


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--t", "2"],  # no sequence given
        ["spectrum", "--seq", "1^1", "--seq-file", "x"],  # mutually exclusive
        ["search-longest", "--k", "2", "--t", "6", "--ceiling", "12", "--threads", "0"],
        ["constant", "--k", "0", "--t", "6"],
        ["frobenius", "--a", "3"],  # missing --b
        ["no-such-subcommand"],
    ],
)
def test_usage_errors_exit_2(run, argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 2


def test_node_cap_exit_3_incomplete(run):
    code, doc, _ = run_json(
        run, "search-longest", "--k", "2", "--t", "6", "--ceiling", "12", "--max-nodes", "5"
    )
    assert code == 3
    assert doc["status"] == "incomplete"
    assert doc["payload"]["stop_reason"] == "node-limit"


def test_memory_cap_exit_3(run):
    code, _, err = run(
        "check", "--seq", "3^14,2^3,-1^48", "--t", "60", "--memory-limit", "100"
    )
    assert code == 3
    assert "error:" in err


def test_search_longest_human_lines(run):
    code, out, _ = run("search-longest", "--k", "2", "--t", "6", "--ceiling", "12")
    assert code == 0
    lines = out.splitlines()
    assert "best_length: 7" in lines
    assert "exhaustive: true" in lines
    assert sum(1 for line in lines if line.startswith("witness: ")) == 6


def test_search_longest_is_deterministic(run):
    first = run("search-longest", "--k", "2", "--t", "6", "--ceiling", "12", "--json")
    second = run("search-longest", "--k", "2", "--t", "6", "--ceiling", "12", "--json")
    assert first == second


def test_extremal_json(run):
    code, doc, _ = run_json(run, "extremal", "--k", "2", "--t", "6")
    assert code == 0
    payload = doc["payload"]
    assert payload["support_ok"] is False
    assert payload["exhaustive"] is True
    assert len(payload["sequences"]) == 6


def test_extremal_cap_exit_3(run):
    code, doc, _ = run_json(
        run, "extremal", "--k", "3", "--t", "60", "--allow-slow", "--max-nodes", "100"
    )
    assert code == 3
    assert doc["status"] == "incomplete"


def test_family_json(run):
    code, doc, _ = run_json(run, "family", "--k", "2", "--t", "7", "--min-length", "10")
    assert code == 0
    payload = doc["payload"]
    assert payload["family"]["q"] == 2
    assert payload["length"] >= 10
    assert payload["verified_avoiding"] is True


def test_reduce_human_lines(run):
    code, out, _ = run("reduce", "--seq", "3^1,1^4,-1^7", "--alpha", "1", "--beta", "1")
    assert code == 0
    assert out.splitlines() == [
        "steps: 1",
        "fixpoint: -1^6,1^6",
        "stripped: (empty) (blocks removed: 6)",
    ]


def test_strip_human_lines(run):
    code, out, _ = run(
        "strip", "--seq", "3^2,-2^3,1^1,-1^1", "--alpha", "3", "--beta", "2"
    )
    assert code == 0
    assert out.splitlines() == ["stripped: -1^1,1^1", "count: 1"]


def test_complete_block_human_lines(run):
    code, out, _ = run("complete-block", "--seq", "1^1", "--alpha", "3", "--beta", "2")
    assert code == 0
    assert out.splitlines() == ["completed: -2^2,1^1,3^1"]


def test_davenport_json(run):
    code, doc, _ = run_json(run, "davenport", "--values", "3,1,5,7,2", "--modulus", "5")
    assert code == 0
    assert doc["payload"] == {"block": [5], "modulus": 5, "sum": 5}


def test_davenport_too_few_values(run):
    code, _, err = run("davenport", "--values", "1,2", "--modulus", "5")
    assert code == 1 and "error:" in err


def test_frobenius_value(run):
    code, out, _ = run("frobenius", "--a", "3", "--b", "5")
    assert code == 0 and out == "value: 7\n"


def test_lemma41_margin_flag(run):
    code, out, _ = run("lemma41")
    assert code == 0 and out == "holds: true\n"
    code, out, _ = run("lemma41", "--t", "417")
    assert code == 0 and out == "holds: false\n"


def test_lemma42_empty(run):
    code, doc, _ = run_json(run, "lemma42")
    assert code == 0
    assert doc["payload"] == {"count": 0, "flagged": []}


def test_lcm_check(run):
    assert run("lcm-check", "--k", "5")[1] == "holds: true\n"
    assert run("lcm-check", "--k", "4")[1] == "holds: false\n"


def test_lambert_value(run):
    code, doc, _ = run_json(run, "lambert", "--k", "3")
    assert code == 0 and doc["payload"] == {"k": 3, "value": 5}


def test_divides_json(run):
    _, doc, _ = run_json(run, "divides", "--k", "2", "--t", "6")
    assert doc["payload"]["holds"] is True and doc["payload"]["modulus"] == 6
    _, doc, _ = run_json(run, "divides", "--k", "3", "--t", "24")
    assert doc["payload"]["holds"] is False
    assert doc["payload"]["failing_prime_power"] == 5


def test_selftest_quick(run):
    code, doc, err = run_json(run, "selftest", "--quick", "--seed", "7")
    assert code == 0
    payload = doc["payload"]
    assert payload["ok"] is True
    assert len(payload["suites"]) == 6
    assert err.count("[ok]") == 6


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out.startswith("zsseq ")


def test_console_script_installed():
    exe = shutil.which("zsseq")
    assert exe is not None
    proc = subprocess.run(
        [exe, "constant", "--k", "2", "--t", "6", "--json"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["value"] == 8
