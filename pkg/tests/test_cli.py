import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from fanforge.graphs import complete, cycle, delete_vertex, petersen, to_graph6

SRC = str(Path(__file__).resolve().parent.parent / "src")


def run_cli(*args, stdin=None, env_extra=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = SRC + os.pathsep + env.get("PYTHONPATH", "")
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "fanforge", *args],
        capture_output=True,
        text=True,
        input=stdin,
        env=env,
    )


C5 = to_graph6(cycle(5))
C4 = to_graph6(cycle(4))
PET = to_graph6(petersen())
PM = to_graph6(delete_vertex(petersen(), 0))


def test_classify_c5():
    r = run_cli("classify", C5)
    assert r.returncode == 0
    row = json.loads(r.stdout)
    assert row["class"] == "two"
    assert row["overfull"] and row["just_overfull"]
    assert row["chi_prime"] == 3
    assert "core_acyclic_shortcut" in row
    assert "class=two" in r.stderr


def test_classify_c4_class_one():
    row = json.loads(run_cli("classify", C4).stdout)
    assert row["class"] == "one" and row["chi_prime"] == 2


def test_classify_petersen():
    row = json.loads(run_cli("classify", PET).stdout)
    assert row["class"] == "two" and row["chi_prime"] == 4
    assert not row["overfull"]


def test_classify_parse_failure_exit_3():
    r = run_cli("classify", "!!nope!!")
    assert r.returncode == 3


def test_classify_tsv_format():
    r = run_cli("classify", "--format", "tsv", C5)
    head, row = r.stdout.strip().split("\n")
    assert "chi_prime" in head.split("\t")


def test_verify_val_pass_exit_zero():
    r = run_cli("verify", "--checks", "val", C5)
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["checks"]["val"][0]["status"] == "PASS"


def test_verify_main_inapplicable_on_class_one():
    r = run_cli("verify", "--checks", "main", C4)
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["checks"]["main"][0]["status"] == "INAPPLICABLE"


def test_verify_malformed_exit_3():
    r = run_cli("verify", "--checks", "all", "zz!!")
    assert r.returncode == 3


def test_verify_unknown_budget_exit_2():
    r = run_cli("verify", "--checks", "val", "--budget", "3", PET)
    assert r.returncode == 2


def test_fan_c5_fixture():
    r = run_cli("fan", "--edge", "0-1", C5)
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["status"] == "EXACT"
    assert len(out["fan"]["sequence"]) == 1
    assert out["tau_sequences"] == []
    assert out["rs1_linkage"]["status"] == "PASS"


def test_fan_bad_edge_exit_3():
    assert run_cli("fan", "--edge", "0-3", C5).returncode == 3
    assert run_cli("fan", "--edge", "zz", C5).returncode == 3


def test_fan_exhaustive_guard_on_large_graphs():
    r = run_cli("fan", "--edge", "0-1", PET)
    assert r.returncode == 3
    assert "force" in r.stderr
    # Petersen's edges are not critical: no working colorings exist at all
    r2 = run_cli("fan", "--edge", "0-1", "--mode", "reachability",
                 "--fan-budget", "50", PET)
    assert r2.returncode == 3
    assert "cannot search fans" in r2.stderr
    # a critical 9-vertex graph works in reachability mode
    r3 = run_cli("fan", "--edge", "0-4", "--mode", "reachability",
                 "--fan-budget", "30", PM)
    assert r3.returncode == 0
    assert json.loads(r3.stdout)["status"] == "LOWER-BOUND"


def test_fan_deterministic_repeat():
    a = run_cli("fan", "--edge", "0-4", PM).stdout
    b = run_cli("fan", "--edge", "0-4", PM).stdout
    assert a == b
    out = json.loads(a)
    assert out["typical"] is not None


def test_tau_command():
    r = run_cli("tau", "--edge", "0-4", PM)
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["sequences"] == []  # every color is on the fan here


def test_scan_stdin_and_summary(tmp_path):
    inp = f"{C5}\n{C4}\n"
    r = run_cli("scan", "--checks", "val,parity", stdin=inp)
    assert r.returncode == 0
    lines = [json.loads(l) for l in r.stdout.strip().split("\n")]
    assert len(lines) == 2
    assert "check\tPASS" in r.stderr


def test_scan_output_file_and_tsv(tmp_path):
    out = tmp_path / "reports.jsonl"
    r = run_cli(
        "scan", "--checks", "val", "--output", str(out), C5, C4
    )
    assert r.returncode == 0
    assert len(out.read_text().strip().split("\n")) == 2
    r2 = run_cli("scan", "--checks", "val", "--format", "tsv", C5)
    assert r2.stdout.startswith("check\t")


def test_scan_workers_deterministic(tmp_path):
    inp = "\n".join([C5, C4, PM, PET]) + "\n"
    a = run_cli("scan", "--checks", "val,parity", "--workers", "1", stdin=inp)
    b = run_cli("scan", "--checks", "val,parity", "--workers", "4", stdin=inp)
    assert a.stdout == b.stdout


def test_env_budget_respected():
    r = run_cli(
        "verify", "--checks", "parity", PET,
        env_extra={"FANFORGE_BUDGET": "3"},
    )
    assert r.returncode == 2  # budget too small: UNKNOWN without FAIL
