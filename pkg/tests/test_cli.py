import json
import subprocess
import sys

import pytest

from hypercover.cli import run
from hypercover.formats import parse_hypergraph

from conftest import DATA

FA, VA = str(DATA / "fixtureA.hg"), str(DATA / "fixtureA.volt")
FB, VB = str(DATA / "fixtureB.hg"), str(DATA / "fixtureB.volt")


def run_json(*argv):
    code, text = run([*argv, "--json"])
    return code, json.loads(text)


def test_info():
    code, rep = run_json("info", FA)
    assert code == 0
    assert rep["results"]["n"] == 4 and rep["results"]["connected"] is True


def test_invariants_fixture_a():
    code, rep = run_json("invariants", FA)
    res = rep["results"]
    assert code == 0 and res["s"] == 3 and res["c"] == 3
    assert res["divisors"] == [1, 1] and res["ps0_brute_force"] == 3


def test_invariants_budget_skips_brute_force():
    _, rep = run_json("invariants", FB, "--budget", "10")
    assert rep["results"]["ps0_brute_force"] is None and rep["results"]["s"] == 32


def test_cover_invariants():
    code, rep = run_json("cover-invariants", FA, VA)
    assert code == 0
    assert rep["results"]["formula"] == 27 and rep["results"]["direct"] == 27 and rep["results"]["match"]
    code, rep = run_json("cover-invariants", FB, VB)
    assert code == 0
    assert rep["results"]["formula"] == "not applicable (m even)"
    assert rep["results"]["direct"] == 4096


def test_cover_output_is_a_document():
    code, text = run(["cover", FA, VA])
    assert code == 0
    H = parse_hypergraph(text)
    assert H.n == 8 and H.num_edges == 4
    _, rep = run_json("cover", FA, VA)
    assert parse_hypergraph(rep["results"]["document"]) == H
    assert rep["results"]["projection"]["2@2"] == "2"


def test_connected_and_balance():
    _, rep = run_json("connected", FB, VB)
    assert rep["results"] == {"k": 2, "direct": True, "orbit": True, "two_fold": True, "agree": True}
    _, rep = run_json("balance", FA, VA)
    assert rep["results"]["balanced"] is False and rep["results"]["cover_components"] == 1


def test_signed():
    _, rep = run_json("signed", FB, VB)
    assert rep["results"]["signs"] == ["+", "+", "+"]
    assert rep["results"]["twisted_divisors"] == [1, 1]


def test_rho_and_verify_lift():
    _, rep = run_json("rho", FA)
    assert abs(rep["results"]["rho"] - 2 ** (2 / 3)) < 1e-9
    _, rep2 = run_json("rho", FA, VA)
    assert abs(rep2["results"]["rho"] - rep["results"]["rho"]) < 1e-9
    _, rep = run_json("verify-lift", FB, VB, "--trials", "20", "--seed", "3")
    assert rep["results"]["passed"] and rep["results"]["trials"] == 20
    assert rep["results"]["max_signed_defect"] <= 1e-10


def test_snf(tmp_path):
    _, rep = run_json("snf", str(DATA / "fixtureB.mat"), "--mod", "4")
    assert rep["results"]["invariant_factors"] == [1, 1, 2]
    assert rep["results"]["divisors"] == [1, 1, 2] and rep["results"]["kernel_size"] == 128


def test_json_is_deterministic():
    a = run(["verify-lift", FA, VA, "--json", "--seed", "7", "--trials", "5"])
    b = run(["verify-lift", FA, VA, "--json", "--seed", "7", "--trials", "5"])
    assert a == b


def test_out_flag(tmp_path):
    target = tmp_path / "r.json"
    code, text = run(["invariants", FA, "--json", "--out", str(target)])
    assert code == 0 and text == ""
    assert json.loads(target.read_text())["results"]["s"] == 3


class TestExitCodes:
    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.hg"
        bad.write_text("uniform 3\nedge 1 2 2\n")
        code, rep = run_json("info", str(bad))
        assert code == 2 and "line 2" in rep["error"]

    def test_missing_file(self):
        assert run(["info", "/nonexistent.hg"])[0] == 2

    def test_precondition_disconnected(self, tmp_path):
        H = tmp_path / "two.hg"
        H.write_text("uniform 3\nedge 1 2 3\nedge 4 5 6\n")
        code, rep = run_json("invariants", str(H))
        assert code == 1 and "connected" in rep["error"]

    def test_precondition_disconnected_cover(self, tmp_path):
        V = tmp_path / "id.volt"
        V.write_text("k 2\n")
        code, rep = run_json("cover-invariants", FA, str(V))
        assert code == 1 and "connected" in rep["error"]

    def test_non_convergence(self):
        code, rep = run_json("rho", FA, "--tol", "1e-15", "--max-iter", "2")
        assert code == 3 and rep["results"]["iterations"] == 2


@pytest.mark.parametrize("cmd", ["invariants", "info"])
def test_console_entry_point(cmd):
    proc = subprocess.run(
        [sys.executable, "-m", "hypercover", cmd, FA], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith(f"command: {cmd}")
