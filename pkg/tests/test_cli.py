import json
import subprocess
import sys

import pytest

from bergman_toeplitz import symbol_from_json, parse_symbol
from bergman_toeplitz.cli import RunConfig, config_from_args, main, run

A = "expr:z+conj(z)+|z|^2*(z+conj(z))"
B = "expr:2*z+2*conj(z)+|z|^2*(2*z+2*conj(z))+5"


def cli(*argv):
    return run(config_from_args(list(argv)))


def test_check_commute_example():
    code, out, err = cli("check-commute", "--a", A, "--b", B, "--json")
    assert code == 0 and err == ""
    data = json.loads(out)
    assert data["commute"] is True
    assert data["relation"] == {"C1": "1/2", "C2": "-5/2"}
    # echoed symbols reparse to the inputs
    assert symbol_from_json(data["symbols"]["a"]) == parse_symbol(A[5:])
    assert symbol_from_json(data["symbols"]["b"]) == parse_symbol(B[5:])


def test_check_commute_text():
    code, out, _ = cli("check-commute", "--a", "expr:z", "--b", "expr:conj(z)")
    assert code == 0
    assert "commute: false" in out and "witness: band 0 at k=0: -1/2" in out


def test_check_normal_example():
    code, out, _ = cli("check-normal", "--a", "expr:z")
    assert code == 0 and "classification: NotNormal" in out
    code, out, _ = cli("check-normal", "--a", A, "--json", "--verbose")
    data = json.loads(out)
    assert data["classification"] == "Line" and data["equations"]
    assert symbol_from_json(data["symbol"]) == parse_symbol(A[5:])


def test_commutator_and_matrix():
    code, out, _ = cli("commutator", "--a", "expr:z", "--b", "expr:|z|^2")
    assert code == 0 and out == "band +1: -1/(k^2+5k+6)\n"
    code, out, _ = cli("commutator", "--a", "expr:z", "--b", "expr:|z|^2", "--json")
    assert json.loads(out)["bands"][0]["tail"] == {"num": ["-1"], "den": ["6", "5", "1"]}
    for engine in ("bands", "oracle"):
        code, out, _ = cli("matrix", "--a", "expr:conj(z)", "--k", "3", "--engine", engine, "--json")
        assert json.loads(out) == [["0", "1/2", "0"], ["0", "0", "2/3"], ["0", "0", "0"]]


def test_mellin_command():
    code, out, _ = cli("mellin", "--phi", "r^2 + 2", "--at", "4")
    assert code == 0
    assert "mellin(z) = (3z+4)/(z^2+2z)" in out and "mellin(4) = 2/3" in out
    code, out, _ = cli("mellin", "--phi", "r^2", "--shift", "-2", "--json")
    assert json.loads(out)["band"] == "(k-1)/(k+1)"


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (("check-normal", "--a", "expr:z + * 2"), "'*'"),
        (("check-normal", "--a", "expr:z^2*conj(z)^2"), "outside"),
        (("check-normal", "--a", "/no/such/file.json"), "cannot read"),
        (("mellin", "--phi", "r^2", "--at", "1+i"), "rational"),
    ],
)
def test_input_errors_exit_2(argv, fragment):
    code, out, err = cli(*argv)
    assert code == 2 and out == "" and fragment in err


def test_invalid_config():
    with pytest.raises(ValueError):
        RunConfig("matrix", a="expr:z", K=0)
    with pytest.raises(ValueError):
        RunConfig("selftest", trials=0)
    assert main(["matrix", "--a", "expr:z", "--k", "0"]) == 2


def test_inconsistency_exit_3(monkeypatch):
    from bergman_toeplitz import decide

    monkeypatch.setattr(decide, "affine_relation", lambda a, b: None)
    code, out, err = cli("check-commute", "--a", A, "--b", B)
    assert code == 3 and "inconsistency" in err


def test_selftest_failure_exit_1(monkeypatch):
    from bergman_toeplitz import cli as cli_mod

    monkeypatch.setattr(cli_mod, "run_selftest", lambda *a: (False, "summary: FAIL\n"))
    code, out, _ = cli("selftest", "--trials", "1")
    assert code == 1 and "FAIL" in out


def test_selftest_example():
    code, out, _ = cli("selftest", "--trials", "50", "--max-degree", "3", "--k", "24", "--seed", "7")
    assert code == 0, out
    assert out.rstrip().endswith("summary: PASS")


def test_identical_config_identical_output():
    cfg = RunConfig("selftest", seed=3, trials=4)
    assert run(cfg) == run(cfg)
    cfg = RunConfig("check-normal", a=A, format="json", verbose=True)
    assert run(cfg) == run(cfg)


def test_console_entry_point(tmp_path):
    path = tmp_path / "phi.json"
    path.write_text(json.dumps({"a1": ["0", "1"]}), encoding="utf-8")
    proc = subprocess.run(
        [sys.executable, "-m", "bergman_toeplitz", "check-normal", "--a", str(path)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "NotNormal" in proc.stdout and proc.stderr == ""
