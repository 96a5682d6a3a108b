import json

import pytest

from oqroot import cli, oq


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_gauss(capsys):
    code, rep = run_json(capsys, "gauss", "binom", "4", "2", "--at-one")
    assert code == 0 and rep["data"]["value"] == "6"
    code, rep = run_json(capsys, "gauss", "binom", "5", "2", "--ell", "5")
    assert code == 0 and rep["data"]["value"] == "0"
    code, out, _ = run(capsys, "gauss", "int", "2")
    assert code == 0 and "value: v + v^-1" in out


def test_module(capsys):
    code, rep = run_json(capsys, "module", "tilting", "4", "--ell", "3")
    assert code == 0
    assert rep["data"]["dim"] == 6
    assert [c["status"] for c in rep["checks"]] == ["pass", "pass"]
    code, rep = run_json(capsys, "module", "weyl", "0")
    assert code == 0 and rep["data"]["trivial"] is True
    code, rep = run_json(capsys, "module", "simple", "4", "--ell", "3")
    assert code == 0 and rep["data"]["dim"] == 4


def test_module_matrices(capsys):
    code, rep = run_json(capsys, "module", "weyl", "2", "--matrices")
    assert code == 0
    assert set(rep["data"]["matrices"]) >= {"E(1)", "F(1)", "K"}


@pytest.mark.parametrize("argv", [
    ("filtration", "--ell", "3", "--block", "0", "--depth", "2"),
    ("filtration", "--ell", "3", "--block", "0", "--depth", "1"),
    ("filtration", "--ell", "5", "--block", "1", "--depth", "2"),
])
def test_filtration(capsys, argv):
    code, rep = run_json(capsys, *argv)
    assert code == 0
    assert all(q["certified"] for q in rep["data"]["quotient_isos"])
    assert {c["status"] for c in rep["checks"]} <= {"pass", "boundary-unverified"}


def test_filtration_report_schema(capsys):
    code, out, _ = run(capsys, "filtration-report", "--ell", "3", "--block", "0", "--depth", "3")
    assert code == 0
    rep = json.loads(out)
    assert list(rep) == ["ell", "block", "sequence", "P_dims", "quotient_isos", "loewy", "checks", "seconds"]
    assert rep["sequence"] == [0, 4, 6]
    assert rep["P_dims"] == [1, 26, 75]
    assert [q["i"] for q in rep["quotient_isos"]] == [1, 2, 3]
    assert rep["loewy"]["rigid"] and rep["loewy"]["indecomposable"]
    assert "boundary-unverified" in {c["status"] for c in rep["checks"]}


def test_cocommutative(capsys):
    code, rep = run_json(capsys, "cocommutative", "--ell", "3", "--degree", "4")
    assert code == 0 and rep["data"]["dim"] == 5
    code, rep = run_json(capsys, "cocommutative", "--degree", "0")
    assert code == 0 and rep["data"]["basis"] == ["1"]
    code, rep = run_json(capsys, "cocommutative", "--ell", "5", "--degree", "3")
    assert code == 0 and rep["data"]["dim"] == 4


def test_qmatrix(capsys):
    code, rep = run_json(capsys, "qmatrix-reduce", "--n", "2", "--expr", "X[2,2]*X[1,1]")
    assert code == 0 and rep["data"]["reduced"] == "1 + v^-1 X[1,2]*X[2,1]"
    code, rep = run_json(capsys, "qmatrix-reduce", "--n", "3", "--confluence", "--samples", "300", "--seed", "7")
    assert code == 0 and rep["checks"][0]["status"] == "pass"


@pytest.mark.parametrize("argv", [
    ("qmatrix-reduce", "--n", "2", "--expr", ""),
    ("qmatrix-reduce", "--n", "2"),
    ("qmatrix-reduce", "--n", "2", "--expr", "X[9,9]"),
    ("gauss", "binom", "4"),
    ("module", "weyl", "3", "--ell", "4"),
    ("filtration", "--block", "2"),
    ("verify",),
    ("verify", "--paper-suite", "--criteria", "one"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["module", "banana", "3"])
    assert exc.value.code == 2


def test_verification_failure_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(oq, "cocommutative_basis", lambda D, ell: [oq.OqElement.one(ell)])
    code, rep = run_json(capsys, "cocommutative", "--degree", "2")
    assert code == 1
    assert rep["checks"][0]["status"] == "fail" and "got 1" in rep["checks"][0]["detail"]


def test_verify_subset(capsys):
    code, out, err = run(capsys, "verify", "--paper-suite", "--criteria", "1,10")
    assert code == 0
    assert "[PASS] criterion  1" in err and "[PASS] criterion 10" in err
    assert out.count("[pass]") == 2


def test_deterministic_json(capsys):
    argv = ("qmatrix-reduce", "--n", "2", "--confluence", "--samples", "50")
    _, a = run_json(capsys, *argv)
    _, b = run_json(capsys, *argv)
    a.pop("seconds"), b.pop("seconds")
    assert a == b
    assert json.loads(json.dumps(a)) == a


def test_run_config_validation():
    with pytest.raises(cli.UsageError):
        cli.RunConfig(ell=6)
    with pytest.raises(cli.UsageError):
        cli.RunConfig(output="yaml")
    assert cli.RunConfig(ell=5).ell == 5
