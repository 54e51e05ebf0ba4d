import json

import pytest

from artifact.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    assert doc["schema"] == "1"
    return code, doc


def test_weights_analyze(capsys):
    code, doc = run_json(capsys, "weights", "analyze", "6", "14", "21", "42")
    assert code == 0 and doc["signature"] == [2, 3, 7] and doc["mu"] == 12


@pytest.mark.parametrize("argv", [
    ["weights", "analyze", "2", "2", "2", "4"],
    ["weights", "analyze", "6", "14"],
    ["weights", "frobnicate"],
    ["coxeter", "--case", "w-6-14-21-42", "--bogus"],
    ["coxeter", "--case", "w-9-9-9-9"],
    ["mf", "hom", "--case", "w-2-2-5-10", "--source", "V0", "--target", "V0", "--param", "l1"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_not_regular_exit_1(capsys):
    code, doc = run_json(capsys, "weights", "analyze", "2", "3", "5", "11")
    assert code == 1 and doc["regular"] is False


def test_weights_enumerate(capsys):
    code, doc = run_json(capsys, "weights", "enumerate")
    assert code == 0 and doc["count"] == 22


def test_coxeter(capsys):
    code, doc = run_json(capsys, "coxeter", "--case", "w-6-14-21-42")
    assert code == 0 and doc["order"] == 42


def test_determinism(capsys):
    a = run(capsys, "quiver", "build", "--signature", "2,3,7", "--variant", "T")[1]
    b = run(capsys, "quiver", "build", "--signature", "2,3,7", "--variant", "T")[1]
    assert a == b and json.loads(a)["variant"] == "T"


def test_data_verify(capsys):
    code, doc = run_json(capsys, "data", "verify")
    assert code == 0 and doc["ok"]
    code, doc = run_json(capsys, "data", "verify", "--raw", "--case", "w-3-5-6-15")
    assert code == 1 and doc["failures"] > 0


def test_data_verify_jobs(capsys):
    code, doc = run_json(capsys, "data", "verify", "--jobs", "2")
    assert code == 0 and doc["cases"] == 22


def test_mf_commands(capsys):
    code, doc = run_json(capsys, "mf", "phase", "--case", "w-2-2-5-10", "--object", "V0")
    assert code == 0 and doc["phases"][0]["phase"] == "-3/5"
    code, doc = run_json(capsys, "mf", "spectrum", "--case", "w-6-14-21-42", "--source", "V0")
    assert code == 0 and doc["spectrum"] == ["0", "1/3", "5/7", "22/21"]
    code, doc = run_json(capsys, "mf", "hom", "--case", "w-2-2-5-10", "--source", "V1", "--target", "V0",
                         "--n", "0", "--window-margin", "2/5")
    assert code == 0 and {"n": 0, "tau": 0, "dim": 1} in doc["homs"]


def test_mf_parametric_case_fails(capsys):
    code, doc = run_json(capsys, "mf", "hom", "--case", "w-2-3-6-12", "--source", "V0", "--target", "V0")
    assert code == 1 and "error" in doc


def test_collection_generate(capsys, tmp_path):
    code, doc = run_json(capsys, "collection", "generate", "--case", "w-2-2-5-10", "--param", "l1=2",
                         "--out", str(tmp_path))
    assert code == 0 and doc["relations"]["ok"] and len(doc["lambdas"]) == 5
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["schema"] == "1"
    v0 = json.loads((tmp_path / "V0.json").read_text())
    assert v0["object_name"] == "V0" and v0["rank"] == 4 and v0["provenance"] == "generated"


def test_duality_scan(capsys):
    code, doc = run_json(capsys, "duality", "scan")
    assert code == 0 and doc["involution"]


def test_suite_subset(capsys):
    code, out, _ = run(capsys, "suite", "all", "--criterion", "1", "--format", "text")
    assert code == 0 and out.startswith("criterion  1 PASS")
