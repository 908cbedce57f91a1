import json

import pytest

from monomial_codes.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_field_show(capsys):
    status, out, _ = run(capsys, "field", "show", "--p", "3", "--m", "5")
    assert status == 0
    assert "modulus=1,0,0,0,2,1" in out.splitlines()


def test_d_solve(capsys):
    status, out, _ = run(capsys, "d", "solve", "--p", "3", "--m", "5", "--k", "2")
    assert status == 0
    lines = out.splitlines()
    assert lines[0].startswith("d=97") and "ONE " in lines[0]
    assert lines[1].startswith("d=218") and "ONE_PLUS_HALF" in lines[1]


def test_d_apn_json(capsys):
    status, out, _ = run(capsys, "d", "apn", "--m", "5", "--check", "--format", "json")
    assert status == 0
    body = json.loads(out)
    assert [(r["family"], r["d"], r["k"], r["differential_uniformity"]) for r in body["catalog"]] == [
        ("i", 182, 1, 2),
        ("ii", 26, 3, 2),
    ]


def test_expsum_t(capsys):
    status, out, _ = run(capsys, "expsum", "t", "--p", "3", "--m", "5", "--k", "2", "--u", "zero", "--v", "zero",
                         "--format", "json")
    assert status == 0
    assert json.loads(out)["value"] == [243, 0]
    status, out, _ = run(capsys, "expsum", "t", "--p", "3", "--m", "5", "--k", "2", "--u", "1", "--v", "0")
    assert status == 0 and out.startswith("T(1, 0) = ")


@pytest.mark.parametrize("mode", ["naive", "orbit"])
def test_expsum_dist(capsys, mode):
    status, out, _ = run(capsys, "expsum", "dist", "--p", "3", "--m", "5", "--k", "2", "--mode", mode, "--format", "json")
    assert status == 0
    body = json.loads(out)
    assert body["verdict"] == "PASS"
    assert sum(r["observed"] for r in body["rows"]) == 3**10
    assert {"value", "render", "observed", "expected"} <= set(body["rows"][0])


def test_expsum_joint(capsys):
    status, out, _ = run(capsys, "expsum", "joint", "--p", "3", "--m", "5", "--k", "2")
    assert status == 0 and out.rstrip().endswith("PASS")
    status, _, err = run(capsys, "expsum", "joint", "--p", "3", "--m", "6", "--k", "2")
    assert status == 2 and "PreconditionViolated" in err


def test_code_verify_example_two(capsys):
    status, out, _ = run(capsys, "code", "verify", "--p", "3", "--m", "6", "--k", "2", "--d", "73", "--a", "1")
    assert status == 0
    assert "enumerator 1+72x^153+566x^162+90x^171" in out
    assert out.rstrip().endswith("PASS")


def test_code_verify_json_schema(capsys):
    status, out, _ = run(capsys, "code", "verify", "--p", "3", "--m", "5", "--k", "2", "--d", "97", "--a", "0",
                         "--format", "json")
    body = json.loads(out)
    assert status == 0
    assert set(body) == {"params", "length", "dimension", "min_distance", "enumerator", "expected", "verdict", "branch"}
    assert body["enumerator"] == [[0, 1], [48, 90], [54, 80], [60, 72]]
    assert body["verdict"] == "PASS" and body["branch"] == "T1"


def test_json_is_deterministic(capsys):
    argv = ["code", "verify", "--p", "3", "--m", "6", "--k", "2", "--d", "437", "--a", "2", "--format", "json"]
    outputs = [run(capsys, *argv, "--jobs", jobs)[1] for jobs in ("1", "3", "1")]
    assert outputs[0] == outputs[1] == outputs[2]


def test_code_build_csv_to_file(capsys, tmp_path):
    target = tmp_path / "enum.csv"
    status, out, _ = run(capsys, "code", "build", "--p", "3", "--m", "5", "--k", "2", "--d", "97", "--a", "0",
                         "--format", "csv", "--out", str(target))
    assert status == 0 and out == ""
    assert target.read_bytes() == b"weight,frequency\r\n0,1\r\n48,90\r\n54,80\r\n60,72\r\n"


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["d", "solve", "--p", "3", "--m", "6", "--k", "3"], "ParityViolation"),
        (["code", "verify", "--p", "3", "--m", "5", "--k", "2", "--d", "98", "--a", "0"], "InvalidExponent"),
        (["field", "show", "--p", "4", "--m", "2"], "NonPrime"),
        (["field", "show", "--p", "3", "--m", "14"], "SizeCapExceeded"),
        (["code", "verify", "--p", "5", "--m", "3", "--k", "1", "--d", "21", "--a", "0"], "UnsupportedBranch"),
        (["expsum", "dist", "--p", "3", "--m", "9", "--k", "3", "--mode", "naive"], "BudgetExceeded"),
        (["d", "solve", "--p", "3", "--m", "5", "--k", "2", "--format", "csv"], "csv"),
        (["expsum", "t", "--p", "3", "--m", "5", "--k", "2", "--u", "x"], "discrete log"),
    ],
)
def test_invalid_parameters_exit_two(capsys, argv, needle):
    status, out, err = run(capsys, *argv)
    assert status == 2
    assert out == ""
    assert needle in err and len(err.strip().splitlines()) == 1


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["code", "verify", "--p", "3"])
    assert info.value.code == 2


def test_suite_quick(capsys):
    status, out, _ = run(capsys, "suite", "--level", "quick")
    assert status == 0
    assert out.rstrip().endswith("PASS")
    assert "FAIL" not in out
