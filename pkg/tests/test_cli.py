import json

import pytest

from jonescable.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("3,1,3") == [1, 3]


def test_jones_torus(capsys):
    code, out, _ = run(capsys, "jones", "--torus", "2", "3", "--n", "1..4", "-q")
    data = json.loads(out)
    assert code == 0 and len(data["results"]) == 4
    assert data["results"][0]["text"] == "1"


def test_jones_braid_equals_torus(capsys):
    _, a, _ = run(capsys, "jones", "--braid", "1 1 1", "--n", "2", "-q")
    _, b, _ = run(capsys, "jones", "--torus", "2", "3", "--n", "2", "-q")
    assert json.loads(a)["results"] == json.loads(b)["results"]


def test_jones_cable_degree_matches_prediction(capsys):
    _, out, _ = run(capsys, "jones", "--cable", "torus:2,3", "11", "2", "--n", "3", "-q")
    assert json.loads(out)["results"][0]["degrees"][0] == "47"  # 6*9 - 3/2 - 11/2


def test_jones_parallel_workers_give_the_same_bytes(capsys):
    _, a, _ = run(capsys, "jones", "--braid", "1 -2 1 -2", "--n", "1..3", "-q")
    _, b, _ = run(capsys, "jones", "--braid", "1 -2 1 -2", "--n", "1..3", "--jobs", "2", "-q")
    assert a == b


def test_progress_goes_to_stderr(capsys):
    code, out, err = run(capsys, "jones", "--torus", "2", "3", "--n", "2")
    assert code == 0 and "n=2" in err and "n=2" not in out


def test_predict_8_20(capsys):
    code, out, _ = run(capsys, "predict", "--knot", "8_20", "--p", "1", "--q", "2", "-q")
    data = json.loads(out)
    assert code == 0 and data["constant_a"]["admissible"] is True
    assert data["prediction"]["case_tag"] == "inherited"


def test_predict_tie_is_a_structured_error(capsys):
    code, out, err = run(capsys, "predict", "--knot", "8_21", "--p", "1", "--q", "2", "-q")
    assert code == 4 and out == ""
    assert json.loads(err)["error"]["kind"] == "CancellationRisk"


def test_fusion_b(capsys):
    code, out, _ = run(capsys, "fusion", "--m1", "2", "--m2", "1", "--report", "b", "-q")
    assert code == 0 and json.loads(out)["b"] == "-1/4"


def test_fusion_delta_with_oracle(capsys):
    _, out, _ = run(capsys, "fusion", "--m1", "2", "--m2", "1", "--report", "delta", "--n", "5", "--bruteforce", "-q")
    row = json.loads(out)["delta"][0]
    assert row["delta"] == row["bruteforce"] == "158"


def test_check_catalog_all(capsys):
    code, out, _ = run(capsys, "check", "--catalog", "all", "-q")
    data = json.loads(out)
    assert code == 0 and data["ok"] and len(data["reports"]) == 11
    _, again, _ = run(capsys, "check", "--catalog", "all", "-q")
    assert again == out


def test_check_csv(capsys):
    code, out, _ = run(capsys, "check", "--pretzel", "7,9", "--format", "csv", "-q")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "knot,conjecture,side,status"
    assert all(line.endswith(",pass") for line in lines[1:])


def test_verify_cable(capsys):
    code, out, _ = run(capsys, "verify-cable", "--knot", "torus:2,3", "--p=-5..5", "--q", "2", "--n-max", "8", "-q")
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert {r["companion"] for r in data["results"]} == {"exact"}


def test_slopes_of_iterated_cable(capsys):
    _, out, _ = run(capsys, "slopes", "--knot", "cable:cable:torus:2,3;11,2;47,2", "-q")
    data = json.loads(out)
    assert data["js"] == ["96"] and data["jx"] == ["-3"]


def test_fit_samples(capsys):
    _, out, _ = run(capsys, "fit", "--samples", "1=0,2=9/2,3=12,4=45/2,5=36,6=105/2", "-q")
    assert json.loads(out)["js"] == ["6"]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["jones", "--torus", "2", "4", "--n", "2"], 2),
        (["jones", "--knot", "fusion:2,1", "--n", "2"], 2),
        (["predict", "--knot", "torus:2,3", "--p", "6", "--q", "1"], 2),
        (["jones", "--knot", "catalog:9_49", "--n", "3", "--max-strands", "5"], 3),
        (["fusion", "--m1", "2", "--m2", "0"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv, "-q")
    assert got == code and out == ""
    assert "error" in json.loads(err)
