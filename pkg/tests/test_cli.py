import json
import subprocess
import sys
from pathlib import Path

import pytest

from qcspectra import corpus
from qcspectra.cli import dump_json, fmt4, run

FIXTURES = Path(__file__).parent / "fixtures"


def run_json(*argv, env=None):
    status, out, err = run([*argv, "--format", "json"], env or {})
    assert status == 0, err
    return json.loads(out)


def test_spectrum_tanner_text():
    status, out, err = run(["spectrum", "tanner155.qc"], {})
    assert status == 0 and err == ""
    rows = [line.split() for line in out.splitlines()[2:-1]]
    assert rows == [["15.0000", "1"], ["8.6801", "30"], ["4.8459", "30"], ["1.4740", "30"], ["0.0000", "64"]]
    assert "method reduced" in out


def test_spectrum_identity():
    report = run_json("spectrum", "identity.qc")
    assert report["clusters"] == [{"value": 1.0, "multiplicity": 5}]


def test_spectrum_example2_nested():
    report = run_json("spectrum", "example2.nested.json")
    got = [(round(c["value"], 12), c["multiplicity"]) for c in report["clusters"]]
    assert got == [(4.0, 1), (2.0, 1), (0.0, 3), (-2.0, 3)]
    assert report["kind"] == "nested" and not report["complex"]


def test_complex_nested_spectrum_is_labelled(tmp_path):
    f = tmp_path / "shift.json"
    f.write_text(json.dumps({"dims": [3], "coeffs": [{"index": [1], "value": 1}]}))
    status, out, _ = run(["spectrum", str(f)], {})
    assert status == 0
    assert "complex spectrum" in out


@pytest.mark.parametrize(
    "name, pw, informative, necessary",
    [("pg22.qc", 4.0, True, True), ("eg22.qc", 3.0, True, True), ("pg24.qc", 6.0, True, True),
     ("tanner155.qc", -65.7329, False, False)],
)
def test_bound_on_corpus(name, pw, informative, necessary):
    report = run_json("bound", name)
    assert report["pw_bound"] == pytest.approx(pw, abs=1e-4)
    assert report["informative"] is informative
    assert report["necessary_condition"] is necessary


def test_bound_includes_equality_block_for_circulants():
    report = run_json("bound", "pg24.qc")
    assert report["equality"]["holds"] is True
    assert report["equality"]["r_poly"] == "1 - x + x^2"
    assert run_json("bound", "tanner155.qc")["equality"] is None


def test_bound_irregular_code_reports_histogram(tmp_path):
    f = tmp_path / "irregular.qc"
    f.write_text("r = 3\nP = [1 + x, 1]\n")
    status, out, err = run(["bound", str(f)], {})
    assert status == 1 and out == ""
    assert "column weights" in err and "{1: 3, 2: 3}" in err


def test_bound_degenerate_spectrum():
    status, _, err = run(["bound", "identity.qc"], {})
    assert status == 1
    assert "lambda2 undefined" in err


def test_check_equality_poly_option():
    report = run_json("check-equality", "--poly", "1 + x + x^2", "--n", "5")
    assert report["holds"] is False
    assert report["autocorrelation"][1:] == [2, 1, 1, 2]
    report = run_json("check-equality", "eg22.qc")
    assert (report["holds"], report["lambda2"], report["r_poly"]) == (True, 1, "1")


def test_check_equality_rejects_multi_block_code():
    status, _, err = run(["check-equality", "tanner155.qc"], {})
    assert status == 1 and "single circulant" in err


def test_nested_with_gram():
    report = run_json("nested", "example2.nested.json", "--gram")
    assert report["oracle_pass"] is True
    gram = [(round(c["value"], 10), c["multiplicity"]) for c in report["gram_spectrum"]["clusters"]]
    assert gram == [(16.0, 1), (4.0, 4), (0.0, 3)]


def test_nested_detect():
    report = run_json("nested", "--detect", str(FIXTURES / "example2_matrix.txt"), "--dims", "2,2,2")
    assert report["detected"] == json.loads(corpus.path("example2.nested.json").read_text())


def test_nested_detect_failure_is_domain_error(tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("1 2\n3 1\n")
    status, _, err = run(["nested", "--detect", str(f), "--dims", "2"], {})
    assert status == 1 and "error" in err


def test_verify_tanner_passes():
    report = run_json("verify", "tanner155.qc")
    assert report["pass"] is True
    assert report["max_deviation"] < 1e-8


def test_verify_against_stored_spectrum():
    report = run_json("verify", "pg22.qc", "--expected", str(FIXTURES / "pg22_spectrum.json"))
    assert report["pass"] is True


def test_verify_negative_control_exits_2():
    status, out, err = run(["verify", "pg22.qc", "--expected", str(FIXTURES / "corrupted_pg22_spectrum.json")], {})
    assert status == 2
    assert "FAIL" in out and "max deviation 1.000e-03" in out
    assert "disagrees" in err


def test_verify_cap():
    status, _, err = run(["verify", "tanner155.qc", "--cap", "100"], {})
    assert status == 1 and "cap" in err


@pytest.mark.parametrize("name", corpus.code_files())
def test_reduced_and_dense_agree_on_corpus(name):
    a = run_json("spectrum", name, "--method", "reduced")
    b = run_json("spectrum", name, "--method", "dense")
    limit = 1e-8 * max(1.0, max(b["values"]))
    assert max(abs(x - y) for x, y in zip(a["values"], b["values"])) <= limit
    assert [c["multiplicity"] for c in a["clusters"]] == [c["multiplicity"] for c in b["clusters"]]


@pytest.mark.parametrize(
    "vector, member, wp",
    [("pg22_allones.vec", True, 7.0), ("pg22_codeword.vec", True, 4.0), ("pg22_unit.vec", False, 1.0)],
)
def test_pseudoweight(vector, member, wp):
    report = run_json("pseudoweight", "pg22.qc", vector)
    assert report["member"] is member
    assert report["pseudo_weight"] == pytest.approx(wp)
    if not member:
        assert report["violation"]["row"] is not None


def test_pseudoweight_dimension_mismatch():
    status, _, err = run(["pseudoweight", "eg22.qc", "pg22_unit.vec"], {})
    assert status == 1 and "does not match" in err


@pytest.mark.parametrize(
    "argv",
    [["spectrum", "tanner155.qc"], ["bound", "pg24.qc"], ["nested", "example2.nested.json", "--gram"],
     ["pseudoweight", "pg22.qc", "pg22_unit.vec"], ["check-equality", "pg22.qc"]],
)
def test_json_reports_round_trip_byte_identical(argv):
    _, out, _ = run([*argv, "--format", "json"], {})
    assert dump_json(json.loads(out)) == out


def test_env_overrides_and_flag_precedence():
    report = run_json("spectrum", "eg22.qc", env={"QCSPECTRA_METHOD": "dense"})
    assert report["method"] == "dense"
    status, out, _ = run(["spectrum", "eg22.qc", "--method", "reduced"], {"QCSPECTRA_FORMAT": "json",
                                                                         "QCSPECTRA_METHOD": "dense"})
    assert status == 0 and json.loads(out)["method"] == "reduced"
    report = run_json("spectrum", "eg22.qc", env={"QCSPECTRA_CLUSTER_TOL": "5"})
    assert report["cluster_tol"] == 5.0
    assert report["clusters"] == [{"value": pytest.approx(2.0), "multiplicity": 3}]


def test_bad_env_value():
    status, _, err = run(["spectrum", "eg22.qc"], {"QCSPECTRA_TOL": "tiny"})
    assert status == 1 and "QCSPECTRA_TOL" in err


def test_parse_error_has_location(tmp_path):
    f = tmp_path / "bad.qc"
    f.write_text("r = 3\nP = [x^7]\n")
    status, _, err = run(["spectrum", str(f)], {})
    assert status == 1
    assert "line 2" in err


def test_missing_file():
    status, _, err = run(["spectrum", "no-such-file.qc"], {})
    assert status == 1 and "no such file" in err


def test_fmt4_has_no_negative_zero():
    assert fmt4(-1e-14) == "0.0000"
    assert fmt4(8.680143618) == "8.6801"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qcspectra", "spectrum", "pg22.qc"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "9.0000" in proc.stdout


def test_gram_closure_failure_exits_2(monkeypatch):
    from qcspectra import nested
    from qcspectra.errors import StructureError

    def broken(m, dims, atol=0.0):
        raise StructureError(0, 1, 1.0, 0.0)

    monkeypatch.setattr(nested, "nested_detect", broken)
    status, _, err = run(["nested", "example2.nested.json", "--gram"], {})
    assert status == 2 and "inconsistency" in err
