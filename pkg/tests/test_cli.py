import io
import json
import subprocess
import sys

import pytest

from arrowknot import cli, statesum
from arrowknot.arrowpoly import parse_poly
from arrowknot.tables import builtin_path

ALLOW = str(builtin_path("allow_list.tsv"))
CODE_409 = "O1-O2-U1-U3-O4-U2-O3-U4-"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = cli.main(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


def test_compute_unknot():
    status, out, _ = run("compute", "", "--format", "json")
    assert status == 0
    row = json.loads(out)
    assert row["arrow_polynomial"] == "1" and (row["v_lower"], row["genus_lower"]) == (0, 0)


def test_compute_kink_normalized():
    status, out, _ = run("compute", "O1+U1+", "--format", "json")
    assert json.loads(out)["normalized_polynomial"] == "1"


def test_compute_409():
    status, out, _ = run("compute", CODE_409, "--format", "json", "--name", "4.09")
    row = json.loads(out)
    assert status == 0 and row["name"] == "4.09"
    assert (row["v_lower"], row["genus_lower"]) == (1, 1)


@pytest.mark.parametrize("code", ["O1+U1", "O1+U1+,O2+U2+", "Q"])
def test_compute_bad_input(code):
    status, _, err = run("compute", code)
    assert status == 2 and err.startswith("error:")


def test_bad_flag_is_input_error():
    assert run("compute", "", "--format", "xml")[0] == 2


def test_batch_builtin_table():
    status, out, _ = run("batch", "--format", "json")
    rows = [json.loads(l) for l in out.splitlines()]
    assert status == 0 and len(rows) == 108
    assert rows[0]["name"] == "4.01" and rows[-1]["name"] == "4.108"
    for r in rows:
        assert parse_poly(r["arrow_polynomial"]).to_canonical() == r["arrow_polynomial"]


def test_batch_empty_file(tmp_path):
    f = tmp_path / "empty.tsv"
    f.write_text("", encoding="utf-8")
    assert run("batch", str(f)) == (0, "", "")


def test_batch_malformed_lines(tmp_path):
    f = tmp_path / "t.tsv"
    f.write_text("a\tO1+U1+\nb\tnope\nc\tO1-O2-U1-U2-\n", encoding="utf-8")
    status, out, err = run("batch", str(f), "--format", "csv")
    assert status == 2
    assert "t.tsv:2" in err
    assert [l.split(",")[0] for l in out.splitlines()[1:]] == ["a", "c"]


def test_batch_missing_file(tmp_path):
    assert run("batch", str(tmp_path / "nope.tsv"))[0] == 2


def test_batch_threads_identical_output():
    single = run("batch", "--format", "csv")[1]
    assert run("batch", "--format", "csv", "--threads", "3")[1] == single
    assert run("batch", "--format", "csv", "--threads", "0")[1] == single


def _fixture_subset(tmp_path, names, tweak=None):
    lines = []
    for line in builtin_path("table_fixtures.tsv").read_text(encoding="utf-8").splitlines():
        cols = line.split("\t")
        if cols[0] in names:
            if tweak and cols[0] in tweak:
                cols = tweak[cols[0]](cols)
            lines.append("\t".join(cols))
    f = tmp_path / "fx.tsv"
    f.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(f)


def test_verify_curated_rows_match(tmp_path):
    fx = _fixture_subset(tmp_path, {"4.01", "4.22", "4.46", "4.47", "4.91", "4.99"})
    status, out, _ = run("verify", str(builtin_path("knots4.tsv")), fx)
    assert status == 0
    assert "0 unexpected mismatch" in out


def test_verify_detects_wrong_v(tmp_path):
    fx = _fixture_subset(tmp_path, {"4.01"}, {"4.01": lambda c: [c[0], c[1], "3", c[3]]})
    status, out, _ = run("verify", str(builtin_path("knots4.tsv")), fx)
    assert status == 1
    assert out.splitlines()[0] == "4.01\tv\texpected=3\tcomputed=2\tMISMATCH"


def test_verify_inconsistent_rows_need_allow_list(tmp_path):
    fx = _fixture_subset(tmp_path, {"4.42", "4.45", "4.97"})
    table = str(builtin_path("knots4.tsv"))
    status, out, _ = run("verify", table, fx)
    assert status == 1 and out.count("MISMATCH") == 3
    status, out, _ = run("verify", table, fx, "--allow-list", ALLOW)
    assert status == 0 and out.count("allowed") == 3


def test_verify_missing_name(tmp_path):
    fx = tmp_path / "fx.tsv"
    fx.write_text("9.99\t1\t0\t0\n", encoding="utf-8")
    status, out, _ = run("verify", str(builtin_path("knots4.tsv")), str(fx))
    assert status == 1 and "9.99\tmissing" in out


def test_selfcheck_ok():
    status, out, _ = run("selfcheck")
    assert status == 0 and "FAIL" not in out


def test_selfcheck_detects_corrupted_convention(monkeypatch):
    monkeypatch.setattr(statesum, "CALIBRATED", statesum.Convention(sink_negative=1))
    status, out, _ = run("selfcheck")
    assert status == 1 and "FAIL" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "arrowknot", "compute", "O1+U1+", "--bounds-only"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "v_lower" in proc.stdout
