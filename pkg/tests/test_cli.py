import io
import json

import pytest

from tensorcert.certificate import strip_timestamp
from tensorcert.cli import main, render_report


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def restricted_config(tmp_path):
    path = tmp_path / "restricted.json"
    path.write_text(json.dumps({
        "category": {"flavor": "walled-brauer", "field": {"kind": "ext", "minpoly": [1, 0, -2]},
                     "t": 0, "restricted_unit": True},
        "job": {"object": "+", "pairs": [["1", "1"]]},
    }))
    return path


def test_strongly_faithful_certified(tmp_path):
    out = tmp_path / "o3.json"
    code, text, _ = run(["certify", "strongly-faithful", "--flavor", "brauer", "--t", "3",
                         "--degree", "4", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["verdict"] == "certified" and data["schema"] == "v1"
    assert "verdict: certified" in text


def test_restricted_unit_refuted(tmp_path, restricted_config):
    out = tmp_path / "r.json"
    code, text, _ = run(["certify", "strongly-faithful-mn", "--config", str(restricted_config),
                         "--out", str(out)])
    assert code == 1
    assert "FIRST FAILURE" in text and "defect dimension 1" in text
    code, _, _ = run(["certify", "faithful", "--config", str(restricted_config), "--degree", "2"])
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["certify", "faithful", "--flavor", "brauer", "--t", "3", "--p", "4"],
    ["certify", "faithful", "--flavor", "klein", "--t", "3"],
    ["certify", "faithful", "--flavor", "brauer"],
    ["certify", "bogus", "--flavor", "brauer", "--t", "3"],
    ["certify", "faithful", "--flavor", "brauer", "--t", "3", "--cap", "0"],
    ["certify", "faithful", "--flavor", "walled-brauer", "--t", "3", "--object", "+x"],
    ["sl2", "st-faithful", "--p", "2"],
    ["sl2", "linkage"],
])
def test_invalid_input_exit_code(argv):
    code, _, err = run(argv)
    assert code == 3 and err.startswith("error: ")


def test_malformed_config_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["certify", "faithful", "--config", str(bad)])
    assert code == 3 and "config" in err
    bad.write_text(json.dumps({"category": {"flavor": "brauer", "t": 1, "field": {"kind": "R"}}}))
    code, _, err = run(["certify", "faithful", "--config", str(bad)])
    assert code == 3 and "category.field" in err


def test_report_is_deterministic(tmp_path, restricted_config):
    out = tmp_path / "r.json"
    run(["certify", "strongly-faithful-mn", "--config", str(restricted_config), "--out", str(out)])
    code1, r1, _ = run(["report", str(out)])
    code2, r2, _ = run(["report", str(out)])
    assert code1 == code2 == 0 and r1 == r2
    assert "verdict: refuted" in r1


def test_report_rejects_bad_schema(tmp_path):
    bad = tmp_path / "c.json"
    bad.write_text(json.dumps({"schema": "v0"}))
    assert run(["report", str(bad)])[0] == 3


def test_gamma_report_has_one_row_per_object(tmp_path):
    out = tmp_path / "g.json"
    code, _, _ = run(["certify", "gamma-split-exact", "--flavor", "brauer", "--t", "3", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    text = render_report(data)
    assert text.count("\n") >= len(data["cases"]) + 3


def test_rerun_is_identical_modulo_timestamp(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        run(["certify", "witnesses", "--flavor", "walled-brauer", "--t", "2", "--out", str(p)])
    a, b = (strip_timestamp(p.read_text()) for p in paths)
    assert a == b


def test_homdim():
    code, text, _ = run(["homdim", "--flavor", "brauer", "--t", "3", "--source", "+++", "--target", "+++"])
    data = json.loads(text)
    assert code == 0 and data["dim"] == 15 and data["diagram_count"] == 15
    code, text, _ = run(["homdim", "--flavor", "temperley-lieb", "--p", "3",
                         "--source", "++++", "--target", "++++"])
    assert json.loads(text)["dim"] == 14
    code, text, _ = run(["homdim", "--flavor", "tilting", "--p", "3", "--source", "4", "--target", "4"])
    assert json.loads(text)["dim"] == 2


def test_ideal_tables():
    code, text, _ = run(["ideal", "--flavor", "brauer", "--t", "1", "--ideal", "negligible", "--degree", "2"])
    assert code == 0
    rows = json.loads(text)["table"]
    assert len(rows) == 9
    code, text, _ = run(["ideal", "--flavor", "tilting", "--p", "3", "--ideal", "J", "--r", "1",
                         "--degree", "3"])
    table = json.loads(text)["table"]
    dims = {(r["pair"][0][0], r["pair"][1][0]): r["dim_ideal"] for r in table}
    assert dims[(0, 0)] == 0 and dims[(2, 2)] == 1


def test_sl2_subchecks():
    code, text, _ = run(["sl2", "linkage", "--p", "3"])
    assert code == 0 and all(r["ok"] for r in json.loads(text)["gap_checks"])
    code, text, _ = run(["sl2", "linkage", "--p", "3", "--a", "2", "--bound", "20"])
    assert json.loads(text)["orbit"] == [2, 14, 20]
    code, text, _ = run(["sl2", "decompose", "--p", "3", "--n", "3"])
    assert code == 0 and json.loads(text)["agree"]
    code, _, _ = run(["sl2", "char-necessary", "--p", "3", "--i", "8", "--r", "2"])
    assert code == 0
    code, text, _ = run(["sl2", "st-faithful", "--p", "3", "--r", "1"])
    assert code == 0 and "verdict: certified" in text


def test_envelope_report_has_two_sections(tmp_path):
    out = tmp_path / "env.json"
    code, text, _ = run(["sl2", "envelope", "--p", "3", "--r", "2", "--out", str(out)])
    assert code == 0
    assert "== faithfulness ==" in text and "== splitting ==" in text
    _, again, _ = run(["report", str(out)])
    assert again == text
    # the default samples T_i with i <= 4 are not below St_1 = T_2
    assert run(["sl2", "envelope", "--p", "3", "--r", "1"])[0] == 3
