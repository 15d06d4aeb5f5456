import io as stdio
import json

import pytest

from symlift import fixtures as fx
from symlift import io
from symlift.cli import main
from symlift.errors import InputMismatch


@pytest.fixture
def region_file(tmp_path):
    def write(name, region=None):
        path = tmp_path / f"{name}.json"
        path.write_text(io.dumps(io.region_to_json(region or fx.ALL[name]())))
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_partitions_json(capsys):
    code, out, _ = run(capsys, "partitions", "4", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["M"] == 4 and doc["m_alpha"] == [1, 1, 2, 1]
    assert len(doc["partitions"]) == 5


def test_partitions_single_row(capsys):
    code, out, _ = run(capsys, "partitions", "1")
    assert code == 0 and "M = 1" in out


@pytest.mark.parametrize("argv", [["partitions", "0"], ["partitions", "31"], ["partitions", "x"],
                                  ["nosuch"], [], ["count", "3"], ["audit", "all", "5"]])
def test_bad_arguments_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3 and err


def test_audit_expected_fail_exits_0(capsys, tmp_path):
    out_path = tmp_path / "audit.json"
    code, out, _ = run(capsys, "audit", "interior-boundary-intersection", "2",
                       "--out", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["reports"][0]["verdict"] == "fails"
    assert doc["reports"][0]["certificate"] is not None
    assert doc["checks"][0]["verdict"] == "pass"


def test_audit_holds(capsys):
    code, out, _ = run(capsys, "audit", "exterior-boundary-eq-closure-boundary", "2", "--json")
    assert code == 0 and json.loads(out)["reports"][0]["verdict"] == "holds"


def test_audit_all(capsys):
    code, out, _ = run(capsys, "audit", "all", "3", "--json")
    doc = json.loads(out)
    assert code == 0 and all(c["verdict"] == "pass" for c in doc["checks"])


def test_audit_unknown_lemma(capsys):
    assert run(capsys, "audit", "not-a-lemma", "2")[0] == 3


def test_bad_thread_variable(capsys, monkeypatch):
    monkeypatch.setenv("SYMLIFT_THREADS", "zero")
    assert run(capsys, "partitions", "3")[0] == 3


def test_lift_crossing(capsys, region_file, tmp_path):
    out_path = tmp_path / "lift.json"
    code, _, _ = run(capsys, "lift", region_file("crossing"), "--out", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["status"] == "ok"
    assert len(doc["diagnostics"]["passing_nodes"]) == 1
    assert doc["diagnostics"]["passing_nodes"] == [[10]]
    assert all(c["verdict"] == "pass" for c in doc["checks"])


def test_lift_constant(capsys, region_file):
    code, out, _ = run(capsys, "lift", region_file("constant"))
    doc = json.loads(out)
    assert code == 0 and doc["events"] == []


def test_lift_obstruction_exit_2(capsys, region_file):
    code, out, _ = run(capsys, "lift", region_file("braid"))
    doc = json.loads(out)
    assert code == 2 and doc["status"] == "obstructed"
    assert doc["error"]["error"] == "HolonomyError"
    assert doc["error"]["square"] == [[0, 0], [1, 0], [0, 1], [1, 1]]


def test_truncated_json_exit_3(capsys, region_file, tmp_path):
    text = open(region_file("crossing")).read()
    bad = tmp_path / "bad.json"
    bad.write_text(text[: len(text) // 2])
    assert run(capsys, "lift", str(bad))[0] == 3


def test_unknown_field_rejected(capsys, tmp_path):
    doc = io.region_to_json(fx.crossing())
    doc["colour"] = "red"
    path = tmp_path / "extra.json"
    path.write_text(json.dumps(doc))
    assert run(capsys, "lift", str(path))[0] == 3


def test_stdin_input(capsys, monkeypatch, region_file):
    monkeypatch.setattr("sys.stdin", stdio.StringIO(open(region_file("crossing")).read()))
    assert run(capsys, "lift", "-")[0] == 0


def test_lift_output_is_byte_identical(capsys, region_file, tmp_path):
    path = region_file("antipodal")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "lift", path, "--out", str(a))
    run(capsys, "lift", path, "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_verify_round_trip_and_mutation(capsys, region_file, tmp_path):
    region_path = region_file("antipodal")
    lift_path = tmp_path / "lift.json"
    run(capsys, "lift", region_path, "--out", str(lift_path))
    assert run(capsys, "verify", region_path, str(lift_path))[0] == 0

    doc = json.loads(lift_path.read_text())
    entry = doc["lift"][30]
    entry["tuple"] = entry["tuple"][::-1]
    mutated = tmp_path / "mutated.json"
    mutated.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", region_path, str(mutated))
    assert code == 1 and "continuity: fail" in out


def test_verify_shape_mismatch_exit_3(capsys, region_file, tmp_path):
    lift_path = tmp_path / "lift.json"
    run(capsys, "lift", region_file("crossing"), "--out", str(lift_path))
    other = region_file("crossing-short", fx.crossing(11))
    assert run(capsys, "verify", other, str(lift_path))[0] == 3


@pytest.mark.parametrize("q,m,pieces,sp,f", [(3, 2, [6, 3], 6, 6),
                                             (3, 3, [6, 6, 6, 6, 3], 10, 7)])
def test_count(capsys, q, m, pieces, sp, f):
    code, out, _ = run(capsys, "count", str(q), str(m), "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["product"] == q ** m
    assert sorted(p["points"] for p in doc["pieces"]) == sorted(pieces)
    assert (doc["sp"], doc["f"]) == (sp, f)


def test_count_trivial_space(capsys):
    doc = json.loads(run(capsys, "count", "1", "5", "--json")[1])
    assert doc["sp"] == doc["f"] == doc["product"] == 1


def test_region_round_trip_through_json():
    for name in ("crossing", "support-jump", "antipodal"):
        region = fx.ALL[name]()
        doc = io.region_to_json(region)
        back = io.region_from_json(json.loads(io.dumps(doc)))
        assert back.samples == region.samples and back.shape == region.shape


def test_region_parse_errors():
    doc = io.region_to_json(fx.crossing(3))
    doc["samples"][1]["index"] = [0]
    with pytest.raises(InputMismatch):
        io.region_from_json(doc)
    doc = io.region_to_json(fx.crossing(3))
    doc["n"] = 2
    with pytest.raises(InputMismatch):
        io.region_from_json(doc)
    doc = io.region_to_json(fx.crossing(3))
    doc["samples"][0]["points"] = [[0.0]]
    with pytest.raises(InputMismatch):
        io.region_from_json(doc)
    with pytest.raises(InputMismatch):
        io.parse_json('{"version": 1, "mode": "sp", "m": NaN}', io.REGION_SCHEMA, "region")


def test_labels_region_json(capsys, tmp_path):
    doc = io.region_to_json(fx.constant_labels())
    assert doc["samples"][0]["points"] == ["a", "b", "b"]
    path = tmp_path / "labels.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "lift", str(path))
    assert code == 0 and json.loads(out)["lift"][0]["tuple"] == ["b", "b", "a"]
