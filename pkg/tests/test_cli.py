from __future__ import annotations

import io
import json

import pytest

from qmetric.cli import parse_survey_text, run

SQUARE_TXT = "# unit square with rational diagonal\n4\n0 1 3/2 1\n1 0 1 3/2\n3/2 1 0 1\n1 3/2 1 0\n"
LETTERS_TXT = "4\n- a c b\na - b c\nc b - a\nb c a -\n"
BAD_TRIANGLE_TXT = "3\n0 1 3\n1 0 1\n3 1 0\n"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return _write


def test_classify_square_json(write):
    code, out, _ = call("classify", "--input", write("square.txt", SQUARE_TXT), "--format", "json",
                        "--autgroup")
    assert code == 0
    doc = json.loads(out)
    assert list(doc) == ["n", "colors", "classification", "trace", "autgroup"]
    assert doc["classification"] == {"kind": "fuss_catalan", "params": {"m": 2, "s": 2}}
    assert doc["autgroup"]["order"] == 8 and doc["autgroup"]["orbits"] == [[0, 1, 2, 3]]


def test_classify_is_byte_stable(write):
    path = write("square.txt", SQUARE_TXT)
    runs = {call("classify", "--input", path, "--format", "json", "--autgroup")[1] for _ in range(3)}
    assert len(runs) == 1


def test_classify_text_and_replay(write):
    code, out, _ = call("classify", "--input", write("r.txt", LETTERS_TXT), "--replay-check", "--autgroup")
    assert code == 0
    assert "kind: commutative" in out and "replay check: pass" in out
    assert "order 4" in out


def test_triangle_warnings(write):
    code, out, err = call("classify", "--input", write("t.txt", BAD_TRIANGLE_TXT), "--check-triangle",
                          "--format", "json")
    assert code == 0
    assert err.count("warning:") == 1
    assert len(json.loads(out)["triangle_warnings"]) == 1
    code, _, err = call("classify", "--input", write("l.txt", LETTERS_TXT), "--check-triangle")
    assert code == 2 and "numeric" in err


@pytest.mark.parametrize("text, fragment", [
    ("4\n0 1\n", "line"),
    ("2\n0 1\n2 0\n", "column"),
    ("", "line"),
])
def test_malformed_input(write, text, fragment):
    code, out, err = call("classify", "--input", write("bad.txt", text))
    assert code == 2 and out == "" and fragment in err


def test_missing_file():
    code, _, err = call("classify", "--input", "/nonexistent/missing.txt")
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    [],
    ["classify"],
    ["survey", "--n", "4"],
    ["survey", "--n", "6", "--exhaustive"],
    ["survey", "--n", "5", "--sample", "10"],
    ["survey", "--n", "4", "--exhaustive", "--sample", "3"],
    ["dims", "--family", "tl", "--params", "2,2", "--max-k", "2"],
    ["dims", "--family", "fc", "--params", "2", "--max-k", "2"],
    ["dims", "--family", "tl", "--param", "4", "--max-k", "9"],
    ["verify", "--suite", "nope"],
    ["enumerate-vt", "--max-n", "0"],
    ["enumerate-vt", "--max-n", "5", "--bogus"],
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0


def test_enumerate_vt():
    code, out, _ = call("enumerate-vt", "--max-n", "5")
    assert code == 0
    counts = [int(line.split("count=")[1].split(":")[0]) for line in out.splitlines()[:-1]]
    assert counts == [1, 2, 2, 4, 3]
    assert out.splitlines()[-1] == "total=12"


def test_enumerate_vt_json():
    code, out, _ = call("enumerate-vt", "--max-n", "4", "--format", "json")
    doc = json.loads(out)
    assert doc["counts"] == {"1": 1, "2": 2, "3": 2, "4": 4} and doc["total"] == 9


@pytest.mark.parametrize("argv", [
    ["survey", "--n", "4", "--exhaustive"],
    ["survey", "--n", "6", "--sample", "200", "--seed", "5"],
    ["survey", "--n", "6", "--homogeneous"],
])
def test_survey_text_json_roundtrip(argv):
    c1, text, _ = call(*argv)
    c2, js, _ = call(*argv, "--format", "json")
    assert c1 == c2 == 0
    assert parse_survey_text(text) == json.loads(js)
    assert call(*argv, "--format", "json")[1] == js


def test_dims_tables():
    code, out, _ = call("dims", "--family", "tl", "--param", "4", "--max-k", "4", "--classical",
                        "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [(r["rank"], r["classical"]) for r in rows] == [(1, 1), (1, 1), (2, 2), (5, 5), (14, 15)]
    code, out, _ = call("dims", "--family", "fc", "--params", "2,2", "--max-k", "2")
    assert code == 0 and out.splitlines()[0] == "FC(2,2)"
    assert out.splitlines()[-1].split() == ["2", "3", "3"]


def test_verify_text_and_json():
    code, out, _ = call("verify", "--suite", "circulant")
    assert code == 0 and out.startswith("circulant: PASS 10/10")
    code, out, _ = call("verify", "--suite", "duplex", "--format", "json")
    assert code == 0 and json.loads(out)["ok"] is True
