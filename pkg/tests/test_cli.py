import json
import math

import pytest

from bladekit.cli import _tol, build_parser, main

PAIR = {"field": "complex", "dim": 2, "vectors": [[[1, 1], 0], [1, [0, 2]]]}
SQUARE = {"field": "complex", "dim": 1, "vectors": [[5], [[0, 5]]]}
ORTHO = {"field": "complex", "dim": 2, "vectors": [[3, 0], [0, [0, 2]]]}
TILTED = {"field": "complex", "dim": 2, "vectors": [[2, 0], [[0, 4], 3]]}


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="in.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    if code == 2:
        assert captured.err.startswith("error:")
    return code, captured.out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_gramian(write, capsys):
    path = write(PAIR)
    assert run_json(capsys, "gramian", path)["gramian"][0] == pytest.approx(8)
    assert run_json(capsys, "gramian", path, "--inner", "real")["gramian"][0] == pytest.approx(9)
    assert run_json(capsys, "gramian", path, "--backend", "exact")["gramian"] == ["8/1", "0/1"]


def test_volume(write, capsys):
    path = write(PAIR)
    assert run_json(capsys, "volume", path)["volume"][0] == pytest.approx(3)
    assert run_json(capsys, "volume", path, "--with-i")["volume"][0] == pytest.approx(8)
    assert run_json(capsys, "volume", write(TILTED))["volume"][0] == pytest.approx(10)
    dup = write({"field": "real", "dim": 2, "vectors": [[1, 2], [1, 2]]})
    res = run_json(capsys, "volume", dup)
    assert res["degenerate"] is True and res["volume"][0] == 0
    exact = run_json(capsys, "volume", write(TILTED), "--backend", "exact")
    assert exact["volume"] is None and exact["volume_squared"][0] == "100/1"


def test_det(write, capsys):
    res = run_json(capsys, "det", write(PAIR))
    assert res["det"] == pytest.approx([-2, 2])
    assert res["phase"] == pytest.approx(3 * math.pi / 4)
    assert res["volume_scale"][0] == pytest.approx(8)
    ident = run_json(capsys, "det", write({"field": "complex", "dim": 2, "vectors": [[1, 0], [0, 1]]}))
    assert ident["phase"] == 0 and ident["volume_scale"][0] == 1
    sing = run_json(capsys, "det", write({"field": "real", "dim": 2, "vectors": [[1, 2], [2, 4]]}))
    assert sing["phase"] is None


def test_reality(write, capsys):
    res = run_json(capsys, "reality", write(PAIR))
    assert res["rho"] == pytest.approx(2 * math.sqrt(2) / 3, rel=1e-9)
    assert res["classification"] == "purely_real"
    assert res["mu"]["degrees"] == round(math.degrees(math.asin(2 * math.sqrt(2) / 3)), 4)
    res = run_json(capsys, "reality", write(ORTHO))
    assert res["rho"] == pytest.approx(1) and res["classification"] == "totally_real"
    res = run_json(capsys, "reality", write(SQUARE))
    assert res["rho"] == pytest.approx(0, abs=1e-7) and res["classification"] == "holomorphic"


def test_angles(write, capsys):
    a = write({"field": "real", "dim": 3, "vectors": [[1, 0, 0]]}, "a.json")
    b = write({"field": "real", "dim": 3, "vectors": [[0, 1, 0]]}, "b.json")
    res = run_json(capsys, "angles", a, b)
    assert res["principal"]["degrees"] == [90.0]
    assert res["disjointness"]["radians"] == pytest.approx(math.pi / 2)
    v = write(PAIR, "v.json")
    res = run_json(capsys, "angles", v, v, "--real-span")
    assert res["principal"]["radians"] == pytest.approx([0, 0], abs=1e-7)
    assert res["dims"] == [2, 2] and res["ambient_dim"] == 4


def test_pythagorean(write, capsys):
    res = run_json(capsys, "pythagorean", write({"field": "real", "dim": 3, "vectors": [[1, 0, 0], [0, 1, 1]]}))
    assert [p["value"] for p in res["parts"]] == pytest.approx([1, 1, 0])
    res = run_json(capsys, "pythagorean", write({"field": "complex", "dim": 2, "vectors": [[[1, 1], 2]]}))
    assert res["total"] == pytest.approx(6)
    assert [p["value"] for p in res["parts"]] == pytest.approx([2, 4])
    res = run_json(capsys, "pythagorean", write({"field": "real", "dim": 2, "vectors": [[3, 0], [1, 2]]}))
    assert len(res["parts"]) == 1 and res["parts"][0]["value"] == pytest.approx(res["total"])


@pytest.mark.parametrize(
    "doc",
    [
        "not json",
        {"field": "complex", "dim": 2, "vectors": []},
        {"field": "quaternion", "dim": 1, "vectors": [[1]]},
        {"field": "real", "dim": 2, "vectors": [[1, 2, 3]]},
        {"field": "real", "dim": 2, "vectors": [[[1, 0], 2]]},
        {"field": "real", "dim": 2, "vectors": [["x", 2]]},
    ],
)
def test_input_errors_exit_2(write, capsys, doc):
    code, _ = run(capsys, "gramian", write(doc))
    assert code == 2


def test_missing_file_exit_2(tmp_path, capsys):
    assert run(capsys, "volume", str(tmp_path / "missing.json"))[0] == 2


def test_semantic_errors_exit_3(write, capsys):
    real = write({"field": "real", "dim": 2, "vectors": [[1, 0]]}, "r.json")
    cplx = write(PAIR, "c.json")
    assert main(["volume", real, "--with-i"]) == 3
    assert main(["angles", real, cplx]) == 3
    assert main(["reality", real]) == 3
    assert main(["det", write({"field": "real", "dim": 2, "vectors": [[1, 0]]})]) == 3
    capsys.readouterr()


def test_verify_passes(capsys):
    code, out = run(capsys, "verify")
    assert code == 0
    assert "FAIL" not in out
    code, out = run(capsys, "verify", "--backend", "exact")
    assert code == 0


def test_verify_zero_tolerance_fails(capsys):
    code, out = run(capsys, "verify", "--tolerance", "0")
    assert code == 4
    assert "FAIL" in out


def test_verify_output_file(tmp_path, capsys):
    out = tmp_path / "verify.json"
    assert main(["verify", "--output", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert rows and all(r["status"] == "pass" for r in rows)
    capsys.readouterr()


def test_output_is_deterministic(write, capsys, tmp_path):
    path = write(PAIR)
    first = run(capsys, "reality", path)[1]
    second = run(capsys, "reality", path)[1]
    assert first == second
    target = tmp_path / "out.json"
    assert main(["reality", path, "--output", str(target)]) == 0
    assert target.read_text() == first
    keys = list(json.loads(first))
    assert keys == sorted(keys)


def test_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("BLADE_TOLERANCE", "1e-6")
    args = build_parser().parse_args(["verify"])
    assert _tol(args).rel_eps == 1e-6
    # an explicit flag wins over the environment
    args = build_parser().parse_args(["verify", "--tolerance", "1e-3"])
    assert _tol(args).rel_eps == 1e-3
    assert run(capsys, "verify")[0] == 0
