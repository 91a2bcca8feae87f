import json

import pytest

from affmon.cli import main, parse_spec_text
from affmon.errors import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_member(capsys):
    assert run(capsys, "member", "-c", "mixed-squares", "1", "1", "0")[1].strip() == "false"
    code, out, _ = run(capsys, "member", "-c", "mixed-squares", "2", "2", "0", "--format", "json")
    assert code == 0 and json.loads(out)["member"] is True


def test_seminormalize_json(capsys):
    code, out, _ = run(capsys, "seminormalize", "-c", "cubic-skew", "--format", "json", "--cross-check")
    data = json.loads(out)
    assert code == 0 and data["cross_checked"]
    assert sorted(map(tuple, data["generators"])) == [(0, 3), (1, 2), (2, 1), (3, 0)]


def test_eta_check(capsys):
    code, out, _ = run(capsys, "eta-check", "-c", "mixed-squares", "3", "3")
    assert code == 0 and out.startswith("restricts: true")
    code, out, _ = run(capsys, "eta-check", "-c", "veronese(2,2)", "2")
    assert out.startswith("restricts: false")


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "member", "-c", "nope", "1")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("rank: 2\n1 x\n")
    assert run(capsys, "classify", "-f", str(bad))[0] == 2
    assert run(capsys, "canonical2", "-c", "mixed-squares")[0] == 3
    assert run(capsys, "cphi-witness", "-c", "mixed-squares", "2", "--limit", "8")[0] == 4
    assert run(capsys, "monicize", "-c", "veronese(2,2)", "t1^2", "--progression", "2:2", "--limit", "10")[0] == 4
    assert run(capsys, "monicize", "-c", "veronese(2,2)", "t1 +", "--progression", "3:2")[0] == 2


def test_search_limit_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("AFFMON_SEARCH_LIMIT", "2")
    assert run(capsys, "cphi-witness", "-c", "veronese(2,2)", "2")[0] == 4
    monkeypatch.setenv("AFFMON_SEARCH_LIMIT", "10")
    assert run(capsys, "cphi-witness", "-c", "veronese(2,2)", "2")[0] == 0


def test_json_is_byte_stable(capsys):
    first = run(capsys, "classify", "-c", "skew(4)", "--format", "json", "--cphi", "2")[1]
    second = run(capsys, "classify", "-c", "skew(4)", "--format", "json", "--cphi", "2")[1]
    assert first == second
    data = json.loads(first)
    assert data["seminormal"] is False and data["phi_simplicial"] is True


def test_normalization_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "classify", "-c", "mixed-squares", "--format", "json")
    data = json.loads(out)
    assert data["normal"] is False
    spec = tmp_path / "norm.json"
    spec.write_text(json.dumps({"rank": 3, "generators": data["normalization"]}))
    _, out, _ = run(capsys, "classify", "-f", str(spec), "--format", "json")
    assert json.loads(out)["normal"] is True


def test_batch_directory(capsys, tmp_path):
    (tmp_path / "a.txt").write_text("rank: 2\nname: two squares\n2 0\n0 2\n")
    (tmp_path / "b.json").write_text('{"rank": 2, "generators": [[1, 0], [0, 1]]}')
    (tmp_path / "c.txt").write_text("rank: 2\n1 -1\n")
    code, out, err = run(capsys, "classify", "--dir", str(tmp_path), "--format", "json")
    assert code != 0
    assert "a.txt" in out and "b.json" in out
    assert "c.txt" in out + err
    assert run(capsys, "classify", "--dir", str(tmp_path / "missing"))[0] == 2


def test_spec_text_formats():
    M = parse_spec_text("# comment\nrank: 3\nname: demo\n2 0 0\n0 2 0   # inline\n0 0 2\n")
    assert M.ambient_rank == 3 and len(M.generators) == 3 and M.name == "demo"
    assert parse_spec_text('{"rank": 2, "generators": [[1, 1]]}').generators == ((1, 1),)
    with pytest.raises(ParseError):
        parse_spec_text("{bad json")
    with pytest.raises(ParseError):
        parse_spec_text('{"rank": 2}')


def test_text_reports(capsys):
    code, out, _ = run(capsys, "classify", "-c", "skew(2)")
    assert code == 0 and "seminormal: true" in out and "normal: false" in out
    assert run(capsys, "canonical2", "-c", "veronese(2,2)")[1].strip() == "(1, 2)"
    code, out, _ = run(capsys, "interior", "-c", "mixed-squares", "3")
    assert code == 0 and "(1,1,1)" in out.replace(" ", "")
    assert run(capsys, "hilbert", "-c", "skew(2)")[0] == 0
    assert run(capsys, "normalize", "-c", "skew(2)")[0] == 0
