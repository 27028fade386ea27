import io
import json

import pytest

from stringc import cli, verify


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_outputs(capsys):
    code, out, _ = run(["build", "L1", "--k", "6"], capsys)
    assert code == 0 and out.startswith("gens: r0 r1 r2\n") and "rel: (r0 r1)^6" in out
    code, out, _ = run(["build", "type1", "--s", "2", "--t", "2", "--n", "5", "--l1", "3"], capsys)
    assert code == 0 and out.count("rel:") == 9
    code, out, _ = run(["build", "G", "--m", "2"], capsys)
    assert code == 0 and out.count("rel:") == 10 and "(r2 r1 r0)^8" in out


def test_build_is_deterministic(capsys):
    _, a, _ = run(["build", "I", "--m", "2"], capsys)
    _, b, _ = run(["build", "I", "--m", "2"], capsys)
    assert a == b


@pytest.mark.parametrize("argv", [
    ["build", "L1"], ["build", "type1", "--s", "1", "--t", "2", "--n", "6"], ["build", "G", "--m", "0"],
])
def test_build_bad_params(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and "error" in err


def test_build_unknown_family():
    with pytest.raises(SystemExit) as exc:
        cli.main(["build", "Q"])
    assert exc.value.code == 2


def test_certify_round_trip(capsys, monkeypatch):
    _, text, _ = run(["build", "G", "--m", "1"], capsys)
    code, out, _ = run(["certify", "--json"], capsys, text, monkeypatch)
    rec = json.loads(out)
    assert code == 0
    assert list(rec) == ["order", "schlafli", "is_sggi", "string_ok", "intersection_ok",
                         "degenerate", "solvable", "derived_length", "elapsed_ms"]
    assert rec["order"] == 192 and rec["schlafli"] == [6, 6] and rec["solvable"]


def test_certify_file_and_degenerate(capsys, tmp_path):
    path = tmp_path / "l2.txt"
    _, text, _ = run(["build", "L2", "--k", "4"], capsys)
    path.write_text(text)
    code, out, _ = run(["certify", str(path), "--json"], capsys)
    rec = json.loads(out)
    assert code == 0 and rec["degenerate"] and rec["params"] == {"source": str(path)}
    code, out, _ = run(["certify", str(path)], capsys)
    assert code == 0 and "order: 16" in out


def test_certify_negative_parse_and_limit(capsys, monkeypatch):
    code, out, _ = run(["certify", "--json"], capsys, "gens: a\nrel: a^3\n", monkeypatch)
    assert code == 1 and json.loads(out)["is_sggi"] is False
    code, _, err = run(["certify"], capsys, "gens: a\nrel: b\n", monkeypatch)
    assert code == 2 and "unknown generator" in err
    _, u, _ = run(["build", "U"], capsys)
    code, _, _ = run(["certify", "--max-cosets", "1000"], capsys, u, monkeypatch)
    assert code == 3
    monkeypatch.setenv("STRINGC_MAX_COSETS", "1000")
    code, _, _ = run(["certify"], capsys, u, monkeypatch)
    assert code == 3


def test_certify_missing_file(capsys, tmp_path):
    code, _, err = run(["certify", str(tmp_path / "missing.txt")], capsys)
    assert code == 2


def test_verify_suite_csv_and_jsonl(capsys, tmp_path):
    path = tmp_path / "out.jsonl"
    code, out, _ = run(["verify", "prop23", "--jsonl", str(path)], capsys)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 11 and all(l.endswith(",true") for l in lines[1:])
    recs = [json.loads(l) for l in path.read_text().splitlines()]
    assert [r["params"] for r in recs[:2]] == [{"b": 2, "variant": 1}, {"b": 2, "variant": 2}]


def test_verify_subgroups(capsys):
    code, out, _ = run(["verify", "subgroups"], capsys)
    assert code == 0 and len(out.splitlines()) == 4


def test_verify_grid_flags(capsys):
    code, out, _ = run(["verify", "thm4", "--s", "2", "--t", "2", "--l1", "3", "--l2", "1", "--n", "6"], capsys)
    assert code == 0 and len(out.splitlines()) == 2
    code, out, _ = run(["verify", "thm5", "--family", "H", "--m", "1"], capsys)
    assert code == 0 and len(out.splitlines()) == 2
    code, _, err = run(["verify", "cor52", "--cor-n", "5"], capsys)
    assert code == 2


def test_verify_limit_exit(capsys):
    code, _, _ = run(["verify", "thm5", "--family", "G", "--m", "1", "--max-cosets", "50"], capsys)
    assert code == 3


def test_verify_failure_exit(capsys, monkeypatch):
    failing = verify.ClaimReport("prop21", {}, {"order": 1}, "test", {"order": 2}, False, 0.0)
    monkeypatch.setattr(verify, "run_suite", lambda *a, **k: [failing])
    code, out, _ = run(["verify", "prop21"], capsys)
    assert code == 4 and out.splitlines()[1].endswith(",false")


def test_verify_explore(capsys, tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("gens: a b c\nrel: a^2\nrel: b^2\nrel: c^2\nrel: (a b)^5\nrel: (b c)^3\nrel: (a c)^2\n")
    code, out, _ = run(["verify", "--explore", str(path)], capsys)
    assert code == 0
    assert out.splitlines()[1].startswith("explore,")
    assert '""order"":120' in out


def test_verify_requires_suite_or_explore(capsys):
    code, _, _ = run(["verify"], capsys)
    assert code == 2
