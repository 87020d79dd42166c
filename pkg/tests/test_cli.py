import json

import pytest

from raolab import report as rpt
from raolab import reproduce as rp
from raolab.cli import main


def run(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    out = capsys.readouterr()
    return e.value.code, out.out, out.err


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_reproduce_pass_and_unknown(capsys):
    code, out, _ = run(["reproduce", "arith-genus-0"], capsys)
    assert code == 0 and json.loads(out)["ok"]
    code, _, err = run(["reproduce", "no-such-tag"], capsys)
    assert code == 2 and "unknown tag" in err


def test_reproduce_mismatch_exit_code(capsys, monkeypatch):
    real = rp.expected
    monkeypatch.setattr(rp, "expected", lambda tag: {**real(tag), "dims_t0_to_3": [0, 7, 11, 12]})
    code, _, err = run(["reproduce", "arith-genus-0"], capsys)
    assert code == 1 and "dims_t0_to_3" in err


def test_two_prime_reproduce(capsys):
    code, out, _ = run(["--second-prime", "65537", "reproduce", "cubic-intersection"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["prime_agreement"] and rep["second_prime"] == 65537


def test_budget_exit_code(capsys):
    code, _, err = run(["--budget", "5", "reproduce", "cubic-intersection"], capsys)
    assert code == 3 and "budget" in err


def test_analyze_general_lines(tmp_path, capsys):
    m = write(tmp_path, "six.json", {"recipe": "general-skew-lines", "params": {"r": 6},
                                     "seed": 7, "powers": [1, 2, 3]})
    code, out, _ = run(["analyze", m], capsys)
    rep = json.loads(out)
    assert code == 0
    assert [v["verdict"] for v in rep["runs"][0]["verdicts"]] == ["holds"] * 3


def test_analyze_unknown_recipe(tmp_path, capsys):
    code, _, err = run(["analyze", write(tmp_path, "bad.json", {"recipe": "nope"})], capsys)
    assert code == 2 and "unknown recipe" in err
    code, _, _ = run(["analyze", str(tmp_path / "missing.json")], capsys)
    assert code == 2


def test_analyze_two_primes_and_replay(tmp_path, capsys):
    m = write(tmp_path, "pair.json", {"recipe": "quadric-plus-general", "params": {"r": 8, "n": 2},
                                      "seed": 7, "primes": [32003, 65537]})
    payloads = []
    for sub in ("a", "b"):
        code, _, _ = run(["--out", str(tmp_path / sub), "analyze", m], capsys)
        assert code == 0
        payloads.append(json.loads((tmp_path / sub / "pair.json").read_text()))
    assert len(payloads[0]["runs"]) == 2 and payloads[0]["agreement"] is True
    assert rpt.without_timestamp(payloads[0]) == rpt.without_timestamp(payloads[1])


def test_markdown_output(tmp_path, capsys):
    code, _, _ = run(["--out", str(tmp_path), "--format", "md", "reproduce",
                      "lines29-sections"], capsys)
    text = (tmp_path / "lines29-sections.md").read_text()
    assert code == 0 and "(1, 3, 5, 7, 9, 11, 13, 9)" in text and "**PASS**" in text
    assert not list(tmp_path.glob(".*tmp"))


def test_audit_command(capsys):
    code, out, _ = run(["audit", "--max-r", "2", "--max-t", "4", "--no-points"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["checks"] == 2 * (5 + 3 * 5)
    code, _, _ = run(["audit", "--max-r", "7"], capsys)
    assert code == 2


def test_scan_command(tmp_path, capsys):
    spec = write(tmp_path, "s.json", {"kind": "flatfat", "s": {"range": [1, 3]}, "m": [3],
                                      "trials": 2})
    code, out, _ = run(["scan", spec], capsys)
    verdicts = [c["verdict"] for c in json.loads(out)["table"]]
    assert code == 0 and verdicts == ["not generic", "not generic", "generic"]
    code, _, _ = run(["scan", write(tmp_path, "bad.json", {"kind": "cubes"})], capsys)
    assert code == 2


def test_environment_overrides(monkeypatch, capsys):
    monkeypatch.setenv("RAOLAB_PRIME", "65537")
    monkeypatch.setenv("RAOLAB_SEED", "4")
    code, out, _ = run(["reproduce", "cubic-intersection"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["prime"] == 65537 and rep["seed"] == 4


def test_atomic_write_replaces(tmp_path):
    path = tmp_path / "r.json"
    rpt.atomic_write(path, "one")
    rpt.atomic_write(path, "two")
    assert path.read_text() == "two" and [p.name for p in tmp_path.iterdir()] == ["r.json"]


def test_goldens_cover_every_tag():
    g = rp.goldens()
    assert set(g) == set(rp.PIPELINES)
    for entry in g.values():
        assert entry["agreed_primes"] == [32003, 65537]
        assert set(entry) <= {"describes", "reference", "derived", "agreed_primes"}
