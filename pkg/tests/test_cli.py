import json

import pytest

from chinburg.cli import main
from chinburg.fixtures import get
from chinburg.records import dumps_record, loads_record
from chinburg.search import CandidateRecord


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [loads_record(line) for line in out.splitlines() if line.startswith("{")]


def test_dvalue(capsys):
    code, out, _ = run(capsys, "dvalue", "--f", "3", "--digits", "20")
    assert code == 0 and out.strip().startswith("0.3230659472194505")


def test_dvalue_hint(capsys):
    code, _, err = run(capsys, "dvalue", "--f", "5", "--digits", "20")
    assert code == 1 and "f=20" in err


def test_check_exit_codes(capsys):
    e = get("strong-43")
    code, out, _ = run(capsys, "check", "--a", e.a.dumps(), "--b", e.b.dumps())
    kind, payload = records(out)[0]
    assert code == 0 and kind == "permissibility_report" and payload["conductors"] == [43]
    e = get("counterexample-6")
    code, out, _ = run(capsys, "check", "--a", e.a.dumps(), "--b", e.b.dumps())
    assert code == 1 and records(out)[0][1]["conditions"]["6"]["status"] == "fail"


def test_check_linear_form(capsys):
    e = get("known-11")
    # a list starting with "-" must be attached with "=" so argparse does not read it as a flag
    code, out, _ = run(capsys, "check", "--p", e.first.dumps(), f"--q={e.second.dumps()}")
    assert code == 0 and records(out)[0][1]["conductors"] == [11]


@pytest.mark.parametrize("argv", [
    ["check", "--a", "1,x", "--b", "1"],
    ["check", "--a", "1,0,1"],
    ["check", "--a", "1,0,1", "--b", "1,0,1", "--p", "1"],
    ["measure", "--a", "1,0,1", "--b", "1,0,1", "--digits", "5"],
    ["measure", "--a", "1,0,1", "--b", "1,0,1", "--digits", "301"],
    ["search", "--ell", "2"],
    ["nonsense"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_measure_and_relate(capsys):
    e = get("example-3-35")
    code, out, _ = run(capsys, "measure", "--a", e.a.dumps(), "--b", e.b.dumps(), "--digits", "30")
    kind, payload = records(out)[0]
    assert code == 0 and kind == "measure" and payload["value"].startswith("1.")
    code, out, _ = run(capsys, "relate", "--a", e.a.dumps(), "--b", e.b.dumps(),
                       "--conductors", "35,3", "--digits", "40")
    kind, payload = records(out)[0]
    assert code == 0 and payload["rationals"] == ["1/10", "7/5"]
    assert payload["confirmed_at"] == 60


def test_relate_zero_measure(capsys):
    e = get("zero-measure")
    code, out, _ = run(capsys, "relate", "--a", e.a.dumps(), "--b", e.b.dumps(),
                       "--conductors", "3", "--digits", "40")
    assert code == 0 and records(out)[0][1]["rationals"] == ["0"]


def test_relate_rejects_bad_conductor(capsys):
    assert run(capsys, "relate", "--p", "1", "--q", "1,1", "--conductors", "5")[0] == 2


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "checker")
    assert code == 0 and "ALL PASS" in out
    code, out, _ = run(capsys, "verify", "--suite", "smyth", "--digits", "30")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--suite", "thm41", "--digits", "30")
    assert code == 0 and "FAIL" not in out.replace("FAILED", "")


def test_search_jsonl_roundtrip(capsys, tmp_path):
    out_file = tmp_path / "out.jsonl"
    code, _, err = run(capsys, "search", "--ell", "2", "--bound", "5", "--out", str(out_file),
                       "--compare-table4")
    assert code == 0 and "published strong=10 weak=3" in err
    lines = out_file.read_text().splitlines()
    assert lines
    for line in lines:
        kind, payload = loads_record(line)
        assert kind == "candidate"
        assert CandidateRecord.from_payload(payload).to_json() == line


def test_search_resume_cli(capsys, tmp_path):
    out_file, ckpt = tmp_path / "o.jsonl", tmp_path / "c.json"
    code, _, _ = run(capsys, "search", "--ell", "2", "--bound", "5", "--out", str(out_file),
                     "--checkpoint", str(ckpt))
    first = out_file.read_text()
    code, _, err = run(capsys, "search", "--ell", "2", "--bound", "5", "--out", str(out_file),
                       "--checkpoint", str(ckpt), "--resume")
    assert code == 0 and out_file.read_text() == first
    assert run(capsys, "search", "--ell", "2", "--bound", "5", "--resume")[0] == 2


def test_threads_env_default(capsys, monkeypatch):
    monkeypatch.setenv("CHINBURG_THREADS", "2")
    code, out, _ = run(capsys, "search", "--ell", "2", "--bound", "3")
    assert code == 0 and records(out)


def test_fixtures_export_and_list(capsys, tmp_path):
    target = tmp_path / "fx.json"
    assert run(capsys, "fixtures", "export", "--out", str(target))[0] == 0
    data = json.loads(target.read_text())
    assert len(data) >= 30
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0 and "strong-43" in out


def test_record_format():
    line = dumps_record("x", {"b": 1, "a": [1, 2]})
    assert line == '{"payload":{"a":[1,2],"b":1},"type":"x","version":1}'
    assert loads_record(line) == ("x", {"a": [1, 2], "b": 1})
    with pytest.raises(ValueError):
        loads_record('{"type":"x","version":2,"payload":{}}')
