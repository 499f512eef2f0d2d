import json
from fractions import Fraction as F

import pytest

from slmod.cli import (
    ReportDocument,
    UsageError,
    emit,
    main,
    parse_config,
    parse_rational_vector,
)
from slmod.reports import PASS, CheckResult, Detail


def test_parse_rational_vector():
    assert parse_rational_vector("1/2,0,0,0") == (F(1, 2), F(0), F(0), F(0))
    assert parse_rational_vector("-3,2/7") == (F(-3), F(2, 7))
    with pytest.raises(UsageError):
        parse_rational_vector("1/2,x")


def test_parse_config_check():
    cfg = parse_config(
        ["check", "--id", "composition", "--N", "4", "--p", "2",
         "--beta", "1/2,0,0,0", "--window", "2"]
    )
    assert cfg.command == "check"
    assert cfg.check_id == "composition"
    assert cfg.n == 4 and cfg.p == 2 and cfg.d == 2
    assert cfg.beta == (F(1, 2), 0, 0, 0)


def test_parse_config_rejects_bad_beta_length():
    with pytest.raises(UsageError):
        parse_config(["check", "--id", "composition", "--N", "4", "--beta", "1/2,0,0"])


def test_parse_config_rejects_odd_n():
    with pytest.raises(UsageError):
        parse_config(["check", "--id", "composition", "--N", "3", "--beta", "0,0,0"])


def test_round_trip_through_the_echo():
    argv = ["dims", "--family", "min", "--N", "4", "--p", "2", "--beta", "1/2,0,0,0",
            "--window", "1", "--format", "json"]
    cfg = parse_config(argv)
    echo = cfg.echo()
    argv2 = ["dims", "--family", echo["family"], "--N", str(echo["N"]), "--p", str(echo["p"]),
             "--beta", echo["beta"], "--alpha", echo["alpha"],
             "--window", str(echo["window"]), "--format", echo["format"]]
    cfg2 = parse_config(argv2)
    assert cfg2.echo() == echo


def _small_doc():
    results = [
        CheckResult("demo", {"N": 2}, PASS,
                    [Detail((0, 0), 1, 1, PASS), Detail((0, 1), 2, 2, PASS)],
                    {"pass": 2, "fail": 0, "skipped": 0}),
    ]
    return ReportDocument("0.0-test", {"command": "check"}, results, "now").finalize()


def test_emit_json_schema():
    doc = _small_doc()
    payload = json.loads(emit(doc, "json").decode())
    assert set(payload) == {"version", "generated_at", "config", "results", "summary"}
    assert payload["summary"] == {"pass": 1, "fail": 0, "skipped": 0}
    result = payload["results"][0]
    assert set(result) == {"check_id", "params", "status", "counts", "details"}
    assert result["details"][0] == {"degree": [0, 0], "expected": 1, "actual": 1, "status": "PASS"}


def test_emit_csv_row_count():
    doc = _small_doc()
    lines = emit(doc, "csv").decode().strip().splitlines()
    assert len(lines) == 1 + sum(len(r.details) for r in doc.results)
    assert lines[0] == "check_id,degree,expected,actual,status"


def test_emit_empty_results():
    doc = ReportDocument("0.0-test", {}, [], "now").finalize()
    payload = json.loads(emit(doc, "json").decode())
    assert payload["summary"] == {"pass": 0, "fail": 0, "skipped": 0}


def test_main_exit_codes(capsys, tmp_path):
    assert main(["check", "--id", "contraction-iso", "--N", "4"]) == 0
    capsys.readouterr()
    assert main(["check", "--id", "contraction-iso", "--N", "3"]) == 2
    capsys.readouterr()
    out = tmp_path / "report.json"
    code = main(["frame", "--vector", "1,0,0,0", "--format", "json", "--output", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["results"][0]["check_id"] == "frame"


def test_main_closure_and_dims_and_homology(capsys):
    assert main(["dims", "--family", "min", "--N", "2", "--p", "1",
                 "--beta", "1/2,0", "--window", "1"]) == 0
    capsys.readouterr()
    assert main(["closure", "--N", "2", "--p", "1", "--beta", "1/2,0", "--window", "1",
                 "--seed-fiber", "0,0", "--seed-index", "0"]) == 0
    capsys.readouterr()
    assert main(["homology", "--complex", "fsq", "--N", "2", "--p", "1",
                 "--beta", "1/2,0", "--window", "1"]) == 0
    capsys.readouterr()


def test_failing_check_exits_one(monkeypatch, capsys):
    from slmod import cli as cli_module
    from slmod.reports import FAIL

    def fake_run_check(check_id, **params):
        return CheckResult(check_id, {}, FAIL, [Detail(None, 1, 2, FAIL)],
                           {"pass": 0, "fail": 1, "skipped": 0})

    monkeypatch.setattr(cli_module, "run_check", fake_run_check)
    assert main(["check", "--id", "contraction-iso", "--N", "4"]) == 1
    capsys.readouterr()
