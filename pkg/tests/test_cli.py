import csv
import io
import json
from fractions import Fraction

import pytest

from spinhiggs import cli
from spinhiggs.report import FAIL, FLAGGED, PASS, Check, Report, plain


def run(*argv):
    rep, code, text, _ = cli.run(list(argv))
    return rep, code, text


def test_report_rendering():
    rep = Report("demo", {"x": Fraction(1, 2)})
    rep.add(Check.compare("a", 1, 1))
    rep.add(Check.flag("b", Fraction(2, 3), Fraction(4, 3)))
    assert rep.passed and rep.exit_code == 0
    doc = json.loads(rep.to_json())
    assert doc["schema"] == 1
    assert doc["inputs"] == {"x": "1/2"}
    assert doc["counts"] == {PASS: 1, FAIL: 0, FLAGGED: 1}
    assert all("provenance" in c for c in doc["checks"])
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0][0] == "command" and len(rows) == 3
    assert "FLAG" in rep.to_text()
    rep.add(Check.compare("c", 1, 2))
    assert not rep.passed and rep.exit_code == 1
    with pytest.raises(ValueError):
        rep.render("xml")


def test_plain_conversion():
    assert plain(Fraction(4, 2)) == 2
    assert plain({1: (Fraction(1, 3),)}) == {"1": ["1/3"]}


def test_spin_table():
    rep, code, text = run("spin-table", "--genus", "2")
    assert code == 0
    doc = json.loads(text)
    assert len(doc["data"]["rows"]) == 16
    odd = sum(1 for r in doc["data"]["rows"] if r["parity"] == "odd")
    assert odd == 6


def test_spin_table_from_roots():
    rep, code, _ = run("spin-table", "--roots", "0,1,2,3,4,5,6,7")
    assert code == 0 and rep.inputs["genus"] == 3


def test_parity_check_example():
    rep, code, _ = run("parity-check", "--rank", "3", "--trials", "20", "--seed", "7")
    assert code == 0 and rep.passed


def test_seed_is_mandatory():
    _, code, text = run("parity-check", "--rank", "2")
    assert code == 2 and "--seed" in text
    _, code, _ = run("bv-check")
    assert code == 2


def test_usage_errors():
    assert run("nonsense")[1] == 2
    assert run("spin-table", "--roots", "0,1,2")[1] == 2
    assert run("spin-table", "--roots", "0,0,1,2,3,4")[1] == 2
    assert run("jumping-count", "--ring", "p3")[1] == 2
    assert run("suite", "--only", "bogus")[1] == 2
    assert run("pqr", "--points=3:24,3:-24,4:30")[1] == 2


def test_jumping_count_command():
    rep, code, text = run("jumping-count", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["data"]["count"] == 8
    flagged = [c for c in doc["checks"] if c["status"] == FLAGGED]
    assert len(flagged) == 1 and flagged[0]["expected"] == "-8/3*h^3"


def test_other_commands_pass():
    for argv in (
        ("spectral", "--rank", "2", "--trials", "3", "--seed", "1"),
        ("prym", "--a", "3", "--odd-index", "2"),
        ("cayley", "--rank", "4", "--trials", "2", "--seed", "3"),
        ("grr-verify",),
        ("koschorke",),
        ("bv-check", "--mu", "0,1,2,3,4,5"),
        ("gaw-check", "--seed", "2"),
        ("pqr", "--points=-13:2520,3:24,4:30"),
        ("pqr", "--points=-6:0,-1:0,1:0"),
    ):
        rep, code, text = run(*argv)
        assert code == 0, (argv, text)


def test_bad_sign_table_is_usage_error(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("1 2 ++--\n")
    assert run("gaw-check", "--seed", "1", "--sign-table", str(path))[1] == 2


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# demo\nseed = 7\nrank = 3\ntrials = 4\nformat = text\n")
    rep, code, text = run("parity-check", "--config", str(cfg), "--trials", "2")
    assert code == 0
    assert rep.inputs["trials"] == 2 and rep.inputs["rank"] == 3
    assert text.startswith("parity-check: PASS")
    bad = tmp_path / "bad.cfg"
    bad.write_text("seed 7\n")
    assert run("parity-check", "--config", str(bad))[1] == 2
    assert run("parity-check", "--config", str(tmp_path / "missing.cfg"))[1] == 2


def test_determinism():
    a = run("suite", "--only", "charclass,quadrics", "--seed", "3")[2]
    b = run("suite", "--only", "charclass,quadrics", "--seed", "3")[2]
    assert a == b
    c = run("suite", "--only", "11", "--seed", "4")[2]
    assert json.loads(c)["inputs"]["seed"] == 4


def test_suite_subset_and_csv():
    rep, code, text = run("suite", "--only", "charclass", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert {r[1] for r in rows[1:]} == {"7", "8", "9", "10"}
    statuses = {r[5] for r in rows[1:]}
    assert FLAGGED in statuses and FAIL not in statuses


def test_timing_is_opt_in():
    _, _, text = run("koschorke")
    assert "timing" not in json.loads(text)
    _, _, text = run("koschorke", "--timing")
    assert "wall_seconds" in json.loads(text)["timing"]


def test_main_writes_output(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["koschorke", "--output", str(out)]) == 0
    assert json.loads(out.read_text())["command"] == "koschorke"
    assert cli.main(["parity-check"]) == 2
    assert "--seed" in capsys.readouterr().err
