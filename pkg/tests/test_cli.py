import csv
import io
import json
import subprocess
import sys

import pytest

from agws.cli import EXIT_FALSIFIED, EXIT_OK, EXIT_PRECISION, EXIT_USAGE, emit_table, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fk_basis_map(capsys):
    code, out, _ = run(capsys, "fk", "--k", "4")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["data"]["basis"] == {"(2,0)": 1}
    assert rep["config"]["k"] == 4 and rep["config"]["subcommand"] == "fk"


def test_composite_prime_is_usage_error(capsys):
    code, _, err = run(capsys, "ss", "--p", "4")
    assert code == EXIT_USAGE and "prime" in err


def test_bad_arguments_exit_3():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--nope"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_USAGE


def test_verify_requires_a_target(capsys):
    code, _, _ = run(capsys, "verify")
    assert code == EXIT_USAGE


def test_env_prec_fallback(capsys, monkeypatch):
    monkeypatch.setenv("AGWS_DEFAULT_PREC", "7")
    code, out, _ = run(capsys, "fk", "--k", "2")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["config"]["prec"] == 7 and len(rep["data"]["coeffs"]) == 7
    monkeypatch.setenv("AGWS_DEFAULT_PREC", "seven")
    assert run(capsys, "fk", "--k", "2")[0] == EXIT_USAGE


def test_insufficient_precision_exit_2(capsys):
    code, _, err = run(capsys, "divisor", "--k", "18", "--prec", "2")
    assert code == EXIT_PRECISION


def test_failed_check_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "remark-pairs", "--k", "2", "--p", "17",
                       "--no-timings")
    assert code == EXIT_FALSIFIED
    assert json.loads(out)["records"][0]["verdict"] == "fail"


def test_records_have_required_fields(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "sslcong", "--k", "3")
    rec = json.loads(out)["records"][0]
    assert code == EXIT_OK
    assert {"theorem", "params", "verdict", "prec_certificate", "wall_time"} <= set(rec)
    assert rec["wall_time"] is not None


def test_sslcong_csv_single_row(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "sslcong", "--k", "5", "--format", "csv",
                       "--no-timings")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK and len(rows) == 1
    assert rows[0]["k"] == "5" and rows[0]["p"] == "11" and rows[0]["verdict"] == "pass"


def test_emit_table_empty_and_sorted():
    assert emit_table([]) == "theorem,k,p,t,n,params,verdict,prec_certificate,wall_time\n"
    recs = [
        {"theorem": "sslcong", "params": {"k": 9, "p": 19}, "verdict": "pass"},
        {"theorem": "conjecture", "params": {"k": 7}, "verdict": "fail"},
        {"theorem": "sslcong", "params": {"k": 2, "p": 5}, "verdict": "fail"},
        {"theorem": "conjecture", "params": {"k": 3, "note": 'a "b", c'}, "verdict": "pass"},
    ]
    rows = list(csv.reader(io.StringIO(emit_table(recs))))[1:]
    assert [(r[0], r[1]) for r in rows] == [("conjecture", "3"), ("conjecture", "7"),
                                           ("sslcong", "2"), ("sslcong", "9")]
    assert json.loads(rows[0][5]) == {"note": 'a "b", c'}


def test_conjecture_range_skips_exceptional(capsys):
    code, out, _ = run(capsys, "conjecture", "--k-range", "12..14", "--no-timings")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert [r["params"]["k"] for r in rep["records"]] == [12, 14]
    assert rep["data"]["skipped_vanishing_k"] == [13]


def test_other_subcommands(capsys, tmp_path):
    assert run(capsys, "chars", "--k", "2", "--prec", "5")[0] == EXIT_OK
    code, out, _ = run(capsys, "wronskian", "--k", "3", "--assert-eta", "--prec", "8")
    assert code == EXIT_OK and json.loads(out)["data"]["vanishing"] == "nonzero"
    code, out, _ = run(capsys, "wronskian", "--k", "13", "--prime", "--prec", "14")
    assert code == EXIT_OK and json.loads(out)["data"]["vanishing"] == "zero_certified"
    code, out, _ = run(capsys, "divisor", "--k", "18", "--mod", "37")
    assert json.loads(out)["data"]["mod"]["F_mod_p"] == [11, 5, 23, 1]
    code, out, _ = run(capsys, "ss", "--p", "37", "--method", "both")
    assert code == EXIT_OK
    code, out, _ = run(capsys, "search-congruences", "--kmax", "6", "--primes", "5..13")
    assert code == EXIT_OK and json.loads(out)["data"]["candidates"]
    dest = tmp_path / "r.txt"
    code, out, _ = run(capsys, "verify", "--identity", "theta-sum", "--t", "3", "--prec", "60",
                       "--format", "text", "--out", str(dest))
    assert code == EXIT_OK and out == "" and "PASS" in dest.read_text()
    assert run(capsys, "verify", "--identity", "k13", "--prec", "50")[0] == EXIT_OK


def test_deterministic_json(capsys):
    args = ("verify", "--theorem", "partidentity", "--t", "2", "--n", "100", "--no-timings")
    first = run(capsys, *args)[1]
    assert first == run(capsys, *args)[1]


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "agws.cli", "fk", "--k", "2", "--prec", "3",
                        "--format", "csv"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("theorem,")
