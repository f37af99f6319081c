import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from oddpart import identities as I
from oddpart import partitions as P
from oddpart.cli import main, parse_qtable
from oddpart.series import parse_rational


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_verify_single_suite():
    code, out, _ = run("verify", "--suite", "window-bound", "--max-k", "10", "--max-n", "500")
    assert code == 0
    assert out.startswith("PASS  window-bound") and "k=0..10 n=1..500" in out


def test_verify_several_small():
    code, out, _ = run("verify", "--suite", "fine", "--suite", "fib-binomial", "--max-n", "20", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [d["suite"] for d in data] == ["fine", "fib-binomial"]
    assert all(d["status"] == "PASS" for d in data)


def test_verify_empty_range_is_usage_error():
    code, out, err = run("verify", "--max-n", "0")
    assert code == 2 and out == "" and "empty range" in err


def test_verify_unknown_suite():
    code, _, _ = run("verify", "--suite", "nope")
    assert code == 2


def test_verify_failure_exit_code(monkeypatch):
    def broken(k, n):
        return I.VerificationReport("broken", {"n": (1, n)}).fail(3, None, 5, 4)

    monkeypatch.setitem(I.SUITES, "broken", I.Suite("broken", broken, 10))
    code, out, _ = run("verify", "--suite", "all", "--max-n", "12")
    assert code == 1
    assert "FAIL  broken" in out and "first counterexample: n=3" in out


def test_qtable_csv_rows():
    code, out, _ = run("qtable", "--max-n", "6", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,q,F,Q1,Q2,Q3,Q4"
    assert lines[1] == "1,1,1,1,0,0,0"
    assert lines[6] == "6,4,8,2,1,0,1"


def test_qtable_json_row():
    code, out, _ = run("qtable", "--max-n", "6", "--format", "json")
    row = json.loads(out)[5]
    assert {k: row[k] for k in ("n", "q", "F", "Q")} == {"n": 6, "q": 4, "F": 8, "Q": {"1": 2, "2": 1, "4": 1}}
    assert row["provenance"] == "brute"


@pytest.mark.parametrize("fmt", ["csv", "json"])
@pytest.mark.parametrize("source", ["brute", "closed-form"])
def test_qtable_round_trip(fmt, source):
    code, out, _ = run("qtable", "--max-n", "40", "--max-k", "5", "--source", source, "--format", fmt)
    assert code == 0
    tab = I.tables(40)
    for row in parse_qtable(out, fmt):
        n = row["n"]
        assert row["q"] == tab.q[n] and row["F"] == tab.fib[n]
        hist = P.multinomial_histogram(n)
        assert row["Q"] == {k: v for k, v in hist.items() if k <= 5}


def test_qtable_guard():
    code, _, err = run("qtable", "--max-n", "150")
    assert code == 2 and "guard" in err
    code, out, _ = run("qtable", "--max-n", "150", "--source", "closed-form", "--format", "csv")
    assert code == 0 and out.strip().splitlines()[-1].startswith("150,")
    code, _, _ = run("qtable", "--max-n", "5", "--max-k", "6", "--source", "closed-form")
    assert code == 2


def test_qtable_text_marks_provenance():
    code, out, _ = run("qtable", "--max-n", "4")
    assert code == 0 and "1b" in out and "brute" in out


@pytest.mark.parametrize(
    "argv, expected",
    [
        (("--family", "Bk", "--k", "1"), "15/11"),
        (("--family", "Rk", "--k", "4"), "9364/6875"),
        (("--family", "corollary1", "--subset", "3"), "69983/69615"),
        (("--family", "corollary2", "--subset", "3"), "1347596/3828825"),
        (("--family", "th7", "--k", "6"), "88561442/78890625"),
        (("--family", "Ak", "--k", "3"), "69983/69615"),
    ],
)
def test_bound_values(argv, expected):
    code, out, _ = run("bound", *argv, "--x", "1/4")
    assert code == 0
    assert out.splitlines()[0] == expected


def test_bound_decimal_is_directed():
    _, out, _ = run("bound", "--family", "Bk", "--k", "1", "--x", "1/4", "--digits", "4")
    assert "1.3637 (rounded up)" in out
    _, out, _ = run("bound", "--family", "Ak", "--k", "1", "--x", "1/4", "--digits", "4")
    assert "1.0000 (rounded down)" in out


def test_bound_json_and_subset_forms():
    code, out, _ = run("bound", "--family", "corollary2", "--x", "1/4", "--subset", "<=9", "--format", "json")
    data = json.loads(out)
    assert code == 0 and parse_rational(data["constant"]) < Fraction(1347596, 3828825)
    code, out, _ = run("bound", "--family", "corollary1", "--x", "1/4", "--subset", "none")
    assert out.splitlines()[0] == "3841/3825"


@pytest.mark.parametrize(
    "argv, message",
    [
        (("bound", "--family", "Bk", "--k", "1", "--x", "3/4"), "x+x² >= 1"),
        (("bound", "--family", "Bk", "--k", "7", "--x", "1/4"), "Q_6"),
        (("bound", "--family", "Rk", "--x", "1/4"), "--k is required"),
        (("bound", "--family", "corollary1", "--x", "1/4", "--subset", "6"), "not a prime power"),
        (("enclose", "--x", "3/2"), "x >= 1"),
    ],
)
def test_domain_errors(argv, message):
    code, out, err = run(*argv)
    assert code == 2 and message in err


def test_bad_rational_flag():
    code, _, _ = run("bound", "--family", "Bk", "--k", "1", "--x", "0.25")
    assert code == 2


def test_enclose_outputs():
    code, out, _ = run("enclose", "--target", "product", "--x", "1/2", "--terms", "0")
    assert code == 0 and out.splitlines()[0] == "lo=1" and "inconclusive" in out
    code, out, _ = run("enclose", "--target", "odd-sum", "--x", "1/4", "--terms", "1", "--format", "json")
    assert json.loads(out)["lo"] == "4/15"
    code, out, _ = run("enclose", "--x", "1/4", "--terms", "30", "--format", "csv")
    row = out.strip().splitlines()[1].split(",")
    assert parse_rational(row[5]) < Fraction(1, 10**15)


def test_report_is_stable_and_flags_the_halving_mismatch():
    code1, out1, _ = run("report", "--x", "1/4")
    code2, out2, _ = run("report", "--x", "1/4")
    assert out1 == out2
    assert "FAIL  th6 k=6            203059/171875  expected 406118/171875" in out1
    assert out1.count("FAIL") == 1
    assert code1 == code2 == 1


def test_report_other_point():
    code, out, _ = run("report", "--x", "1/10", "--terms", "40")
    assert code == 0 and "FAIL" not in out and "----" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "oddpart", "bound", "--family", "Rk", "--k", "5", "--x", "1/4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines()[0] == "46754/34375"
