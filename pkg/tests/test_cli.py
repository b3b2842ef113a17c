"""End-to-end command line tests, run in-process through main()."""

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from superuce.cli import (
    algebra_to_json,
    main,
    parse_algebra,
    rational_from_json,
    rational_to_json,
)

QT2_FILE = {
    "kind": "assoc",
    "basis": [{"name": "1", "parity": "even"}, {"name": "t", "parity": "even"}],
    "products": [
        {"left": "1", "right": "1", "result": [{"basis": "1", "num": "1", "den": "1"}]},
        {"left": "1", "right": "t", "result": [{"basis": "t", "num": "1", "den": "1"}]},
        {"left": "t", "right": "1", "result": [{"basis": "t", "num": "1", "den": "1"}]},
    ],
    "unit": [{"basis": "1", "num": "1", "den": "1"}],
}

SL2_FILE = {
    "kind": "lie",
    "basis": [{"name": "e", "parity": "even"},
              {"name": "h", "parity": "even"},
              {"name": "f", "parity": "even"}],
    "products": [
        {"left": "h", "right": "e", "result": [{"basis": "e", "num": "2", "den": "1"}]},
        {"left": "e", "right": "h", "result": [{"basis": "e", "num": "-2", "den": "1"}]},
        {"left": "h", "right": "f", "result": [{"basis": "f", "num": "-2", "den": "1"}]},
        {"left": "f", "right": "h", "result": [{"basis": "f", "num": "2", "den": "1"}]},
        {"left": "e", "right": "f", "result": [{"basis": "h", "num": "1", "den": "1"}]},
        {"left": "f", "right": "e", "result": [{"basis": "h", "num": "-1", "den": "1"}]},
    ],
}


def run_json(argv, capsys):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, json.loads(out.out)


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


# ------------------------------------------------------------------- rationals

def test_rational_round_trip():
    for x in (Fraction(0), Fraction(2), Fraction(-7, 3), Fraction(10**40, 9)):
        assert rational_from_json(rational_to_json(x)) == x


# --------------------------------------------------------------- algebra files

def test_parse_truncated_polynomials(tmp_path):
    alg = parse_algebra(QT2_FILE)
    assert alg.dim == 2
    assert alg.is_supercommutative()


def test_parse_round_trip():
    alg = parse_algebra(QT2_FILE)
    again = parse_algebra(algebra_to_json(alg))
    assert again.table == alg.table and again.unit == alg.unit


def test_duplicate_basis_names_rejected(tmp_path, capsys):
    data = dict(QT2_FILE, basis=[{"name": "t", "parity": "even"},
                                 {"name": "t", "parity": "even"}])
    path = write(tmp_path, "dup.json", data)
    assert main(["validate", "--file", path]) == 2
    assert "duplicate" in capsys.readouterr().err


def test_broken_jacobi_reported(tmp_path, capsys):
    data = json.loads(json.dumps(SL2_FILE))
    # corrupt [h,e] = 2e into [h,e] = e (skew kept, Jacobi broken)
    for entry in data["products"]:
        if {entry["left"], entry["right"]} == {"h", "e"}:
            entry["result"][0]["num"] = "1" if entry["left"] == "h" else "-1"
    path = write(tmp_path, "broken.json", data)
    code, report = run_json(["validate", "--file", path], capsys)
    assert code == 1
    laws = {v["law"] for v in report["results"]["violations"]}
    assert "jacobi" in laws
    # a computing subcommand refuses the same file outright
    assert main(["h2", "--file", path]) == 1
    assert "invalid algebra" in capsys.readouterr().err


def test_lie_file_through_uce(tmp_path, capsys):
    path = write(tmp_path, "sl2.json", SL2_FILE)
    code, report = run_json(["uce", "--file", path, "--table"], capsys)
    assert code == 0
    res = report["results"]
    assert res["dim_input"] == 3 and res["dim_uce"] == 3
    assert res["perfect"] and res["centrally_closed"]
    # structure constants are reported over the extension's own basis
    assert res["table"]
    assert all(row["left"] in res["basis"] and row["right"] in res["basis"]
               for row in res["table"])


# ------------------------------------------------------------ frozen examples

def test_h2_of_sl5(capsys):
    code, report = run_json(
        ["h2", "--family", "sl", "--m", "5", "--n", "0", "--coeff", "Q"], capsys)
    assert code == 0
    assert report["results"]["dim_h2"] == 0


def test_hc1_of_square_zero_plane(capsys):
    code, report = run_json(["hc1", "--coeff", "Q[x,y]/(x,y)^2"], capsys)
    assert code == 0
    assert report["results"]["dim_hc1"] == 1


@pytest.mark.slow
def test_limit_check_truncated_chain(capsys):
    code, report = run_json(
        ["limit-check", "--family", "sl", "--coeff", "Q[t]/(t^2)",
         "--chain", "5..7"], capsys)
    assert code == 0
    res = report["results"]
    assert res["phi_bijective"] is True
    assert res["h2_dims"] == [0, 0, 0]
    assert res["ok"] is True


def test_limit_check_small_chain_and_system_file(tmp_path, capsys):
    code, r1 = run_json(["limit-check", "--chain", "sl:3..4:Q"], capsys)
    assert code == 0 and r1["results"]["ok"]
    data = {"kind": "sl", "coeff": "Q",
            "members": [[3, 0], [4, 0]], "relation": [[0, 1]]}
    path = write(tmp_path, "system.json", data)
    code, r2 = run_json(["limit-check", "--system", path], capsys)
    assert code == 0
    assert r2["results"] == r1["results"]


# ------------------------------------------------------------------- verdicts

def test_perfect_exit_codes(capsys):
    assert main(["perfect", "--family", "sl", "--m", "3"]) == 0
    capsys.readouterr()
    code, report = run_json(["perfect", "--family", "gl", "--m", "2"], capsys)
    assert code == 1
    assert report["results"]["perfect"] is False


def test_centre_of_gl2(capsys):
    code, report = run_json(["centre", "--family", "gl", "--m", "2"], capsys)
    assert code == 0
    assert report["results"]["dim_centre"] == 1


def test_h2_warns_on_non_perfect(capsys):
    code, report = run_json(["h2", "--family", "gl", "--m", "2"], capsys)
    assert code == 0
    assert "warning" in report["results"]


def test_family_checks(capsys):
    code, report = run_json(
        ["cocycle-check", "--family", "sl", "--m", "3", "--coeff", "Grassmann(1)"],
        capsys)
    assert code == 0 and report["results"]["valid"]
    code, report = run_json(
        ["steinberg-check", "--family", "sl", "--m", "2", "--n", "1"], capsys)
    assert code == 0 and report["results"]["ok"]
    code, report = run_json(
        ["h-iso-check", "--family", "sl", "--m", "5", "--coeff", "Q[t]/(t^2)"],
        capsys)
    assert code == 0
    res = report["results"]
    assert res["bijective"] and res["dim_h2"] == res["dim_hc1"] == 0


def test_construct_feeds_back_into_validate(tmp_path, capsys):
    code, report = run_json(
        ["construct", "--family", "osp", "--m", "1", "--n", "2"], capsys)
    assert code == 0
    assert report["results"]["dim"] == 5
    path = write(tmp_path, "osp.json", report["results"]["algebra"])
    code, report = run_json(["validate", "--file", path], capsys)
    assert code == 0 and report["results"]["valid"]


# ---------------------------------------------------------------- usage errors

def test_usage_errors(tmp_path, capsys):
    bad = [
        ["h2", "--family", "sl"],                                  # missing --m
        ["h2", "--family", "sl", "--m", "3", "--coeff", "nope"],   # unknown coeff
        ["h2"],                                                    # no input at all
        ["hc1"],                                                   # neither flag
        ["hc1", "--coeff", "Q", "--file", "x.json"],               # both flags
        ["h2", "--file", "/nonexistent.json"],                     # unreadable
        ["steinberg-check", "--family", "gl", "--m", "3"],         # sl only
        ["steinberg-check", "--family", "sl", "--m", "1", "--n", "1"],
        ["h-iso-check", "--family", "sl", "--m", "2"],             # m + n < 5
        ["construct", "--family", "osp", "--m", "1", "--n", "1"],  # odd osp block
        ["limit-check"],                                           # no system
        ["limit-check", "--chain", "5..7"],                        # span, no family
        ["limit-check", "--chain", "sl:7..5:Q"],                   # decreasing
        ["limit-check", "--chain", "garbage"],
    ]
    for argv in bad:
        assert main(argv) == 2, argv
        err = capsys.readouterr().err
        assert err.startswith("error:"), (argv, err)


def test_both_file_and_family_rejected(tmp_path, capsys):
    path = write(tmp_path, "a.json", QT2_FILE)
    assert main(["validate", "--file", path, "--family", "sl", "--m", "3"]) == 2


def test_hc1_rejects_lie_file(tmp_path, capsys):
    path = write(tmp_path, "sl2.json", SL2_FILE)
    assert main(["hc1", "--file", path]) == 2


def test_malformed_json_rejected(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert main(["validate", "--file", str(path)]) == 2


def test_zero_denominator_rejected(tmp_path, capsys):
    data = json.loads(json.dumps(QT2_FILE))
    data["products"][0]["result"][0]["den"] = "0"
    path = write(tmp_path, "zero.json", data)
    assert main(["validate", "--file", str(path)]) == 2


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["h2", "--family", "sl", "--m", "3", "--frobs", "4"])
    assert exc.value.code == 2


# ----------------------------------------------------------------- environment

def test_uce_threads_recorded(monkeypatch, capsys):
    monkeypatch.setenv("UCE_THREADS", "3")
    code, report = run_json(["centre", "--family", "sl", "--m", "2"], capsys)
    assert code == 0 and report["uce_threads"] == 3


def test_uce_threads_rejected(monkeypatch, capsys):
    for value in ("0", "-2", "many"):
        monkeypatch.setenv("UCE_THREADS", value)
        assert main(["centre", "--family", "sl", "--m", "2"]) == 2


# -------------------------------------------------------------------- reports

def test_report_key_order(capsys):
    _, report = run_json(["centre", "--family", "sl", "--m", "2"], capsys)
    assert list(report.keys()) == [
        "command", "version", "arguments", "uce_threads",
        "input_digest", "results", "timing",
    ]


def test_report_deterministic(capsys):
    argv = ["h2", "--family", "sl", "--m", "3", "--n", "2", "--coeff", "Grassmann(1)"]
    _, first = run_json(argv, capsys)
    _, second = run_json(argv, capsys)
    first.pop("timing")
    second.pop("timing")
    assert json.dumps(first, indent=2) == json.dumps(second, indent=2)


def test_argument_echo_keeps_zero_values(capsys):
    _, report = run_json(["h2", "--family", "sl", "--m", "3", "--n", "0"], capsys)
    assert report["arguments"]["n"] == 0


def test_text_format(capsys):
    code = main(["h2", "--family", "sl", "--m", "3", "--format", "text"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "command: h2"
    assert "dim_h2: 0" in lines
    assert lines[-1].startswith("elapsed:")


def test_console_script():
    proc = subprocess.run(
        ["superuce", "h2", "--family", "sl", "--m", "3", "--n", "0"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["dim_h2"] == 0
