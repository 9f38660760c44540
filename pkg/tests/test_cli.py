import json
import subprocess
import sys

import pytest

from conezeta.cli import main, parse_policy, render
from conezeta.errors import InvalidInput


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sl2_topological(capsys):
    code, out, _ = run(capsys, "algebra", "builtin:sl2", "--kind", "topological")
    assert code == 0
    assert out.strip() == "(3s - 1)/(2(2s - 1)(s - 1)^2 s)"


def test_fil4_refused(capsys):
    code, _, err = run(capsys, "algebra", "builtin:fil4")
    assert code == 2
    report = json.loads(err)
    assert report["error"]["reason"]
    assert "face" in report["error"]["witness"]


def test_igusa_series(capsys):
    code, out, _ = run(capsys, "igusa", "builtin:x_poly", "--kind", "padic", "--q", "3", "--series", "4")
    assert code == 0
    series = out.strip().splitlines()[-1].split()
    # (1 − 1/3)/(1 − T/3)
    assert series == ["2/3", "2/9", "2/27", "2/81", "2/243"]


def test_strict_refuses_likely(capsys):
    code, _, err = run(capsys, "algebra", "builtin:sl2", "--strict")
    assert code == 2
    assert "LikelyYes" in err


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "algebra", str(tmp_path / "missing.json"))[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 1, "polys": [], "extra": 1}')
    assert run(capsys, "igusa", str(bad))[0] == 1
    bad.write_text("[1, 2")
    assert run(capsys, "igusa", str(bad))[0] == 1
    assert run(capsys, "frobnicate", "x")[0] == 1
    assert run(capsys, "algebra", "builtin:sl2", "--kind", "padic")[0] == 1
    assert run(capsys, "oracle", "builtin:heisenberg")[0] == 1


def test_policy_parsing():
    assert parse_policy("3,5:2") == {"primes": (3, 5), "max_degree": 2}
    with pytest.raises(InvalidInput):
        parse_policy("3,x:2")
    with pytest.raises(InvalidInput):
        parse_policy("3:0")


def test_nondeg_check(capsys):
    code, out, _ = run(capsys, "nondeg-check", "builtin:square_of_sum")
    assert code == 2 and out.strip() == "WitnessNo"
    code, out, _ = run(capsys, "nondeg-check", "builtin:u3")
    assert code == 0 and out.strip() == "CertifiedYes"


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "builtin:heisenberg", "--q", "3", "--series", "3")
    assert code == 0 and out.split() == ["1", "4", "49", "157"]
    code, out, _ = run(capsys, "oracle", "builtin:sum_of_squares", "--q", "5", "--series", "1")
    assert out.split() == ["1", "9"]


def test_json_round_trip_and_determinism(capsys, tmp_path):
    target = tmp_path / "r.json"
    main(["algebra", "builtin:u3", "--format", "json", "--out", str(target)])
    first = target.read_text()
    main(["algebra", "builtin:u3", "--format", "json", "--out", str(target), "--threads", "2"])
    assert target.read_text() == first
    payload = json.loads(first)
    assert render(payload) == "(4s - 1)/(2(3s - 1)(2s - 1)^2 s)"
    assert "timing_seconds" not in payload["report"]
    code, out, _ = run(capsys, "algebra", "builtin:u3", "--format", "latex")
    assert out.strip() == render(payload, "latex")


def test_interpolated_output(capsys):
    code, out, _ = run(capsys, "algebra", "builtin:heisenberg", "--interpolate-q", "3,5,7,11,13,17,19,23,29")
    assert code == 0 and "q" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "conezeta", "algebra", "builtin:heisenberg"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0
    assert r.stdout.strip() == "3/(2(2s - 3)(s - 1) s)"
