import csv
import io
import json
import os
import subprocess
import sys

import mpmath
import pytest

from pdmahler.cli import main
from pdmahler.solver import known_solutions, verify_certificate


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dilog(capsys):
    code, out, _ = run(capsys, "dilog", "--bw", "i", "--prec", "30")
    assert code == 0
    value = mpmath.mpf(out.split("bloch_wigner:")[1].split()[0])
    assert abs(value - mpmath.catalan) < 1e-28
    code, out, _ = run(capsys, "dilog", "--bw", "1")
    assert code == 0 and mpmath.mpf(out.split("bloch_wigner:")[1].split()[0]) == 0
    code, out, _ = run(capsys, "dilog", "--clausen", "1", "3", "--format", "json")
    assert abs(mpmath.mpf(json.loads(out)["clausen2"]) - mpmath.clsin(2, 2 * mpmath.pi / 3)) < 1e-15


def test_char(capsys):
    code, out, _ = run(capsys, "char", "10.7", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["conductor"] == 5 and data["induced_by"] == "5.2" and data["order"] == 4
    assert data["parity"] == "odd"
    assert data["gamma"] == {"order": 4, "coords": ["1", "-2"]}


def test_mpd_and_spd(capsys):
    code, out, _ = run(capsys, "mpd", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert {t["character_label"]: t["coefficient"]["coords"] for t in data["terms"]} == {
        "3.2": ["-1/2"], "4.3": ["1"]}
    code, out, _ = run(capsys, "spd", "12", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["character_label"]: r["coefficient"] for r in rows} == {"3.2": "38", "4.3": "21"}


def test_decompose_json_round_trip(capsys):
    from pdmahler.decomposition import PrimitiveDecomposition, decompose_sd

    code, out, _ = run(capsys, "decompose", "sd", "20", "--format", "json")
    back = PrimitiveDecomposition.from_dict(json.loads(out))
    assert code == 0 and back.terms == decompose_sd(20).terms


def test_lvalue(capsys):
    code, out, _ = run(capsys, "lvalue", "3.2", "--prec", "20")
    assert code == 0 and "0.3230659472194505140" in out


def test_solve(capsys):
    code, out, _ = run(capsys, "solve", "--conductor", "4", "--dmax", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["exponents"] == [["P1", 1], ["P2", 2]] and data["multiple"] == "2/1"
    assert data["exact"] is True
    code, out, _ = run(capsys, "solve", "--character", "5.2", "--dmax", "8", "--format", "json")
    exps = dict(json.loads(out)["exponents"])
    assert exps == {"P1": 720, "P4": -240, "P5": -21, "P6": -28, "P7": -36, "P8": -45}
    code, out, _ = run(capsys, "solve", "--conductor", "11", "--dmax", "6")
    assert code == 0 and "solution: none" in out


def test_verify(capsys, tmp_path):
    cert = verify_certificate(known_solutions()[2], 30)
    good = tmp_path / "good.json"
    good.write_text(json.dumps(cert.to_dict()))
    code, out, _ = run(capsys, "verify", str(good))
    assert code == 0 and "exact: true" in out.lower()
    data = cert.to_dict()
    data["exponents"][0][1] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(bad), "--format", "json")
    report = json.loads(out)
    assert code == 2 and report["exact"] is False and mpmath.mpf(report["residual"]) > 1e-3
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(capsys, "verify", str(broken))[0] == 3


@pytest.mark.parametrize("number", [1, 3, 4, 5, 6])
def test_table_check(capsys, number):
    code, out, _ = run(capsys, "table", str(number), "--check")
    assert code == 0, out


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "1+x+y", "--format", "json")
    data = json.loads(out)
    assert code == 0 and abs(float(data["mahler_numeric"]) - 0.3230659472) < 1e-6
    code, out, _ = run(capsys, "oracle", "x*y", "--nodes", "64")
    assert code == 0 and float(out.split("mahler_numeric:")[1].split()[0]) == 0


@pytest.mark.slow
def test_oracle_ray_table(capsys):
    code, out, _ = run(capsys, "oracle", "--ray-table")
    assert code == 0, out


@pytest.mark.parametrize("argv", [
    ["char", "10.5"], ["char", "abc"], ["oracle", "1+*x"], ["dilog", "--li2", "2"],
    ["mpd", "3", "--nodes", "100"], ["mpd", "3", "--prec", "10"], ["nonsense"],
    ["solve", "--conductor", "12", "--dmax", "3"],
])
def test_parse_and_config_errors_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3 and err


def test_output_is_deterministic(capsys):
    first = run(capsys, "table", "4", "--format", "json")[1]
    second = run(capsys, "table", "4", "--format", "json")[1]
    assert first == second


def test_module_entry_point_and_env_precision():
    env = dict(os.environ, PDMAHLER_PREC="20")
    proc = subprocess.run([sys.executable, "-m", "pdmahler", "mpd", "1"], env=env,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "0.32306594721945051409" in proc.stdout and "0.323065947219450514093" not in proc.stdout
    env["PDMAHLER_PREC"] = "5"
    proc = subprocess.run([sys.executable, "-m", "pdmahler", "mpd", "1"], env=env,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 3
