import csv
import io
import json
import math
from importlib import resources

import jsonschema
import pytest

from spinmono import cli

SCHEMA = json.loads(resources.files("spinmono").joinpath("schemas/report.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--k", "1", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "j_min", "j_list"]
    assert [r[0] for r in rows[1:]] == ["0", "1/2", "-1/2", "1", "-1"]
    assert [r[1] for r in rows[1:]] == ["1/2", "0", "0", "1/2", "1/2"]
    assert rows[2][2].split() == ["0", "1", "2", "3", "4"]


def test_enumerate_json_validates(capsys):
    code, out, _ = run(capsys, "enumerate", "--k", "3/2")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert code == 0 and report["pass"] and len(report["results"]) == 7


@pytest.mark.parametrize("argv", [
    ["enumerate", "--k", "0.3"],
    ["enumerate", "--k", "1/3"],
    ["enumerate", "--k", "0"],
    ["verify", "--suite", "bogus"],
    ["verify", "--grid-theta", "4"],
    ["verify", "--tol", "0"],
    ["radial", "--k", "1", "--j", "0"],
    ["radial", "--k", "1/2", "--j", "1/2"],
    ["radial", "--k", "1/2", "--j", "0", "--eps", "0.6", "--mass", "0"],
    ["radial", "--k", "1/2", "--j", "1", "--m-num", "3"],
    ["bogus"],
])
def test_config_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_parse_error_names_position(capsys):
    _, _, err = run(capsys, "enumerate", "--k", "1.5")
    assert "position 1" in err and "--k" in err


def test_radial_below_jmin_names_jmin(capsys):
    _, _, err = run(capsys, "radial", "--k", "3/2", "--j", "1/2")
    assert "j_min = 1" in err


def test_radial_closed_form(capsys):
    code, out, _ = run(capsys, "radial", "--k", "1/2", "--j", "0", "--mass", "1", "--eps", "0.6", "--n", "10",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    for row in rows:
        assert abs(float(row["main_re"]) - math.exp(-0.8 * float(row["r"]))) < 1e-15
        assert float(row["residual"]) < 1e-9
    # 17 significant digits
    assert rows[1]["r"] == f"{0.5:.17g}" and len(rows[1]["main_re"].replace(".", "").lstrip("0")) >= 16


def test_radial_degenerate_and_free(capsys):
    code, out, _ = run(capsys, "radial", "--k", "1", "--j", "1/2", "--eps", "1", "--mass", "1", "--n", "4")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert code == 0 and report["params"]["degenerate"] and report["params"]["kind"] == "degenerate"
    code, out, _ = run(capsys, "radial", "--k", "0", "--j", "1/2", "--n", "20")
    report = json.loads(out)
    assert code == 0 and report["params"]["system"] == "free" and report["params"]["nu"] == 1.0


def test_verify_jmin(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "jmin", "--k", "1/2", "--grid-theta", "16", "--grid-phi", "16")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert code == 0
    check = next(r for r in report["results"] if r["check"] == "sigma_annihilation k=1/2")
    assert check["pass"] and check["residual"] < 1e-8


def test_verify_deterministic(capsys, tmp_path):
    args = ["verify", "--suite", "algebra", "--seed", "7", "--grid-theta", "16", "--grid-phi", "16"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(args + ["--out", str(a)]) == 0
    assert cli.main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_gauge_table(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "gauge", "--grid-theta", "16", "--grid-phi", "16")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    rows = [r for r in report["results"] if r["check"].startswith("eigen_invariance")]
    assert code == 0 and rows and all({"m", "K", "N"} <= set(r) for r in rows)


def test_verify_failure_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "algebra", "--k", "1/2", "--tol", "1e-30",
                       "--grid-theta", "8", "--grid-phi", "8", "--format", "csv")
    assert code == 1
    assert out.splitlines()[0] == "check,residual,tol,pass"


def test_console_script():
    import shutil
    import subprocess

    exe = shutil.which("spinmono")
    if exe is None:
        pytest.skip("console script not installed")
    res = subprocess.run([exe, "enumerate", "--k", "1/2", "--format", "csv"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("k,j_min,j_list")
