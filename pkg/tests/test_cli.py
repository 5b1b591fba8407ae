import csv
import io
import json
import math
import subprocess
import sys
import time
from pathlib import Path

import jsonschema
import pytest

from fraclap import cli
from fraclap.verify import CheckResult

SCHEMA = json.loads((Path(cli.__file__).parent / "schemas" / "output.schema.json").read_text())
DOC_SCHEMA = Path(__file__).resolve().parents[1] / "docs" / "output.schema.json"


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.reader(io.StringIO("\n".join(body))))


def column(text, name):
    table = rows(text)
    j = table[0].index(name)
    return [float(r[j]) for r in table[1:]]


def test_elements_alpha_one(capsys):
    code, out, _ = run(["elements", "--alpha", "1", "--pmax", "2"], capsys)
    assert code == 0
    want = [4 / math.pi, -4 / (3 * math.pi), -4 / (15 * math.pi)]
    for name in ("closed_form", "recursion", "quadrature"):
        assert column(out, name) == pytest.approx(want, rel=1e-13)


def test_elements_integer(capsys):
    code, out, _ = run(["elements", "--alpha", "2", "--pmax", "3", "--no-quadrature"], capsys)
    assert code == 0
    assert column(out, "closed_form") == [2, -1, 0, 0]
    assert rows(out)[1][0] == "0"


def test_elements_forbidden_alpha(capsys):
    code, _, err = run(["elements", "--alpha", "0"], capsys)
    assert code == 2
    assert "alpha > 0" in err


def test_matrix_spectral_oracle(capsys):
    code, out, _ = run(["matrix", "--alpha", "1", "--N", "4"], capsys)
    assert code == 0
    assert column(out, "value") == pytest.approx([1.2071067811865475, -0.5, -0.20710678118654752, -0.5], abs=1e-14)
    assert "# method: periodized" in out and "# tol: 9.9999999999999998e-13" in out


def test_matrix_laplacian(capsys):
    code, out, _ = run(["matrix", "--alpha", "2", "--N", "5", "--laplacian"], capsys)
    assert code == 0
    assert [r[1] for r in rows(out)[1:]] == ["-2", "1", "0", "0", "1"]


def test_matrix_both(capsys):
    code, out, _ = run(["matrix", "--alpha", "1.5", "--N", "16", "--method", "both"], capsys)
    assert code == 0
    assert max(column(out, "discrepancy")) <= 1e-10


def test_matrix_full(capsys):
    code, out, _ = run(["matrix", "--alpha", "2", "--N", "3", "--full"], capsys)
    assert code == 0
    assert rows(out)[0] == ["row", "c0", "c1", "c2"]
    assert [r[1:] for r in rows(out)[1:]] == [["2", "-1", "-1"], ["-1", "2", "-1"], ["-1", "-1", "2"]]


def test_spectrum(capsys):
    code, out, _ = run(["spectrum", "--alpha", "1", "--N", "4"], capsys)
    assert code == 0
    assert column(out, "omega2") == pytest.approx([0, math.sqrt(2), 2, math.sqrt(2)], abs=1e-15)


@pytest.mark.parametrize("method", ["zeta", "lattice_sum", "regularized"])
def test_kernel_periodic(capsys, method):
    code, out, _ = run(["kernel", "--alpha", "1", "--L", "1", "--x", "0.5", "--periodic", "--method", method], capsys)
    assert code == 0
    assert column(out, "value")[0] == pytest.approx(math.pi, abs=1e-10)


def test_kernel_infinite(capsys):
    code, out, _ = run(["kernel", "--alpha", "1", "--x", "1", "2"], capsys)
    assert code == 0
    assert column(out, "value") == pytest.approx([1 / math.pi, 1 / (4 * math.pi)], rel=1e-15)


def test_kernel_singular(capsys):
    code, _, err = run(["kernel", "--alpha", "1.5", "--x", "0"], capsys)
    assert code == 2
    assert "singular" in err


def test_diffuse(capsys):
    code, out, _ = run(["diffuse", "--alpha", "1", "--N", "16", "--t", "0.5", "2"], capsys)
    assert code == 0
    header = rows(out)[0]
    assert header == ["p", "u0", "t=0.5", "t=2"]
    for name in header[1:]:
        assert math.fsum(column(out, name)) == pytest.approx(1.0, abs=1e-12)


def test_nd_element(capsys):
    code, out, _ = run(["nd-element", "--alpha", "2", "--p", "1", "0"], capsys)
    assert code == 0
    assert column(out, "value")[0] == pytest.approx(-1.0, abs=1e-8)


def test_numeric_failure_exit_code(capsys):
    code, _, err = run(["matrix", "--alpha", "1.5", "--N", "8", "--tol", "1e-300"], capsys)
    assert code == 3
    assert "non-convergence" in err


def test_usage_errors(capsys):
    assert run(["matrix", "--alpha", "1.5", "--N", "2"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["matrix", "--alpha", "1.5"])
    assert exc.value.code == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    import fraclap.verify

    monkeypatch.setattr(fraclap.verify, "run_checks", lambda quick: [CheckResult("broken", False, 1.0, 0.5)])
    code, out, err = run(["verify"], capsys)
    assert code == 4
    assert "FAIL  broken" in err


def test_verify_quick_subprocess():
    t0 = time.perf_counter()
    res = subprocess.run([sys.executable, "-m", "fraclap.cli", "verify", "--quick"],
                         capture_output=True, text=True, timeout=120)
    assert res.returncode == 0, res.stderr
    assert time.perf_counter() - t0 <= 60
    assert "FAIL" not in res.stderr
    assert res.stderr.count("PASS") == len(rows(res.stdout)) - 1


COMMANDS = [
    ["elements", "--alpha", "1.5", "--pmax", "4"],
    ["matrix", "--alpha", "1.5", "--N", "8", "--method", "both"],
    ["spectrum", "--alpha", "0.5", "--N", "6"],
    ["kernel", "--alpha", "1.5", "--x", "0.1", "0.3", "--L", "1"],
    ["diffuse", "--alpha", "0.5", "--N", "8", "--t", "1", "--init", "random", "--seed", "3"],
    ["nd-element", "--alpha", "1.5", "--p", "1", "1"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_json_schema(capsys, argv):
    code, out, _ = run(argv + ["--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["command"] == argv[0]
    assert all(len(r) == len(doc["columns"]) for r in doc["rows"])


def test_json_matches_csv(capsys):
    argv = ["matrix", "--alpha", "1.5", "--N", "8"]
    _, text, _ = run(argv, capsys)
    _, js, _ = run(argv + ["--format", "json"], capsys)
    vals = [r[1] for r in json.loads(js)["rows"]]
    assert vals == column(text, "value")


def test_schema_is_documented():
    assert json.loads(DOC_SCHEMA.read_text()) == SCHEMA


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_byte_determinism(capsys, argv):
    a = run(argv, capsys)[1]
    b = run(argv, capsys)[1]
    assert a == b
    assert rows(a)[0]  # header row present


def test_seventeen_digits(capsys):
    _, out, _ = run(["kernel", "--alpha", "1", "--L", "1", "--x", "0.5"], capsys)
    val = rows(out)[1][1]
    assert float(val) == pytest.approx(math.pi, abs=1e-12)
    assert len(val.replace("-", "").replace(".", "")) == 17


def test_output_file(tmp_path, capsys):
    target = tmp_path / "m.csv"
    code, out, _ = run(["matrix", "--alpha", "2", "--N", "4", "-o", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text().startswith("# command: matrix")


def test_output_dir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
    assert run(["spectrum", "--alpha", "1", "--N", "4", "--format", "json"], capsys)[0] == 0
    jsonschema.validate(json.loads((tmp_path / "spectrum.json").read_text()), SCHEMA)
    assert run(["spectrum", "--alpha", "1", "--N", "4", "-o", "sub/s.csv"], capsys)[0] == 0
    assert (tmp_path / "sub" / "s.csv").exists()
    code, out, _ = run(["spectrum", "--alpha", "1", "--N", "4", "-o", "-"], capsys)
    assert code == 0 and out.startswith("# command: spectrum")
