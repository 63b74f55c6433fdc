import io
import json
import pathlib
import subprocess
import sys

import jsonschema
import pytest

from overlab.core import FrobeniusSymbol
from overlab.cli import EXIT_FAIL, EXIT_LIMIT, EXIT_OK, EXIT_USAGE, run

SCHEMAS = pathlib.Path(__file__).resolve().parent.parent / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def call(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_enumerate_overpartitions():
    code, out, _ = call(["enumerate", "--object", "overpartition", "--n", "3"])
    objs = json.loads(out)
    assert code == EXIT_OK and len(objs) == 8
    for o in objs:
        jsonschema.validate(o, schema("overpartition"))


def test_enumerate_paths_and_symbols():
    code, out, _ = call(["enumerate", "--object", "path", "--k", "3", "--i", "2", "--n", "5"])
    for p in json.loads(out):
        jsonschema.validate(p, schema("path"))
    code, out, _ = call(["enumerate", "--object", "frobenius", "--n", "4"])
    objs = json.loads(out)
    assert len(objs) == 14
    for f in objs:
        jsonschema.validate(f, schema("frobenius"))


def test_hook_map_forward():
    code, out, _ = call(["biject", "--map", "frobenius", "--text", "7 5 4 2 0 / 6 4' 4 3 1'"])
    assert code == EXIT_OK
    parts = json.loads(out)["parts"]
    assert [(p["v"], p["o"]) for p in parts] == [
        (8, True), (7, False), (5, False), (5, False), (5, True), (4, False), (3, False), (3, True), (1, False)]


@pytest.mark.parametrize("name,text,extra", [
    ("frobenius", "7 4 2 0 / 3' 3 1 0'", []),
    ("durfee", "7 5 4 2 0 / 6 4' 4 3 1'", []),
    ("path", "14 11 6 4 2 / 7 6' 5' 4 3'", ["--k", "5", "--i", "3"]),
])
def test_round_trip_is_byte_exact(name, text, extra, monkeypatch):
    canonical = json.dumps(FrobeniusSymbol.parse(text).to_json(), sort_keys=True, separators=(",", ":")) + "\n"
    direction = ("inverse", "forward") if name == "path" else ("forward", "inverse")
    _, mid, _ = call(["biject", "--map", name, "--direction", direction[0]] + extra, canonical, monkeypatch)
    _, back, _ = call(["biject", "--map", name, "--direction", direction[1]] + extra, mid, monkeypatch)
    assert back == canonical


def test_stats():
    code, out, _ = call(["stats", "--object", "frobenius", "--text", "7 4 2 0 / 3' 3 1 0'"])
    assert json.loads(out)["ranks"] == [2, 0, 1, 0]


def test_series_output():
    code, out, _ = call(["series", "--name", "e", "--k", "3", "--i", "2", "--qmax", "10"])
    rows = json.loads(out)
    jsonschema.validate(rows, schema("series"))
    assert len(rows) == 11


def test_verify_exit_codes():
    code, out, _ = call(["verify", "--identity", "main", "--k", "3", "--i", "2", "--nmax", "14"])
    assert code == EXIT_OK
    jsonschema.validate(json.loads(out), schema("report"))
    code, out, _ = call(["verify", "--k", "3", "--i", "2", "--nmax", "8", "--rank-interval", "1", "3"])
    assert code == EXIT_FAIL and json.loads(out)["first_discrepancy"]["cell"] == [1, 0, 1]


def test_usage_errors():
    assert call(["nonsense"])[0] == EXIT_USAGE
    assert call(["verify", "--k", "3"])[0] == EXIT_USAGE
    assert call(["biject", "--map", "burge", "--direction", "inverse", "--text", "1"])[0] == EXIT_USAGE
    code, _, err = call(["stats", "--object", "overpartition", "--text", "3' 3'"])
    assert code == EXIT_USAGE and err


def test_resource_guard(monkeypatch):
    monkeypatch.setenv("OVERLAB_MAX_N", "4")
    code, out, err = call(["enumerate", "--object", "overpartition", "--n", "9"])
    assert code == EXIT_LIMIT and out == "" and "OVERLAB_MAX_N" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "overlab", "verify", "--identity", "moves", "--trials", "50",
                           "--seed", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["params"] == {"seed": 1, "trials": 50}
