import io
import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from superzhat.cli import run
from superzhat.qseries import from_json

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"
FIX = ROOT / "fixtures"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def schema(name):
    return json.loads(resources.files("superzhat").joinpath("schemas", name).read_text())


GOLDEN_CASES = {
    "chambers_sigma237.txt": ["chambers", "--graph", FIX / "sigma237.json"],
    "zhat_sigma237_q8.txt": ["zhat", "--graph", FIX / "sigma237.json", "--qmax", "8",
                             "--chamber", "plus"],
    "zhat_lens21_all.json": ["zhat", "--graph", FIX / "lens21.json", "--qmax", "4",
                             "--all-labels", "--chamber", "plus", "--format", "json"],
    "fk_torus_23.txt": ["fk-torus", "--s", "2", "--t", "3", "--qmax", "3", "--ydeg", "5",
                        "--decompose"],
    "surgery_trefoil_m1.txt": ["surgery", "--torus", "2,3", "--slope", "-1", "--qmax", "6"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_output(name):
    code, out, _ = call(*GOLDEN_CASES[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_fixtures_match_schemas():
    for name in ["sigma237.json", "trefoil.json", "unknot.json", "lens21.json"]:
        jsonschema.validate(json.loads((FIX / name).read_text()), schema("graph.schema.json"))
    jsonschema.validate(json.loads((FIX / "sigma237_seifert.json").read_text()),
                        schema("seifert.schema.json"))


def test_json_series_output_matches_schema():
    code, out, _ = call("fk", "--graph", FIX / "trefoil.json", "--qmax", "2", "--ydeg", "4",
                        "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "fk"
    for rec in doc["results"]:
        if "series" in rec:
            jsonschema.validate(rec["series"], schema("series.schema.json"))
            assert from_json(rec["series"]).coeff(2, -3, 1) == 1


def test_seifert_source_equals_graph_source():
    a = call("zhat", "--seifert", FIX / "sigma237_seifert.json", "--qmax", "6",
             "--chamber", "plus")
    b = call("zhat", "--graph", FIX / "sigma237.json", "--qmax", "6", "--chamber", "plus")
    assert a[0] == b[0] == 0
    assert a[1].splitlines()[2:] == b[1].splitlines()[2:]


def test_solid_torus_negative_slope():
    code, out, _ = call("fk", "--solid-torus", "-3/2", "--b", "0", "--c", "0", "--n", "0",
                        "--m", "0", "--qmax", "2", "--ydeg", "3", "--chamber", "plus")
    assert code == 0 and "q^0" in out


def test_unknot_framing_and_mirror():
    assert call("fk", "--unknot-framing", "-1", "--qmax", "1", "--ydeg", "2")[0] == 0
    code, out, _ = call("fk-torus", "--s", "2", "--t", "3", "--qmax", "1", "--ydeg", "4",
                        "--mirror")
    assert code == 0 and "q^-1 y^2 z^-3" in out


def test_closed_form_flag():
    a = call("fk-torus", "--s", "2", "--t", "5", "--qmax", "3", "--ydeg", "6", "--closed-form")
    b = call("fk-torus", "--s", "2", "--t", "5", "--qmax", "3", "--ydeg", "6")
    assert a[0] == b[0] == 0
    assert a[1].splitlines()[1:] == b[1].splitlines()[1:]


def test_surgery_verification():
    code, out, _ = call("surgery", "--graph", FIX / "unknot.json", "--slope", "-2", "--qmax", "4",
                        "--verify-against-plumbing")
    assert code == 0 and "ok" in out


def test_glue_verification():
    code, out, _ = call("glue", "--left", FIX / "unknot_m1.json", "--right",
                        FIX / "unknot_m2.json", "--qmax", "5", "--ydeg", "8",
                        "--verify-against-plumbing")
    assert code == 0 and "ok" in out


@pytest.mark.parametrize("argv", [
    ["zhat", "--qmax", "3"],
    ["zhat", "--graph", "/nonexistent.json"],
    ["zhat", "--graph", FIX / "sigma237.json", "--qmax", "0"],
    ["zhat", "--graph", FIX / "sigma237.json", "--threads", "0"],
    ["fk", "--graph", FIX / "trefoil.json", "--ydeg", "-1"],
    ["nonsense"],
])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_computation_errors_exit_1_with_json():
    code, _, err = call("fk-torus", "--s", "2", "--t", "4")
    assert code == 1
    assert json.loads(err)["error"] == "NotCoprime"
    code, _, err = call("zhat", "--graph", FIX / "trefoil.json")
    assert code == 1
    assert json.loads(err)["error"] == "NotClosed"


def test_radius_cap_flag():
    code, _, err = call("zhat", "--graph", FIX / "sigma237.json", "--qmax", "8",
                        "--radius-cap", "1")
    assert code == 1
    assert json.loads(err)["error"] == "RadiusCapExceeded"


def test_verify_subset():
    code, out, _ = call("verify", "--criteria", "4,9")
    assert code == 0
    assert "criterion 4" in out and "criterion 9" in out


def test_python_dash_m():
    proc = subprocess.run([sys.executable, "-m", "superzhat", "chambers", "--graph",
                           str(FIX / "sigma237.json")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "chambers_sigma237.txt").read_text()
