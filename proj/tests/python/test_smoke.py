import json
import math
import os
import subprocess
from fractions import Fraction

import pytest

wc = pytest.importorskip("weylchar")


def test_dim_adjoint():
    assert wc.Group("A2").dim([1, 1]) == "8"
    assert wc.Group("G2").dim([0, 1]) == "14"


def test_su2_closed_form():
    g = wc.Group("A1")
    for l2 in range(0, 12):
        theta = 0.7
        value = g.character([l2], f"{theta / 2}:{-theta / 2}")
        expected = math.sin((l2 / 2 + 0.5) * theta) / math.sin(theta / 2)
        assert abs(value - expected) < 1e-9 * (l2 + 1)


def test_singular_adjoint_matches_trace():
    g = wc.Group("A2")
    a = math.pi / 7
    value = g.character([1, 1], "pi/7:pi/7:-2pi/7")
    assert abs(value - (4 + 4 * math.cos(3 * a))) < 1e-9


def test_oracle_agrees():
    g = wc.Group("B2")
    for point in ["pi/3:pi/5", "pi/2:0", "0.3:0.7"]:
        assert abs(g.character([2, 1], point) - g.character_oracle([2, 1], point)) < 1e-8 * 35


def test_km_moments():
    assert Fraction(*map(int, wc.km_moment(4, 2))) == Fraction(1, 4)
    assert Fraction(*map(int, wc.km_moment(4, 4))) == Fraction(7, 64)
    assert wc.km_moment(4, 5)[0] == "0"
    assert abs(wc.delta_opt(4) - math.sqrt(3) / 2) < 1e-15


def test_capacity_error():
    with pytest.raises(wc.WeylcharError, match="capacity"):
        wc.Group("E8")


def test_run_roundtrip():
    code, doc = wc.run({"subcommand": "char", "group": "A1", "weight": ["2"], "point": ["pi"]})
    assert code == 0
    parsed = json.loads(doc)
    assert parsed["result"]["value"]["re"] == pytest.approx(-1.0, abs=1e-12)
    code2, doc2 = wc.run(parsed["config"], threads=3)
    assert code2 == 0 and doc2 == doc


def test_run_error_codes():
    assert wc.run({"subcommand": "weyl", "group": "E8"})[0] == 3
    assert wc.run({"subcommand": "dim", "group": "A2", "weight": ["1"]})[0] == 2
    assert wc.run({"subcommand": "certificate", "group": "D2", "point": ["pi/2:pi/2"]})[0] == 4


@pytest.mark.skipif("WEYLCHAR_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_binary_csv():
    out = subprocess.run(
        [os.environ["WEYLCHAR_CLI"], "spectral", "--group", "A1", "--l", "5", "--moments", "4", "--format", "csv"],
        capture_output=True, text=True, check=True).stdout
    lines = out.splitlines()
    assert lines[0] == "m,moment,km,|diff|"
    assert lines[1].startswith("0,1.0,1.0")
    assert any(line.startswith("delta_opt,") for line in lines)


def _schema_registry():
    jsonschema = pytest.importorskip("jsonschema")
    referencing = pytest.importorskip("referencing")
    root = os.path.join(os.path.dirname(__file__), "..", "..", "schemas")
    schemas = {}
    for name in ("run_config", "generator_set", "document"):
        with open(os.path.join(root, f"{name}.schema.json")) as fh:
            schemas[f"{name}.schema.json"] = json.load(fh)
    resources = [(k, referencing.Resource.from_contents(v)) for k, v in schemas.items()]
    resources += [(v["$id"], referencing.Resource.from_contents(v)) for v in schemas.values()]
    return jsonschema, referencing.Registry().with_resources(resources), schemas


def test_documents_match_schemas():
    jsonschema, registry, schemas = _schema_registry()
    validator = jsonschema.Draft202012Validator(schemas["document.schema.json"], registry=registry)
    for cfg in (
        {"subcommand": "spectral", "group": "A1", "l": "3", "moments": 4},
        {"subcommand": "sweep", "group": "A1xA1", "point": ["pi/2", "0"], "k_max": 5},
        {"subcommand": "weyl", "group": "E8"},
    ):
        _, doc = wc.run(cfg)
        validator.validate(json.loads(doc))
