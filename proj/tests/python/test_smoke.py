import json
import os
import subprocess

import pytest

import cpalab


def test_catalog_lists_families():
    assert "ln" in cpalab.algebra_families()
    assert "ln-type1" in cpalab.cpa_families()
    assert "example9" in cpalab.example_products()


def test_l6_lower_central_dimensions():
    algebra = cpalab.build_algebra("ln", 6)
    assert algebra["dim"] == 6
    assert cpalab.lower_central_dims(json.dumps(algebra)) == [6, 4, 3, 2, 1, 0]


def test_example9_is_a_cpa():
    algebra, product = cpalab.example_product("example9")
    assert cpalab.check_cpa(algebra, product)["pass"]


def test_broken_product_reports_violations():
    algebra, product = cpalab.example_product("example9")
    product["entries"].append({"i": 1, "j": 1, "k": 1, "value": "1"})
    report = cpalab.check_cpa(algebra, product)
    assert not report["pass"]
    assert report["violations"]


def test_unknown_family_raises():
    with pytest.raises(cpalab.CpalabError):
        cpalab.build_algebra("nope", 3)


def test_run_matches_exit_codes():
    code, out, _ = cpalab.run(["--json", "algebra", "analyze", "--catalog", "ln", "--n", "5"])
    assert code == 0
    assert json.loads(out)["lower_central_dims"] == [5, 3, 2, 1, 0]
    assert cpalab.run(["frobnicate"])[0] == 64


def test_scenario_is_deterministic():
    assert "empty" in cpalab.scenario_names()
    first = cpalab.run_scenario("prop-3.10-L5")
    second = cpalab.run_scenario("prop-3.10-L5")
    assert first[0]
    assert first == second


@pytest.mark.skipif("CPALAB_CLI" not in os.environ, reason="command line binary not provided")
def test_cli_binary_solves_heisenberg(tmp_path):
    out = tmp_path / "n3.json"
    cli = os.environ["CPALAB_CLI"]
    solve = subprocess.run([cli, "cpa", "solve", "--catalog", "nn", "--n", "3", "--out", str(out)])
    assert solve.returncode == 0
    prove = subprocess.run([cli, "cpa", "prove", "--branches", str(out), "--left", "g", "--right", "derived"])
    assert prove.returncode == 0
