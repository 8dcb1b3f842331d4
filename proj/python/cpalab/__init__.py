"""Python access to the cpalab exact-arithmetic core."""

import json

from ._cpalab import (
    CpalabError,
    algebra_families,
    build_algebra_json,
    check_cpa_json,
    cpa_families,
    example_product_json,
    example_products,
    lower_central_dims,
    run,
    run_scenario_json,
    scenario_names,
)

__all__ = [
    "CpalabError",
    "algebra_families",
    "build_algebra",
    "check_cpa",
    "cpa_families",
    "example_product",
    "example_products",
    "lower_central_dims",
    "run",
    "run_scenario",
    "scenario_names",
]


def build_algebra(family, n=0):
    """Catalog algebra as a JSON-compatible dict."""
    return json.loads(build_algebra_json(family, n))


def example_product(name, n=0):
    """(algebra, product) documents for a named example."""
    algebra, product = example_product_json(name, n)
    return json.loads(algebra), json.loads(product)


def check_cpa(algebra, product):
    """Axiom report for a product on an algebra, both given as dicts."""
    return json.loads(check_cpa_json(json.dumps(algebra), json.dumps(product)))


def run_scenario(name, seed=0, max_splits=4096):
    """(pass, report) for a named scenario."""
    ok, report = run_scenario_json(name, seed, max_splits)
    return ok, json.loads(report)
