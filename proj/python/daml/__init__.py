"""Python access to the daml model checker."""

import json

from ._daml import (
    DamlError,
    Workspace,
    axiom_suite_json,
    parse_print,
    run_scenario_json,
    scenario_workspace,
)


def run_scenario(name):
    return json.loads(run_scenario_json(name))


def axiom_suite(trials=100, seed=1, frame="S5"):
    return json.loads(axiom_suite_json(trials, seed, frame))


def load(model, actions=()):
    return Workspace(model, list(actions))


__all__ = [
    "DamlError",
    "Workspace",
    "axiom_suite",
    "load",
    "parse_print",
    "run_scenario",
    "scenario_workspace",
]
