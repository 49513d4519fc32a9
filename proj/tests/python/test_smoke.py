import json
from pathlib import Path

import pytest

import daml

DATA = Path(__file__).resolve().parents[2] / "data"


def test_miners_verdicts():
    ws = daml.scenario_workspace("miners")
    assert ws.check("O{i}(U.gamma | true)")
    assert not ws.check("O{i}(U.alpha | true)")
    assert ws.expectation("i", "U.gamma", at="A9") == "9/1"
    assert ws.expectation("i", "U.alpha", at="A9") is None


def test_allergy_from_files():
    ws = daml.load(str(DATA / "allergy.json"), [str(DATA / "allergy_U.json"), str(DATA / "allergy_U2.json")])
    assert ws.check("O{b}(U.delta | O{a}(U2.beta | K{a} A))")
    assert not ws.check("O{b}(U.gamma | O{a}(U2.beta | K{a} A))")
    assert ws.expectation("a", "U.gamma;U2.alpha", at="w") == "50/1"
    trail = ws.explain("O{b}(U.delta | O{a}(U2.beta | K{a} A))")
    assert "K{a} A @ v@U.delta;U2.beta" in trail
    product = json.loads(ws.update_json(["U", "U2"]))
    assert len(product["worlds"]) == 10


def test_translate_and_print():
    ws = daml.scenario_workspace("miners")
    out = ws.translate("O{i}(U.gamma | A)")
    assert "O{" not in out and "e{i; U.gamma}" in out
    assert daml.parse_print("p -> q") == "(p -> q)"


def test_reports():
    report = daml.run_scenario("allergy")
    assert report["failed"] == 0
    axioms = daml.axiom_suite(trials=20, seed=3)
    assert axioms["trials"] == 20


def test_errors_are_raised():
    ws = daml.scenario_workspace("miners")
    with pytest.raises(daml.DamlError):
        ws.check("K{i} (")
    with pytest.raises(daml.DamlError):
        ws.check("A", at="nowhere")
    with pytest.raises(daml.DamlError):
        daml.run_scenario("unknown")
