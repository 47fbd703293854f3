import pytest

from stlppc._util import ScenarioError
from stlppc.scenario import load_scenario, validate_document


def _doc():
    return load_scenario("path_four", validate=False).doc


def test_schema_shipped_documents():
    validate_document(_doc())
    validate_document(load_scenario("five_agents", validate=False).doc)


def test_schema_reports_every_error_with_its_path():
    doc = _doc()
    del doc["horizon"]
    doc["dt"] = -1
    doc["colour"] = "blue"
    doc["agents"][1]["initial_state"] = [1.0]
    doc["tasks"][0]["name"] = "reach task"

    with pytest.raises(ScenarioError) as e:
        validate_document(doc)

    errors = e.value.errors
    assert "$.horizon: missing" in errors
    assert "$.dt: must be positive" in errors
    assert "$.colour: unknown field" in errors
    assert "$.agents[1]: initial_state must have 2 entries" in errors
    assert "$.tasks[0].name: must be alphanumeric" in errors
    assert len(errors) == 5


def test_schema_agents_and_edges():
    doc = _doc()
    doc["agents"][3]["id"] = 7
    doc["communication_edges"].append([2, 2])
    with pytest.raises(ScenarioError) as e:
        validate_document(doc)
    assert "$.agents: agent ids must be 1, 2, ..., N" in e.value.errors
    assert "$.communication_edges[3]: self-loops are not allowed" in e.value.errors

    doc = _doc()
    doc["communication_edges"][0] = [1, "2"]
    with pytest.raises(ScenarioError) as e:
        validate_document(doc)
    assert e.value.errors == ["$.communication_edges[0]: must be a pair of agent ids"]

    doc = _doc()
    doc["agents"][3]["id"] = 3
    with pytest.raises(ScenarioError) as e:
        validate_document(doc)
    assert "$.agents: agent ids must not contain duplicates." in e.value.errors


def test_schema_predicates():
    doc = _doc()
    doc["predicates"]["home3"]["radius_sq"] = 0.0
    doc["predicates"]["home3"]["kind"] = "ball"
    with pytest.raises(ScenarioError) as e:
        validate_document(doc)
    errors = e.value.errors
    assert "$.predicates.home3.radius_sq: must be positive" in errors
    assert "$.predicates.home3.kind: must be norm2_le or linear" in errors

    doc = _doc()
    doc["predicates"]["close13"]["coeffs"]["9"] = 1.0
    doc["predicates"]["close13"]["offset"] = [0.0, 0.0, 0.0]
    doc["predicates"]["true"] = {"kind": "linear", "coeffs": {"1": [1.0, 0.0]}}
    doc["predicates"]["wide"] = {"kind": "linear", "coeffs": {"2": [1.0, 0.0, 1.0]}}
    del doc["predicates"]["home3"]["radius_sq"]
    with pytest.raises(ScenarioError) as e:
        validate_document(doc)
    errors = e.value.errors
    assert "$.predicates.close13.coeffs.9: unknown agent" in errors
    assert "$.predicates.close13.offset: must have 2 entries" in errors
    assert "$.predicates.home3.radius_sq: missing" in errors
    assert "$.predicates.true: predicate names must be identifiers other than 'true'" in errors
    assert "$.predicates.wide.coeffs.2: must be an array of 2 numbers" in errors


def test_schema_tasks():
    doc = _doc()
    doc["tasks"][0]["rho_max"] = "7"
    doc["tasks"][1]["agent"] = 0
    with pytest.raises(ScenarioError) as e:
        validate_document(doc)
    assert e.value.errors == [
        "$.tasks[0].rho_max: must be a number",
        "$.tasks[1].agent: must be at least 1",
    ]

    doc = _doc()
    doc["tasks"][1]["agent"] = 1
    doc["tasks"][1]["name"] = "reach"
    doc["tasks"].append(dict(doc["tasks"][0], name="far", agent=9))
    with pytest.raises(ScenarioError) as e:
        validate_document(doc)
    errors = e.value.errors
    assert "$.tasks[1].name: duplicate task name reach" in errors
    assert "$.tasks[1].agent: agent 1 already owns a task" in errors
    assert "$.tasks[2].agent: unknown agent 9" in errors


def test_schema_observer_disturbance_controller():
    doc = _doc()
    doc["observer"]["delta"]["v_inf"] = 2.0
    doc["disturbance"]["hold"] = 0
    doc["controller"] = {"mode": "pid", "signs": {"1": 2}}
    with pytest.raises(ScenarioError) as e:
        validate_document(doc)
    errors = e.value.errors
    assert "$.observer.delta: v_inf must not exceed v0" in errors
    assert "$.disturbance.hold: must be at least 1" in errors
    assert "$.controller.mode: must be transpose or sign" in errors
    assert "$.controller.signs.1: must be 1 or -1" in errors


def test_schema_not_an_object():
    with pytest.raises(ScenarioError) as e:
        validate_document([1, 2])
    assert e.value.errors == ["$: must be an object"]
