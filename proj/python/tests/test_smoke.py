from pathlib import Path

import crdtlab

DATA = Path(__file__).resolve().parents[2] / "data"


def test_analyze_tset():
    r = crdtlab.analyze({"builtin": "tset", "params": {"universe": ["A", "B"]}})
    assert r.ok
    assert r["equivalent_to"] == "ModCounter(2) × ModCounter(2)"
    assert r["witness"]["verified"]


def test_analyze_orset_is_not_undoable():
    r = crdtlab.analyze(DATA / "specs" / "orset_A1.json")
    assert r.exit_code == 1
    assert r["verdict"] == "not-undoable"


def test_simulate_scenarios():
    a = crdtlab.simulate(DATA / "scenarios" / "figure1a.orset.json")
    assert a.ok
    assert all(rep["contains"]["A"] for rep in a["replicas"])
    b = crdtlab.simulate(DATA / "scenarios" / "figure1a.pnset.json", seed=3)
    assert not any(rep["contains"]["A"] for rep in b["replicas"])
    assert b["seed"] == 3


def test_undo_and_equiv():
    spec = {"builtin": "modcounter", "params": {"n": 5, "ops": ["inc"]}}
    assert crdtlab.undo(spec, "inc", state="0")["undo"] == "inc,inc,inc,inc"
    six = {"builtin": "modcounter", "params": {"n": 6}}
    four = {"builtin": "modcounter", "params": {"n": 4}}
    pair = {"builtin": "tuple", "params": {"components": [
        {"builtin": "modcounter", "params": {"n": 2}},
        {"builtin": "modcounter", "params": {"n": 3}},
    ]}}
    assert crdtlab.equiv(six, pair)["verdict"] == "isomorphic"
    assert crdtlab.equiv(four, DATA / "specs" / "tuple_2_2.json").exit_code == 1


def test_check_axioms_and_validate():
    r = crdtlab.check_axioms(DATA / "specs" / "bounded_counter.json", fact_depth=2)
    assert r.exit_code == 1
    assert r["axioms"]["commutativity"]["reason"] == "pq-undefined"
    assert crdtlab.validate(DATA / "specs" / "malformed.json").exit_code == 2
    assert crdtlab.validate(DATA / "specs" / "missing.json").exit_code == 2
