import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_smells
from smellprone.detection import ThresholdConfig, detect_smells, evaluate_strategy
from smellprone.errors import ContractViolation, IncompleteVectorError, SchemaError
from smellprone.metrics.model import CLASS, CLASS_METRICS, METHOD, METHOD_METRICS, EntityMetricVector


def vec(kind, name, **values):
    names = sorted(CLASS_METRICS if kind == CLASS else METHOD_METRICS)
    full = {m: values.get(m, 0) for m in names}
    return EntityMetricVector("r1", kind, name, "p", full)


GOD = dict(LOCNAMM=200, WMCNAMM=30, NOMNAMM=20, TCC=0.20, ATFD=8)


def test_god_class_all_five_predicates():
    hits = evaluate_strategy("GodClass", vec(CLASS, "G", **GOD), ThresholdConfig())
    assert hits is not None
    assert {h.metric for h in hits} == set(GOD)


def test_zero_vector_matches_nothing():
    t = ThresholdConfig()
    assert evaluate_strategy("DataClass", vec(CLASS, "Z"), t) is None
    assert evaluate_strategy("GodClass", vec(CLASS, "Z"), t) is None
    for kind in ("BrainMethod", "ShotgunSurgery", "DispersedCoupling", "MessageChains"):
        assert evaluate_strategy(kind, vec(METHOD, "Z#m()"), t) is None


def test_brain_method_second_disjunct():
    v = vec(METHOD, "C#m()", LOC=10, CYCLO=1, MAXNESTING=1, NOLV=6, ATLD=5)
    hits = evaluate_strategy("BrainMethod", v, ThresholdConfig())
    assert [h.metric for h in hits] == ["NOLV", "ATLD"]


def test_first_disjunct_wins_when_both_hold():
    v = vec(METHOD, "C#m()", LOC=40, CYCLO=9, MAXNESTING=6, NOLV=6, ATLD=5)
    hits = evaluate_strategy("BrainMethod", v, ThresholdConfig())
    assert [h.metric for h in hits] == ["LOC", "CYCLO", "MAXNESTING"]


def test_boundaries_are_inclusive():
    v = vec(CLASS, "D", WMCNAMM=14, WOC=0.33, NOAM=4, NOPA=3)
    assert evaluate_strategy("DataClass", v, ThresholdConfig()) is not None


def test_missing_metric_names_it():
    values = {m: 0 for m in sorted(CLASS_METRICS)}
    del values["TCC"]
    v = EntityMetricVector("r1", CLASS, "X", "p", values)
    with pytest.raises(IncompleteVectorError) as exc:
        detect_smells([v])
    assert exc.value.metric == "TCC"
    assert "X" in str(exc.value)


def test_wrong_granularity_rejected():
    with pytest.raises(ContractViolation):
        evaluate_strategy("GodClass", vec(METHOD, "C#m()"), ThresholdConfig())


def test_single_god_class_release():
    found = detect_smells([vec(CLASS, "G", **GOD)])
    assert [(s.kind, s.entity) for s in found] == [("GodClass", "G")]


def test_nothing_detected():
    assert detect_smells([vec(CLASS, "A"), vec(METHOD, "A#m()")]) == []


def test_empty_release_rejected():
    with pytest.raises(ContractViolation):
        detect_smells([])


def test_planted_release_of_ten():
    release = [
        vec(CLASS, "G", **GOD),
        vec(CLASS, "D", WMCNAMM=3, WOC=0.1, NOAM=6, NOPA=4, TCC=0.9),
        vec(CLASS, "Plain", LOCNAMM=50, TCC=0.8, WOC=0.9),
        vec(METHOD, "A#brain()", LOC=60, CYCLO=12, MAXNESTING=7),
        vec(METHOD, "A#shotgun()", CC=9, CM=11, FANOUT=4),
        vec(METHOD, "A#dispersed()", CINT=10, CDISP=0.8),
        vec(METHOD, "A#chain()", MaMCL=4),
        vec(METHOD, "A#ok1()", LOC=5, CYCLO=1),
        vec(METHOD, "A#ok2()", CINT=3, CDISP=0.9),
        vec(METHOD, "A#ok3()", NMCS=2, MeMCL=5),
    ]
    found = detect_smells(release)
    got = {(s.entity, s.kind) for s in found}
    assert got == brute_force_smells(release)
    assert sorted(k for _, k in got) == sorted(
        ["GodClass", "DataClass", "BrainMethod", "ShotgunSurgery", "DispersedCoupling",
         "MessageChains"])


def test_threshold_overrides(tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"GodClass.ATFD": {"op": ">=", "value": 100}}))
    t = ThresholdConfig.load(path)
    assert detect_smells([vec(CLASS, "G", **GOD)], t) == []
    path.write_text(json.dumps({"GodClass.NOPE": {"value": 1}}))
    with pytest.raises(SchemaError):
        ThresholdConfig.load(path)
    with pytest.raises(ContractViolation):
        ThresholdConfig().with_overrides({"GodClass.TCC": {"value": 1.5}})


int_metric = st.integers(min_value=0, max_value=400)
unit_metric = st.floats(min_value=0, max_value=1, allow_nan=False)


@st.composite
def class_vectors(draw):
    values = {m: draw(unit_metric if m in ("TCC", "WOC") else int_metric) for m in sorted(CLASS_METRICS)}
    return EntityMetricVector("r1", CLASS, "C", "p", values)


@st.composite
def method_vectors(draw):
    values = {m: draw(unit_metric if m == "CDISP" else st.integers(0, 60)) for m in sorted(METHOD_METRICS)}
    return EntityMetricVector("r1", METHOD, "C#m()", "p", values)


@settings(max_examples=300, deadline=None)
@given(st.one_of(class_vectors(), method_vectors()))
def test_matches_brute_force(v):
    assert {(s.entity, s.kind) for s in detect_smells([v])} == brute_force_smells([v])


@settings(max_examples=200, deadline=None)
@given(class_vectors(), st.sampled_from(["LOCNAMM", "WMCNAMM", "NOMNAMM", "ATFD"]),
       st.integers(1, 500))
def test_raising_ge_metric_keeps_god_class(v, metric, bump):
    before = {s.kind for s in detect_smells([v])}
    values = dict(v.values)
    values[metric] += bump
    after = {s.kind for s in detect_smells([EntityMetricVector("r1", CLASS, "C", "p", values)])}
    if "GodClass" in before:
        assert "GodClass" in after
