import json
import math

import pytest

from bihumbert.identities import (
    CORE_IDS,
    CSV_COLUMNS,
    KNOWN_QUARANTINE,
    REGISTRY,
    SWEEP_POLICY,
    Point,
    check_identity,
    get_entry,
    quarantine_list,
    report_from_dict,
    resolve_ids,
    sweep,
)
from bihumbert.identities.harness import residual
from bihumbert.qcore import TruncationPolicy

DISPLAY_NUMBERS = range(1, 60)
BASE_POINT = Point(1.0, 1.0, 1.5, 1.3, 0.5, 0.4, 0.2 + 0j, 0.1 + 0j)


def test_every_display_is_registered():
    majors = {int(k.split(".")[1].rstrip("abcd")) for k in REGISTRY}
    assert majors == set(DISPLAY_NUMBERS)
    assert len(REGISTRY) == 88


def test_registry_order_is_numeric():
    keys = list(REGISTRY)
    assert keys.index("2.9") < keys.index("2.10") < keys.index("2.22a") < keys.index("2.23a")


def test_reference_text():
    assert get_entry("2.33").reference == "Thm 2.10 connection relation"
    assert all(e.reference for e in REGISTRY.values())


def test_alias_and_unknown():
    assert get_entry("2.13-eq").id == "2.13"
    with pytest.raises(KeyError):
        get_entry("9.9")
    with pytest.raises(KeyError):
        resolve_ids("2.4,9.9")
    assert resolve_ids("2.10,2.4,2.4") == ["2.4", "2.10"]
    assert resolve_ids("all") == list(REGISTRY)


def test_amended_readings_carry_notes():
    for e in REGISTRY.values():
        assert e.readings[0].name == "printed"
        for rd in e.readings[1:]:
            assert rd.note, f"{e.id}/{rd.name} lacks a justification"


@pytest.mark.parametrize("ident", ["2.2b", "2.4"])
def test_spec_point_examples(ident):
    case = check_identity(ident, BASE_POINT)
    assert case.status == "pass"
    assert case.residual <= 1e-8


def test_zero_fold_derivative_is_identity():
    case = check_identity("2.10", BASE_POINT.with_(r=0))
    assert case.lhs == case.rhs
    assert case.residual == 0


def test_side_condition_reported_as_skipped():
    bad = BASE_POINT.with_(d=1.0)      # q^(d-1) = 1 in the 2.2b denominator
    case = check_identity("2.2b", bad)
    assert case.status == "skipped"


def test_residual_metric():
    assert residual(1 + 0j, 1 + 0j) == 0
    assert residual(0j, 0j) == 0
    assert residual(complex("nan"), 1 + 0j) == math.inf
    assert residual(1 + 0j, -1 + 0j) == pytest.approx(1)


def test_sides_are_independent():
    coarse = TruncationPolicy(rel_tol=1e-3)
    ref = check_identity("2.4", BASE_POINT)
    perturbed = check_identity("2.4", BASE_POINT, lhs_policy=coarse)
    assert perturbed.rhs == ref.rhs
    assert perturbed.lhs != ref.lhs


def test_sweep_alias_passes():
    rep = sweep(["2.13-eq"], 50, seed=7)
    s = rep.summary("2.13")
    assert s.pass_rate == 1.0 and s.n == 50


def test_sweep_every_id_once():
    rep = sweep("all", 1, seed=1)
    assert [s.id for s in rep.identities] == list(REGISTRY)
    for s in rep.identities:
        assert s.status in ("pass", "quarantined"), (s.id, s.status)


def test_b_limit_sweep():
    rep = sweep(["2.50"], 20, seed=3)
    s = rep.summary("2.50")
    assert s.pass_rate == 1.0
    assert all(c.point.b >= 80 for c in s.cases)


def test_amended_reading_is_reported_not_substituted():
    s = sweep(["2.7"], 10, seed=5).summary("2.7")
    assert s.status == "pass" and s.reading == "amended"
    by_name = {r["reading"]: r for r in s.readings}
    assert by_name["printed"]["pass_rate"] < 1.0
    assert by_name["amended"]["pass_rate"] == 1.0


def test_convention_is_recorded():
    rep = sweep(["2.41", "2.46"], 5, seed=2)
    assert rep.conventions == {"2.41": "plain", "2.46": "standard"}


def test_quarantine_entries_are_documented():
    assert quarantine_list() == [k for k in REGISTRY if k in KNOWN_QUARANTINE]
    for ident, info in KNOWN_QUARANTINE.items():
        assert ident in REGISTRY
        assert info["counterexample"] and info["readings_tried"] and info["notes"]


@pytest.mark.parametrize("ident", sorted(KNOWN_QUARANTINE))
def test_quarantine_counterexample_still_fails(ident):
    info = KNOWN_QUARANTINE[ident]
    pt = Point.from_dict(info["counterexample"])
    entry = get_entry(ident)
    for tried in info["readings_tried"]:
        conv, name = tried.split("/")
        case = check_identity(ident, pt, reading=name, convention=conv)
        assert case.residual > entry.tol
    conv, name = info["readings_tried"][0].split("/")
    assert check_identity(ident, pt, reading=name, convention=conv).residual == pytest.approx(info["residual"], rel=1e-2)


def test_quarantined_ids_appear_in_reports():
    rep = sweep(["2.35", "2.4"], 3, seed=1)
    s = rep.summary("2.35")
    assert s.status == "quarantined" and s.quarantine["minimal_counterexample"]
    assert rep.ok
    assert rep.quarantine == ["2.35"]


def test_failures_make_report_not_ok(monkeypatch):
    from bihumbert.identities import harness
    monkeypatch.setattr(harness, "KNOWN_QUARANTINE", {})
    rep = sweep(["2.35"], 2, seed=1)
    assert rep.failures == ["2.35"] and not rep.ok


def test_sweep_is_deterministic_across_jobs():
    ids = ["2.4", "2.11b", "2.41", "2.48"]
    a = sweep(ids, 4, seed=11).to_json()
    b = sweep(ids, 4, seed=11).to_json()
    c = sweep(ids, 4, seed=11, jobs=2).to_json()
    assert a == b == c


def test_json_round_trip():
    rep = sweep(["2.4", "2.35", "2.41"], 3, seed=4)
    text = rep.to_json()
    again = report_from_dict(json.loads(text))
    assert again.to_json() == text
    doc = json.loads(text)
    assert list(doc)[:4] == ["schema_version", "seed", "n_points", "policy"]
    for item in doc["identities"]:
        for key in ("id", "n", "pass_rate", "max_residual", "worst_point", "reading"):
            assert key in item


def test_csv_shape():
    rep = sweep(["2.4"], 3, seed=4)
    lines = rep.to_csv().splitlines()
    assert lines[0].split(",") == list(CSV_COLUMNS)
    assert len(lines) == 4


def test_sweep_policy_is_tight():
    assert SWEEP_POLICY.rel_tol <= 1e-15


def test_core_set_matches_declaration():
    expected = {
        "2.2b", "2.3c", "2.4", "2.5a", "2.5b", "2.6", "2.8", "2.10", "2.11a", "2.11b", "2.12a", "2.12b",
        "2.12c", "2.13", "2.14", "2.15", "2.16a", "2.16b", "2.17a", "2.17b", "2.18", "2.19a", "2.19b",
        "2.28", "2.29a", "2.29b", "2.30a", "2.30b", "2.31", "2.32", "2.33", "2.42", "2.43", "2.44", "2.45",
        "2.50", "2.51", "2.52", "2.53a", "2.53b",
    }
    assert set(CORE_IDS) == expected
