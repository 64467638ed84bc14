import json

import pytest

import bvf

NOT = '{"n": 1, "m": 0, "table": {"0": "1", "1": "0"}}'
RACE = '{"n": 2, "m": 0, "table": {"00": "11", "01": "01", "10": "10", "11": "11"}}'
BUF = '{"n": 1, "m": 1, "coords": ["v1"]}'


def test_analyze_oscillator():
    report = json.loads(bvf.analyze(NOT, "0"))
    assert report["state"] == "0"
    assert report["limit"] is None
    assert report["properties"]["tcgr"]["branch"] == "b3"
    assert report["properties"]["single_bit_change"] is True
    assert report["causes"]["delay_sensitivity"] == ["oscillation"]


def test_analyze_race():
    report = json.loads(bvf.analyze(RACE, "00"))
    assert report["stable_reachable"] == ["01", "10", "11"]
    assert report["witnesses"]["multiple_limits"] == {
        "first": "01",
        "second": "10",
    }


def test_analyze_param():
    report = json.loads(bvf.analyze(BUF, "00", "1"))
    assert report["state_stable"] is True
    assert report["limit"] == "11"
    assert report["fundamental_mode"]["delay_insensitive"] is True
    assert report["fundamental_mode"]["trivially_hazard_free"] is False


def test_param_validation():
    with pytest.raises(ValueError):
        bvf.analyze(BUF, "00")
    with pytest.raises(ValueError):
        bvf.analyze(NOT, "0", "1")
    with pytest.raises(ValueError):
        bvf.analyze(NOT, "00")
    with pytest.raises(ValueError):
        bvf.analyze('{"n": 1}', "0")


def test_classify_all():
    doc = json.loads(bvf.classify_all(RACE))
    assert [r["state"] for r in doc["reports"]] == ["00", "01", "10", "11"]
    assert doc["reports"][3]["limit"] == "11"


def test_graph():
    dot = bvf.graph(NOT, "0")
    assert dot.startswith("digraph mu {")
    assert '"0" -> "1";' in dot
    assert dot == bvf.graph(NOT, "0")
    closed = bvf.graph(BUF, "00", "1")
    assert 'label="0|0*"' in closed


def test_orbit():
    info = json.loads(bvf.orbit(NOT, "0"))
    assert info["transient_len"] == 0
    assert info["period"] == 2
    assert info["stabilizes"] is False
    assert info["milestones"] == ["0", "1"]


def test_oracle_check():
    info = json.loads(bvf.oracle_check(RACE, "00"))
    assert info["agreement"] is True
    assert info["differences"] == []


def test_serialize_round_trip():
    canonical = bvf.serialize(NOT)
    assert json.loads(canonical)["table"] == {"0": "1", "1": "0"}
    assert bvf.serialize(canonical) == canonical


def test_exhaustive_suite():
    result = json.loads(bvf.exhaustive_lattice(1))
    assert result["cases_run"] == 8
    assert result["pass"] is True
    assert result["violations"] == []


def test_randomized_suite():
    result = json.loads(bvf.randomized_suite(3, 200, 42, 20))
    assert result["cases_run"] == 220
    assert result["seed"] == 42
    assert result["pass"] is True


def test_fundamental_suite():
    result = json.loads(bvf.fundamental_suite(1, 1, 8, 7))
    assert result["cases_run"] == 8 * 4 * 2
    assert result["pass"] is True


def test_separation_search():
    found = json.loads(bvf.separation_search(2))
    by_name = {s["name"]: s for s in found}
    assert by_name["tcgr_not_di"]["found"] is True
    assert by_name["tcgr_not_di"]["state"] == "0"
    assert by_name["hf_not_sm"]["found"] is False
    replay = json.loads(
        bvf.analyze(by_name["tcgr_not_di"]["model"],
                    by_name["tcgr_not_di"]["state"]))
    assert replay["properties"]["tcgr"]["holds"] is True
    assert replay["properties"]["delay_insensitive"] is False
