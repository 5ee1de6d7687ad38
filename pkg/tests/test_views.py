import json

import pytest

from govroom.scenario import HintPuzzle
from govroom.views import player_view
from support import Driver, build_scenario, forbidden_keys_in

HINTS = (HintPuzzle(id="maze-hint", zone=0, tiers=("one", "two")),)


@pytest.fixture
def scenario():
    return build_scenario(hints=HINTS)


def view(driver):
    return player_view(driver.state, driver.scenario, driver.now)


def test_lobby_view(scenario):
    driver = Driver(scenario)
    document = view(driver)
    assert document["session_id"] == "s-test"
    assert document["phase"] == "lobby"
    assert document["scenario"] == {
        "id": "test-room",
        "title": "Test Room",
        "company_profile": "A test company.",
        "time_limit": 2700,
    }
    assert document["remaining_seconds"] == scenario.time_limit
    assert document["zones"] == {}
    assert document["zone_results"] == []
    assert document["total_score"] is None
    assert document["hints"] == {"maze-hint": {"zone": 0, "total_tiers": 2, "revealed": []}}


def test_zone1_appears_after_start(scenario):
    driver = Driver(scenario)
    driver.do({"kind": "start"})
    document = view(driver)
    zone1 = document["zones"]["zone1"]
    assert zone1["current_node"] == "hall"
    assert zone1["entry"] == "hall"
    assert zone1["exit"] == "out"
    assert zone1["visited"] == ["hall"]
    assert zone1["nodes"] == {"hall": {"description": "hall", "encounter": None}}
    assert set(zone1["exits"]) == {"hall"}
    assert zone1["flags"] == {}
    assert zone1["ranking"] is None
    assert zone1["submitted"] is False
    assert "zone2" not in document["zones"]


def test_encounter_card_shows_scores_but_not_the_answer(scenario):
    driver = Driver(scenario)
    driver.do({"kind": "start"})
    driver.do({"kind": "move", "to": "room0"})
    card = view(driver)["zones"]["zone1"]["nodes"]["room0"]["encounter"]
    assert card == {
        "id": "r_hi",
        "title": "r_hi",
        "description": "description of r_hi",
        "likelihood": 4,
        "impact": 5,
    }


def test_only_visited_nodes_are_described(scenario):
    driver = Driver(scenario)
    driver.do({"kind": "start"})
    driver.do({"kind": "move", "to": "room0"})
    zone1 = view(driver)["zones"]["zone1"]
    assert set(zone1["nodes"]) == {"hall", "room0"}
    assert set(zone1["exits"]) == {"hall", "room0"}


def test_zone_sections_appear_progressively(scenario):
    driver = Driver(scenario)
    driver.solve_zone1()
    document = view(driver)
    assert set(document["zones"]) == {"zone1", "zone2"}
    zone2 = document["zones"]["zone2"]
    assert [c["id"] for c in zone2["controls"]] == ["c_one", "c_both"]
    assert [f["id"] for f in zone2["frameworks"]] == ["fw_a", "fw_b"]
    assert zone2["assignments"] == {}
    driver.solve_zone2()
    document = view(driver)
    assert set(document["zones"]) == {"zone1", "zone2", "zone3"}
    zone3 = document["zones"]["zone3"]
    assert [e["id"] for e in zone3["elements"]][:2] == ["e_scope_bad", "e_scope"]
    assert zone3["selected"] == ["e_scope_bad"]
    assert zone3["gap_report"]["complete"] is False


def test_assignments_reflected(scenario):
    driver = Driver(scenario)
    driver.solve_zone1()
    driver.do({"kind": "assign", "control": "c_both", "frameworks": ["fw_b", "fw_a"]})
    zone2 = view(driver)["zones"]["zone2"]
    assert zone2["assignments"] == {"c_both": ["fw_a", "fw_b"]}


def test_gap_report_tracks_edits(scenario):
    driver = Driver(scenario)
    driver.solve_zone1()
    driver.solve_zone2()
    before = view(driver)["zones"]["zone3"]["gap_report"]
    assert any(g["kind"] == "flaw_retained" for g in before["gaps"])
    driver.do({"kind": "edit_policy", "op": "remove", "element": "e_scope_bad"})
    after = view(driver)["zones"]["zone3"]["gap_report"]
    assert all(g["kind"] != "flaw_retained" for g in after["gaps"])


def test_completed_view_has_results_and_total(scenario):
    driver = Driver(scenario)
    driver.solve_zone1()
    driver.solve_zone2()
    driver.solve_zone3()
    document = view(driver)
    assert document["phase"] == "completed"
    assert document["total_score"] == 1.0
    assert [r["zone_index"] for r in document["zone_results"]] == [0, 1, 2]
    first = document["zone_results"][0]
    assert set(first) == {"zone_index", "zone_score", "passed", "duration", "attempts", "hints"}


def test_hints_expose_only_revealed_tiers(scenario):
    driver = Driver(scenario)
    driver.do({"kind": "start"})
    driver.do({"kind": "request_hint", "puzzle": "maze-hint"})
    document = view(driver)
    assert document["hints"]["maze-hint"] == {"zone": 0, "total_tiers": 2, "revealed": ["one"]}


def test_remaining_seconds_floors_at_zero(scenario):
    driver = Driver(scenario)
    driver.do({"kind": "start"})
    document = player_view(driver.state, scenario, driver.now + scenario.time_limit + 999)
    assert document["remaining_seconds"] == 0


def test_no_answer_keys_at_any_step(scenario):
    driver = Driver(scenario)
    steps = [
        {"kind": "start"},
        {"kind": "request_hint", "puzzle": "maze-hint"},
        {"kind": "move", "to": "room0"},
        {"kind": "flag_risk", "encounter": "r_hi", "decision": True},
        {"kind": "move", "to": "hall"},
        {"kind": "move", "to": "room1"},
        {"kind": "flag_risk", "encounter": "r_lo", "decision": True},
        {"kind": "submit_ranking", "ranking": ["r_hi", "r_lo"]},
        {"kind": "assign", "control": "c_one", "frameworks": ["fw_a"]},
        {"kind": "assign", "control": "c_both", "frameworks": ["fw_a", "fw_b"]},
        {"kind": "submit_matching"},
        {"kind": "edit_policy", "op": "remove", "element": "e_scope_bad"},
        {"kind": "edit_policy", "op": "add", "element": "e_scope", "position": 0},
        {"kind": "submit_policy"},
    ]
    assert forbidden_keys_in(view(driver)) == set()
    for raw in steps:
        driver.do(raw)
        document = view(driver)
        assert forbidden_keys_in(document) == set()
        json.dumps(document)  # stays JSON-serializable throughout
