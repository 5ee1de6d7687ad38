import random

import pytest

from govroom.errors import GameError
from govroom.maze import (
    concordance_score,
    flag_risk,
    initial_maze_state,
    move,
    rank_oracle,
    submit_ranking,
    visited_encounters,
)
from support import build_scenario, risk


@pytest.fixture
def scenario():
    return build_scenario()


@pytest.fixture
def spec(scenario):
    return scenario.maze_zone.maze


def test_initial_state(spec):
    state = initial_maze_state(spec)
    assert state.current_node == "hall"
    assert state.visited == {"hall"}
    assert state.flags == {}
    assert state.ranking is None
    assert not state.submitted


def test_move_along_edge(spec):
    state = move(initial_maze_state(spec), "room0", spec)
    assert state.current_node == "room0"
    assert state.visited == {"hall", "room0"}


def test_move_without_edge_leaves_state_unchanged(spec):
    state = initial_maze_state(spec)
    with pytest.raises(GameError) as err:
        move(state, "out_of_reach", spec)
    assert err.value.code == "no-such-edge"
    assert state == initial_maze_state(spec)


def test_rooms_cannot_be_jumped(spec):
    state = move(initial_maze_state(spec), "room0", spec)
    with pytest.raises(GameError) as err:
        move(state, "room1", spec)  # rooms connect only through the hall
    assert err.value.code == "no-such-edge"


def test_flag_visited_encounter(spec):
    state = move(initial_maze_state(spec), "room0", spec)
    assert visited_encounters(state, spec) == {"r_hi"}
    state = flag_risk(state, "r_hi", True, spec)
    assert state.flags == {"r_hi": True}


def test_reflagging_overwrites(spec):
    state = move(initial_maze_state(spec), "room0", spec)
    state = flag_risk(state, "r_hi", True, spec)
    state = flag_risk(state, "r_hi", False, spec)
    assert state.flags == {"r_hi": False}


def test_flag_unvisited_encounter_rejected(spec):
    state = initial_maze_state(spec)
    with pytest.raises(GameError) as err:
        flag_risk(state, "r_hi", True, spec)
    assert err.value.code == "encounter-not-visited"


def test_no_actions_after_submit(scenario, spec):
    state = move(initial_maze_state(spec), "room0", spec)
    state = flag_risk(state, "r_hi", True, spec)
    state, _ = submit_ranking(state, ["r_hi"], scenario)
    assert state.submitted
    for call in (
        lambda: move(state, "hall", spec),
        lambda: flag_risk(state, "r_hi", False, spec),
        lambda: submit_ranking(state, ["r_hi"], scenario),
    ):
        with pytest.raises(GameError) as err:
            call()
        assert err.value.code == "zone-already-submitted"


def test_rank_oracle_orders_by_severity():
    a, b, c = risk("a", 5, 4), risk("b", 2, 5), risk("c", 3, 3)
    assert rank_oracle({a, b, c}) == ["a", "b", "c"]


def test_rank_oracle_breaks_ties_by_impact():
    x, y = risk("x", 4, 3), risk("y", 3, 4)  # both severity 12
    assert rank_oracle({x, y}) == ["y", "x"]


def test_rank_oracle_breaks_full_ties_by_id():
    x, y = risk("x", 3, 4), risk("w", 3, 4)
    assert rank_oracle({x, y}) == ["w", "x"]


def test_rank_oracle_single_risk():
    only = risk("only", 2, 2)
    assert rank_oracle({only}) == ["only"]


def test_rank_oracle_is_a_total_order():
    rng = random.Random(7)
    for _ in range(200):
        risks = [
            risk(f"r{i}", rng.randint(1, 5), rng.randint(1, 5)) for i in range(rng.randint(2, 7))
        ]
        order = rank_oracle(set(risks))
        assert sorted(order) == sorted(r.id for r in risks)
        assert rank_oracle(set(reversed(risks))) == order  # input order is irrelevant


def _ranking_state(scenario, flags):
    # Engine-level shortcut: submit_ranking only reads flags and submitted.
    state = initial_maze_state(scenario.maze_zone.maze)
    for rid, decision in flags.items():
        state = state.__class__(
            current_node=state.current_node,
            visited=state.visited,
            flags={**state.flags, rid: decision},
            ranking=None,
            submitted=False,
        )
    return state


def test_submit_requires_a_permutation(scenario):
    state = _ranking_state(scenario, {"r_hi": True, "r_lo": True})
    for bad in (["r_hi"], ["r_hi", "r_hi"], ["r_hi", "r_lo", "d_noise"], []):
        with pytest.raises(GameError) as err:
            submit_ranking(state, bad, scenario)
        assert err.value.code == "not-a-valid-permutation"


def test_distractors_are_excluded_from_the_permutation(scenario):
    state = _ranking_state(scenario, {"r_hi": True, "d_noise": True})
    new_state, result = submit_ranking(state, ["r_hi"], scenario)
    assert new_state.ranking == ("r_hi",)
    assert result.flag_precision == 0.5
    assert result.flag_recall == 0.5


def test_perfect_submission_scores_one(scenario):
    state = _ranking_state(scenario, {"r_hi": True, "r_lo": True, "d_noise": False})
    _, result = submit_ranking(state, ["r_hi", "r_lo"], scenario)
    assert result.score == 1.0
    assert result.flag_precision == 1.0
    assert result.flag_recall == 1.0
    assert result.zone_score == 1.0
    assert result.passed


def test_example_two_thirds_concordance():
    a, b, c = risk("a", 5, 4), risk("b", 2, 5), risk("c", 3, 3)
    by_id = {r.id: r for r in (a, b, c)}
    assert concordance_score(["b", "a", "c"], by_id) == pytest.approx(2 / 3)


def test_reversed_oracle_scores_zero():
    risks = [risk("a", 5, 5), risk("b", 4, 4), risk("c", 3, 3), risk("d", 2, 2)]
    by_id = {r.id: r for r in risks}
    assert concordance_score(list(reversed(rank_oracle(set(risks)))), by_id) == 0.0


def test_fully_tied_pairs_score_one():
    risks = [risk("a", 3, 4), risk("b", 3, 4), risk("c", 3, 4)]
    by_id = {r.id: r for r in risks}
    assert concordance_score(["c", "a", "b"], by_id) == 1.0


def test_no_flags_still_scores(scenario):
    state = _ranking_state(scenario, {})
    _, result = submit_ranking(state, [], scenario)
    assert result.score == 1.0
    assert result.flag_precision == 1.0  # nothing flagged
    assert result.flag_recall == 0.0  # two true risks exist
    assert result.zone_score == pytest.approx(0.75)
    assert result.passed  # 0.75 clears the 0.7 threshold even with zero recall


def test_zone_score_uses_scenario_weights():
    scenario = build_scenario(ranking_weights=(0.0, 0.0, 1.0))
    state = _ranking_state(scenario, {"r_hi": True})
    _, result = submit_ranking(state, ["r_hi"], scenario)
    assert result.zone_score == pytest.approx(0.5)  # recall alone: 1 of 2 true risks
