"""Scene-flow state machine: phase gating, timing, hints, scoring, replay.

apply_action is a pure function of (state, action, now): no wall clock is
ever read here. Every call produces exactly one GameEvent, accepted or
rejected. The only rejection that changes state is deadline expiry, which
flips the phase to "expired" while refusing the action itself.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Iterator, Mapping

from . import matching, maze, policy
from .errors import (
    CORRUPT_LOG,
    EXPIRED,
    INVALID_ACTION,
    NO_MORE_HINTS,
    SCENARIO_INVALID,
    UNKNOWN_PUZZLE,
    ZONE_LOCKED,
    GameError,
)
from .policy import ZoneContext, gap_report_to_json
from .scenario import Scenario
from .telemetry import CREATION_ACTION, GameEvent, make_event

PHASES = ("lobby", "zone1", "zone2", "zone3", "completed", "expired")
ACTIVE_PHASES = ("lobby", "zone1", "zone2", "zone3")

ACTION_KINDS = (
    "start",
    "move",
    "flag_risk",
    "submit_ranking",
    "assign",
    "submit_matching",
    "edit_policy",
    "submit_policy",
    "request_hint",
)

_ZONE_OF_ACTION = {
    "move": "zone1",
    "flag_risk": "zone1",
    "submit_ranking": "zone1",
    "assign": "zone2",
    "submit_matching": "zone2",
    "edit_policy": "zone3",
    "submit_policy": "zone3",
}


@dataclass(frozen=True)
class PlayerAction:
    kind: str
    payload: Mapping[str, Any]  # JSON-native values only, so events round-trip


@dataclass(frozen=True)
class ZoneResult:
    zone_index: int
    zone_score: float
    passed: bool
    duration: float
    attempts: int
    hints: int


@dataclass(frozen=True)
class SessionState:
    session_id: str
    scenario_id: str
    phase: str
    maze: maze.MazeState
    match: matching.MatchState
    policy: policy.PolicyState
    zone_results: tuple[ZoneResult, ...]
    hints_used: Mapping[str, int]  # puzzle id -> tiers revealed
    started_at: float
    deadline: float
    zone_entered_at: float | None
    total_score: float | None


@dataclass(frozen=True)
class ActionOutcome:
    state: SessionState
    events: tuple[GameEvent, ...]
    feedback: Mapping[str, Any] = field(default_factory=dict)
    error: GameError | None = None


def _payload_error(kind: str, message: str) -> GameError:
    return GameError(INVALID_ACTION, f'action "{kind}": {message}')


def parse_action(raw: Mapping[str, Any]) -> PlayerAction:
    """Validate a raw action document into a PlayerAction with a canonical payload."""
    if not isinstance(raw, Mapping):
        raise GameError(INVALID_ACTION, "action must be an object")
    kind = raw.get("kind")
    if kind not in ACTION_KINDS:
        raise GameError(INVALID_ACTION, f"unknown action kind {kind!r}")
    fields = {k: v for k, v in raw.items() if k != "kind"}

    def need_str(name: str) -> str:
        value = fields.get(name)
        if not isinstance(value, str):
            raise _payload_error(kind, f'field "{name}" must be a string')
        return value

    def reject_extras(allowed: set[str]) -> None:
        extras = sorted(set(fields) - allowed)
        if extras:
            raise _payload_error(kind, f'unexpected field "{extras[0]}"')

    payload: dict[str, Any]
    if kind in ("start", "submit_matching", "submit_policy"):
        reject_extras(set())
        payload = {}
    elif kind == "move":
        reject_extras({"to"})
        payload = {"to": need_str("to")}
    elif kind == "flag_risk":
        reject_extras({"encounter", "decision"})
        decision = fields.get("decision")
        if not isinstance(decision, bool):
            raise _payload_error(kind, 'field "decision" must be a boolean')
        payload = {"encounter": need_str("encounter"), "decision": decision}
    elif kind == "submit_ranking":
        reject_extras({"ranking"})
        ranking = fields.get("ranking")
        if not isinstance(ranking, list) or not all(isinstance(r, str) for r in ranking):
            raise _payload_error(kind, 'field "ranking" must be a list of risk ids')
        payload = {"ranking": list(ranking)}
    elif kind == "assign":
        reject_extras({"control", "frameworks"})
        frameworks = fields.get("frameworks")
        if not isinstance(frameworks, list) or not all(isinstance(f, str) for f in frameworks):
            raise _payload_error(kind, 'field "frameworks" must be a list of framework ids')
        payload = {"control": need_str("control"), "frameworks": sorted(set(frameworks))}
    elif kind == "edit_policy":
        op = fields.get("op")
        if op == "add":
            reject_extras({"op", "element", "position"})
            position = fields.get("position")
            if not isinstance(position, int) or isinstance(position, bool):
                raise _payload_error(kind, 'field "position" must be an integer')
            payload = {"op": "add", "element": need_str("element"), "position": position}
        elif op == "remove":
            reject_extras({"op", "element"})
            payload = {"op": "remove", "element": need_str("element")}
        elif op == "reorder":
            reject_extras({"op", "element", "position"})
            position = fields.get("position")
            if not isinstance(position, int) or isinstance(position, bool):
                raise _payload_error(kind, 'field "position" must be an integer')
            payload = {"op": "reorder", "element": need_str("element"), "position": position}
        else:
            raise _payload_error(kind, f"unknown op {op!r}")
    else:  # request_hint
        reject_extras({"puzzle"})
        payload = {"puzzle": need_str("puzzle")}
    return PlayerAction(kind=kind, payload=payload)


def create_session(
    scenario: Scenario,
    now: float,
    session_id: str | None = None,
    validated: bool = False,
) -> SessionState:
    """Start a session in the lobby. Lints the scenario unless the caller already has."""
    if not validated:
        from .lint import lint_scenario

        report = lint_scenario(scenario)
        if report.errors:
            first = report.errors[0]
            raise GameError(SCENARIO_INVALID, f"scenario fails lint: {first.message}")
    return SessionState(
        session_id=session_id if session_id is not None else secrets.token_urlsafe(16),
        scenario_id=scenario.id,
        phase="lobby",
        maze=maze.initial_maze_state(scenario.maze_zone.maze),
        match=matching.initial_match_state(),
        policy=policy.initial_policy_state(scenario),
        zone_results=(),
        hints_used={},
        started_at=now,
        deadline=now + scenario.time_limit,
        zone_entered_at=None,
        total_score=None,
    )


def creation_event(state: SessionState, scenario: Scenario) -> GameEvent:
    return make_event(
        session_id=state.session_id,
        seq=0,
        timestamp=state.started_at,
        action=CREATION_ACTION,
        outcome="accepted",
        error=None,
        phase="lobby",
        payload={"scenario_id": scenario.id, "started_at": state.started_at},
    )


def zone_context(state: SessionState) -> ZoneContext:
    return ZoneContext(
        flagged_true=frozenset(rid for rid, decision in state.maze.flags.items() if decision),
        zone1_submitted=state.maze.submitted,
        zone2_submitted=state.match.submitted,
    )


def zone_hint_count(state: SessionState, scenario: Scenario, zone_index: int) -> int:
    return sum(
        state.hints_used.get(puzzle.id, 0)
        for puzzle in scenario.hints
        if puzzle.zone == zone_index
    )


def total_score(results: Iterable[ZoneResult], scenario: Scenario) -> float:
    """Hint-penalized weighted mean of zone scores, each contribution floored at 0."""
    contributions = {
        r.zone_index: max(0.0, r.zone_score - scenario.hint_penalty * r.hints) for r in results
    }
    weights = scenario.zone_weights
    return sum(weights[i] * contributions.get(i, 0.0) for i in range(3)) / sum(weights)


def _zone_result(
    state: SessionState, scenario: Scenario, zone_index: int, zone_score: float, now: float
) -> ZoneResult:
    entered = state.zone_entered_at if state.zone_entered_at is not None else state.started_at
    return ZoneResult(
        zone_index=zone_index,
        zone_score=zone_score,
        passed=True,
        duration=now - entered,
        attempts=1,
        hints=zone_hint_count(state, scenario, zone_index),
    )


def _dispatch(
    state: SessionState, action: PlayerAction, now: float, scenario: Scenario
) -> tuple[SessionState, dict[str, Any]]:
    kind = action.kind
    payload = action.payload

    if kind == "start":
        if state.phase != "lobby":
            raise GameError(ZONE_LOCKED, "the session has already started")
        new_state = replace(state, phase="zone1", zone_entered_at=now)
        return new_state, {"phase": "zone1"}

    if kind == "request_hint":
        puzzle = scenario.puzzles_by_id.get(payload["puzzle"])
        if puzzle is None:
            raise GameError(UNKNOWN_PUZZLE, f'unknown puzzle "{payload["puzzle"]}"')
        zone_name = f"zone{puzzle.zone + 1}"
        if state.phase != zone_name:
            raise GameError(
                ZONE_LOCKED,
                f'puzzle "{puzzle.id}" belongs to {zone_name} but the session is in {state.phase}',
            )
        used = state.hints_used.get(puzzle.id, 0)
        if used >= len(puzzle.tiers):
            raise GameError(NO_MORE_HINTS, f'all hints for "{puzzle.id}" are already revealed')
        new_state = replace(state, hints_used={**state.hints_used, puzzle.id: used + 1})
        return new_state, {
            "puzzle": puzzle.id,
            "tier": used + 1,
            "text": puzzle.tiers[used],
            "remaining": len(puzzle.tiers) - used - 1,
        }

    required_phase = _ZONE_OF_ACTION[kind]
    if state.phase != required_phase:
        raise GameError(
            ZONE_LOCKED,
            f'action "{kind}" targets {required_phase} but the session is in {state.phase}',
        )

    if kind == "move":
        new_maze = maze.move(state.maze, payload["to"], scenario.maze_zone.maze)
        node = scenario.maze_zone.maze.nodes_by_id[payload["to"]]
        return replace(state, maze=new_maze), {"current_node": node.id, "encounter": node.encounter}

    if kind == "flag_risk":
        new_maze = maze.flag_risk(
            state.maze, payload["encounter"], payload["decision"], scenario.maze_zone.maze
        )
        return replace(state, maze=new_maze), {
            "encounter": payload["encounter"],
            "decision": payload["decision"],
        }

    if kind == "submit_ranking":
        new_maze, result = maze.submit_ranking(state.maze, list(payload["ranking"]), scenario)
        feedback: dict[str, Any] = {
            "zone_score": result.zone_score,
            "ranking_score": result.score,
            "flag_precision": result.flag_precision,
            "flag_recall": result.flag_recall,
            "passed": result.passed,
        }
        new_state = replace(state, maze=new_maze)
        if result.passed:
            zone_result = _zone_result(state, scenario, 0, result.zone_score, now)
            new_state = replace(
                new_state,
                phase="zone2",
                zone_results=state.zone_results + (zone_result,),
                zone_entered_at=now,
            )
        feedback["phase"] = new_state.phase
        return new_state, feedback

    if kind == "assign":
        new_match = matching.assign(
            state.match, payload["control"], frozenset(payload["frameworks"]), scenario
        )
        return replace(state, match=new_match), {
            "control": payload["control"],
            "frameworks": sorted(payload["frameworks"]),
        }

    if kind == "submit_matching":
        new_match, result = matching.score_matching(state.match, scenario)
        feedback = {
            "zone_score": result.zone_score,
            "per_control": dict(result.per_control),
            "passed": result.passed,
        }
        new_state = replace(state, match=new_match)
        if result.passed:
            zone_result = _zone_result(state, scenario, 1, result.zone_score, now)
            new_state = replace(
                new_state,
                phase="zone3",
                zone_results=state.zone_results + (zone_result,),
                zone_entered_at=now,
            )
        feedback["phase"] = new_state.phase
        return new_state, feedback

    if kind == "edit_policy":
        op = payload["op"]
        if op == "add":
            new_policy = policy.add_element(
                state.policy, payload["element"], payload["position"], scenario
            )
        elif op == "remove":
            new_policy = policy.remove_element(state.policy, payload["element"])
        else:
            new_policy = policy.reorder_element(state.policy, payload["element"], payload["position"])
        report = policy.evaluate_policy(new_policy, zone_context(state), scenario)
        return replace(state, policy=new_policy), {
            "selected": list(new_policy.selected),
            "gap_report": gap_report_to_json(report),
        }

    if kind == "submit_policy":
        new_policy, result = policy.submit_policy(state.policy, zone_context(state), scenario)
        feedback = {
            "zone_score": result.zone_score,
            "passed": result.passed,
            "satisfied_instances": result.satisfied_instances,
            "total_instances": result.total_instances,
            "gap_report": gap_report_to_json(result.report),
        }
        new_state = replace(state, policy=new_policy)
        if result.passed:
            zone_result = _zone_result(state, scenario, 2, result.zone_score, now)
            results = state.zone_results + (zone_result,)
            new_state = replace(
                new_state,
                phase="completed",
                zone_results=results,
                zone_entered_at=now,
                total_score=total_score(results, scenario),
            )
            feedback["total_score"] = new_state.total_score
        feedback["phase"] = new_state.phase
        return new_state, feedback

    raise GameError(INVALID_ACTION, f"unknown action kind {kind!r}")


def apply_action(
    state: SessionState, action: PlayerAction, now: float, scenario: Scenario, seq: int
) -> ActionOutcome:
    """Apply one action, producing the next state and exactly one GameEvent."""

    def event(outcome: str, error: str | None, phase: str) -> GameEvent:
        return make_event(
            session_id=state.session_id,
            seq=seq,
            timestamp=now,
            action=action.kind,
            outcome=outcome,
            error=error,
            phase=phase,
            payload=action.payload,
        )

    if state.phase == "expired":
        err = GameError(EXPIRED, "the session has expired")
        return ActionOutcome(state, (event("rejected", err.code, state.phase),), {}, err)
    if state.phase == "completed":
        err = GameError(ZONE_LOCKED, "the session is already completed")
        return ActionOutcome(state, (event("rejected", err.code, state.phase),), {}, err)
    if now > state.deadline:
        expired = replace(state, phase="expired")
        err = GameError(EXPIRED, "the session deadline has passed")
        return ActionOutcome(expired, (event("rejected", err.code, "expired"),), {}, err)

    try:
        new_state, feedback = _dispatch(state, action, now, scenario)
    except GameError as err:
        return ActionOutcome(state, (event("rejected", err.code, state.phase),), {}, err)
    return ActionOutcome(new_state, (event("accepted", None, new_state.phase),), feedback, None)


def replay_states(
    events: list[GameEvent] | tuple[GameEvent, ...], scenario: Scenario
) -> Iterator[SessionState]:
    """Fold a log back into states, yielding the state after every event.

    Raises corrupt-log when any event is inapplicable at its position or does
    not match what apply_action produces there.
    """
    if not events:
        raise GameError(CORRUPT_LOG, "log is empty")
    first = events[0]
    if first.action != CREATION_ACTION or first.seq != 0:
        raise GameError(CORRUPT_LOG, "log must begin with a creation event at seq 0")
    started = first.payload.get("started_at")
    if first.payload.get("scenario_id") != scenario.id or not isinstance(started, (int, float)):
        raise GameError(CORRUPT_LOG, "creation event does not match the scenario")
    state = create_session(scenario, float(started), session_id=first.session_id, validated=True)
    if creation_event(state, scenario) != first:
        raise GameError(CORRUPT_LOG, "creation event is malformed")
    yield state

    prev_ts = first.timestamp
    for i, recorded in enumerate(events[1:], start=1):
        if recorded.seq != i:
            raise GameError(CORRUPT_LOG, f"expected seq {i}, got {recorded.seq}")
        if recorded.session_id != first.session_id:
            raise GameError(CORRUPT_LOG, f"event {i} belongs to a different session")
        if recorded.timestamp < prev_ts:
            raise GameError(CORRUPT_LOG, f"timestamp decreases at seq {i}")
        try:
            action = parse_action({"kind": recorded.action, **recorded.payload})
        except GameError as exc:
            raise GameError(CORRUPT_LOG, f"event {i} is not a valid action: {exc.message}") from exc
        outcome = apply_action(state, action, recorded.timestamp, scenario, seq=recorded.seq)
        if outcome.events != (recorded,):
            raise GameError(CORRUPT_LOG, f"event {i} does not match the replayed transition")
        state = outcome.state
        prev_ts = recorded.timestamp
        yield state


def replay(events: list[GameEvent] | tuple[GameEvent, ...], scenario: Scenario) -> SessionState:
    state = None
    for state in replay_states(events, scenario):
        pass
    assert state is not None
    return state
