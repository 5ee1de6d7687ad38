"""Zone 2 engine: control-to-framework assignment scored by Jaccard similarity."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

from .errors import UNKNOWN_CONTROL, UNKNOWN_FRAMEWORK, ZONE_ALREADY_SUBMITTED, GameError
from .scenario import Scenario


@dataclass(frozen=True)
class MatchState:
    assignments: Mapping[str, frozenset[str]]  # control id -> framework ids
    submitted: bool


@dataclass(frozen=True)
class MatchResult:
    per_control: Mapping[str, float]
    zone_score: float
    passed: bool


def initial_match_state() -> MatchState:
    return MatchState(assignments={}, submitted=False)


def assign(
    state: MatchState, control: str, frameworks: frozenset[str], scenario: Scenario
) -> MatchState:
    if state.submitted:
        raise GameError(ZONE_ALREADY_SUBMITTED, "zone 2 has already been submitted")
    if control not in scenario.controls_by_id:
        raise GameError(UNKNOWN_CONTROL, f'unknown control "{control}"')
    for fid in sorted(frameworks):
        if fid not in scenario.frameworks_by_id:
            raise GameError(UNKNOWN_FRAMEWORK, f'unknown framework "{fid}"')
    updated = dict(state.assignments)
    if frameworks:
        updated[control] = frozenset(frameworks)
    else:
        updated.pop(control, None)  # empty set clears the assignment
    return replace(state, assignments=updated)


def jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    union = a | b
    if not union:
        return 1.0
    return len(a & b) / len(union)


def score_matching(state: MatchState, scenario: Scenario) -> tuple[MatchState, MatchResult]:
    if state.submitted:
        raise GameError(ZONE_ALREADY_SUBMITTED, "zone 2 has already been submitted")
    per_control: dict[str, float] = {}
    for control in scenario.matching_zone.controls:
        assigned = state.assignments.get(control.id, frozenset())
        per_control[control.id] = jaccard(assigned, control.answer_key)
    zone_score = sum(per_control.values()) / len(per_control)
    result = MatchResult(
        per_control=per_control,
        zone_score=zone_score,
        passed=zone_score >= scenario.zone_pass_thresholds[1],
    )
    return replace(state, submitted=True), result
