"""Zone 1 engine: maze navigation, risk flagging, and prioritization scoring.

All transitions are pure: error cases raise GameError and leave the caller's
state untouched; successful calls return a new state value.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

from .errors import (
    ENCOUNTER_NOT_VISITED,
    NO_SUCH_EDGE,
    NOT_A_VALID_PERMUTATION,
    ZONE_ALREADY_SUBMITTED,
    GameError,
)
from .scenario import MazeSpec, RiskCard, Scenario, severity


@dataclass(frozen=True)
class MazeState:
    current_node: str
    visited: frozenset[str]
    flags: Mapping[str, bool]  # encounter risk id -> decision
    ranking: tuple[str, ...] | None
    submitted: bool


@dataclass(frozen=True)
class RankingResult:
    score: float
    flag_precision: float
    flag_recall: float
    zone_score: float
    passed: bool


def initial_maze_state(maze: MazeSpec) -> MazeState:
    return MazeState(
        current_node=maze.entry,
        visited=frozenset({maze.entry}),
        flags={},
        ranking=None,
        submitted=False,
    )


def visited_encounters(state: MazeState, maze: MazeSpec) -> frozenset[str]:
    return frozenset(
        node.encounter
        for node_id in state.visited
        for node in (maze.nodes_by_id[node_id],)
        if node.encounter is not None
    )


def move(state: MazeState, to: str, maze: MazeSpec) -> MazeState:
    if state.submitted:
        raise GameError(ZONE_ALREADY_SUBMITTED, "zone 1 has already been submitted")
    if not maze.has_edge(state.current_node, to):
        raise GameError(NO_SUCH_EDGE, f'no edge from "{state.current_node}" to "{to}"')
    return replace(state, current_node=to, visited=state.visited | {to})


def flag_risk(state: MazeState, encounter: str, decision: bool, maze: MazeSpec) -> MazeState:
    if state.submitted:
        raise GameError(ZONE_ALREADY_SUBMITTED, "zone 1 has already been submitted")
    if encounter not in visited_encounters(state, maze):
        raise GameError(
            ENCOUNTER_NOT_VISITED, f'encounter "{encounter}" is not on any visited node'
        )
    return replace(state, flags={**state.flags, encounter: decision})


def rank_oracle(risks: set[RiskCard] | frozenset[RiskCard]) -> list[str]:
    """Deterministic priority order: severity desc, then impact desc, then id asc."""
    return [r.id for r in sorted(risks, key=lambda r: (-severity(r), -r.impact, r.id))]


def _strictly_before(a: RiskCard, b: RiskCard) -> bool:
    """True when the oracle places a strictly ahead of b (ties on both keys excluded)."""
    return (severity(a), a.impact) > (severity(b), b.impact)


def concordance_score(ordered: list[str], risks: Mapping[str, RiskCard]) -> float:
    """Fraction of pairs ordered concordantly with the oracle's strict order.

    Pairs tied on both severity and impact are excluded from the denominator;
    an empty denominator scores 1.0.
    """
    concordant = 0
    comparable = 0
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            a, b = risks[ordered[i]], risks[ordered[j]]
            if _strictly_before(a, b):
                comparable += 1
                concordant += 1
            elif _strictly_before(b, a):
                comparable += 1
    if comparable == 0:
        return 1.0
    return concordant / comparable


def submit_ranking(
    state: MazeState, ordered: list[str], scenario: Scenario
) -> tuple[MazeState, RankingResult]:
    if state.submitted:
        raise GameError(ZONE_ALREADY_SUBMITTED, "zone 1 has already been submitted")
    true_ids = scenario.true_risk_ids
    expected = {rid for rid, decision in state.flags.items() if decision and rid in true_ids}
    if len(ordered) != len(set(ordered)) or set(ordered) != expected:
        raise GameError(
            NOT_A_VALID_PERMUTATION,
            "ranking must be a permutation of the true risks flagged true",
        )

    score = concordance_score(ordered, scenario.risks_by_id)
    flagged_true = [rid for rid, decision in state.flags.items() if decision]
    hits = sum(1 for rid in flagged_true if rid in true_ids)
    precision = hits / len(flagged_true) if flagged_true else 1.0
    recall = hits / len(true_ids) if true_ids else 1.0
    w_rank, w_prec, w_rec = scenario.ranking_weights
    zone_score = w_rank * score + w_prec * precision + w_rec * recall
    result = RankingResult(
        score=score,
        flag_precision=precision,
        flag_recall=recall,
        zone_score=zone_score,
        passed=zone_score >= scenario.zone_pass_thresholds[0],
    )
    return replace(state, ranking=tuple(ordered), submitted=True), result
