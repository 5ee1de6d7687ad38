"""Player-safe view construction.

Views are built from scratch as plain JSON dicts; scenario answer keys
(answer_key, is_true_risk, is_flawed, covers_risks, references_frameworks,
contradicts, reference solutions, unrevealed hint tiers) are never copied in,
so redaction is a property of the view shape rather than a filtering step.
Zone sections appear progressively: a zone is included only once reached.
"""

from __future__ import annotations

from typing import Any

from .policy import evaluate_policy, gap_report_to_json
from .scenario import Scenario
from .session import SessionState, zone_context


def _zone1_view(state: SessionState, scenario: Scenario) -> dict[str, Any]:
    spec = scenario.maze_zone.maze
    nodes: dict[str, Any] = {}
    for node_id in sorted(state.maze.visited):
        node = spec.nodes_by_id[node_id]
        encounter = None
        if node.encounter is not None:
            risk = scenario.risks_by_id[node.encounter]
            encounter = {
                "id": risk.id,
                "title": risk.title,
                "description": risk.description,
                "likelihood": risk.likelihood,
                "impact": risk.impact,
            }
        nodes[node_id] = {"description": node.description, "encounter": encounter}
    return {
        "current_node": state.maze.current_node,
        "entry": spec.entry,
        "exit": spec.exit,
        "visited": sorted(state.maze.visited),
        "nodes": nodes,
        "exits": {node_id: list(spec.adjacency[node_id]) for node_id in sorted(state.maze.visited)},
        "flags": dict(state.maze.flags),
        "ranking": list(state.maze.ranking) if state.maze.ranking is not None else None,
        "submitted": state.maze.submitted,
    }


def _zone2_view(state: SessionState, scenario: Scenario) -> dict[str, Any]:
    return {
        "frameworks": [
            {"id": f.id, "name": f.name, "description": f.description}
            for f in scenario.matching_zone.frameworks
        ],
        "controls": [
            {"id": c.id, "text": c.text, "context_tag": c.context_tag}
            for c in scenario.matching_zone.controls
        ],
        "assignments": {
            cid: sorted(fids) for cid, fids in sorted(state.match.assignments.items())
        },
        "submitted": state.match.submitted,
    }


def _zone3_view(state: SessionState, scenario: Scenario) -> dict[str, Any]:
    report = evaluate_policy(state.policy, zone_context(state), scenario)
    return {
        "elements": [
            {"id": e.id, "text": e.text, "category": e.category}
            for e in scenario.policy_zone.elements
        ],
        "selected": list(state.policy.selected),
        "submitted": state.policy.submitted,
        "gap_report": gap_report_to_json(report),
    }


def player_view(state: SessionState, scenario: Scenario, now: float) -> dict[str, Any]:
    """The complete client-facing projection of one session."""
    zones: dict[str, Any] = {}
    if state.zone_entered_at is not None:
        zones["zone1"] = _zone1_view(state, scenario)
    if len(state.zone_results) >= 1:
        zones["zone2"] = _zone2_view(state, scenario)
    if len(state.zone_results) >= 2:
        zones["zone3"] = _zone3_view(state, scenario)

    hints: dict[str, Any] = {}
    for puzzle in scenario.hints:
        used = state.hints_used.get(puzzle.id, 0)
        hints[puzzle.id] = {
            "zone": puzzle.zone,
            "total_tiers": len(puzzle.tiers),
            "revealed": list(puzzle.tiers[:used]),
        }

    return {
        "session_id": state.session_id,
        "scenario": {
            "id": scenario.id,
            "title": scenario.title,
            "company_profile": scenario.company_profile,
            "time_limit": scenario.time_limit,
        },
        "phase": state.phase,
        "remaining_seconds": max(0.0, state.deadline - now),
        "zone_results": [
            {
                "zone_index": r.zone_index,
                "zone_score": r.zone_score,
                "passed": r.passed,
                "duration": r.duration,
                "attempts": r.attempts,
                "hints": r.hints,
            }
            for r in state.zone_results
        ],
        "total_score": state.total_score,
        "hints": hints,
        "zones": zones,
    }
