"""Headless bots: the reference player and a seeded random player.

The reference bot executes the scenario's reference solutions through the
ordinary action pipeline and is expected to complete with full scores on any
lint-clean scenario. The random bot emits plausible player inputs (including
wrong-zone and otherwise rejectable ones) and is used to fuzz gating.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Mapping

from .maze import rank_oracle
from .scenario import Scenario
from .session import (
    SessionState,
    apply_action,
    create_session,
    creation_event,
    parse_action,
)
from .telemetry import GameEvent


@dataclass(frozen=True)
class BotRun:
    state: SessionState
    events: tuple[GameEvent, ...]


class _Driver:
    def __init__(self, scenario: Scenario, start_time: float, session_id: str | None, validated: bool):
        self.scenario = scenario
        self.now = start_time
        self.state = create_session(scenario, start_time, session_id=session_id, validated=validated)
        self.events: list[GameEvent] = [creation_event(self.state, scenario)]

    def step(self, raw: Mapping[str, Any], advance: float = 1.0, strict: bool = True) -> None:
        self.now += advance
        action = parse_action(raw)
        outcome = apply_action(self.state, action, self.now, self.scenario, seq=len(self.events))
        self.events.append(outcome.events[0])
        self.state = outcome.state
        if strict and outcome.error is not None:
            raise outcome.error

    def run(self) -> BotRun:
        return BotRun(state=self.state, events=tuple(self.events))


def reference_play(
    scenario: Scenario,
    start_time: float = 0.0,
    session_id: str | None = None,
    validated: bool = False,
) -> BotRun:
    """Play the reference solutions end to end; raises on any rejected action."""
    driver = _Driver(scenario, start_time, session_id, validated)
    solution = scenario.reference_solutions
    driver.step({"kind": "start"})

    for node in solution.maze.path:
        driver.step({"kind": "move", "to": node})
    for risk_id in sorted(solution.maze.flags):
        driver.step(
            {"kind": "flag_risk", "encounter": risk_id, "decision": solution.maze.flags[risk_id]}
        )
    driver.step({"kind": "submit_ranking", "ranking": list(solution.maze.ranking)})

    for control_id in sorted(solution.matching.assignments):
        driver.step(
            {
                "kind": "assign",
                "control": control_id,
                "frameworks": sorted(solution.matching.assignments[control_id]),
            }
        )
    driver.step({"kind": "submit_matching"})

    target = list(solution.policy.selected)
    for element_id in [e for e in driver.state.policy.selected if e not in target]:
        driver.step({"kind": "edit_policy", "op": "remove", "element": element_id})
    for element_id in [e for e in target if e not in driver.state.policy.selected]:
        driver.step(
            {
                "kind": "edit_policy",
                "op": "add",
                "element": element_id,
                "position": len(driver.state.policy.selected),
            }
        )
    driver.step({"kind": "submit_policy"})
    return driver.run()


def _random_action(rng: random.Random, scenario: Scenario, state: SessionState) -> dict[str, Any]:
    spec = scenario.maze_zone.maze
    risk_ids = sorted(scenario.risks_by_id)
    control_ids = sorted(scenario.controls_by_id)
    framework_ids = sorted(scenario.frameworks_by_id)
    element_ids = sorted(scenario.elements_by_id)
    kind = rng.choice(
        (
            "start",
            "move",
            "move",
            "flag_risk",
            "flag_risk",
            "submit_ranking",
            "assign",
            "assign",
            "submit_matching",
            "edit_policy",
            "edit_policy",
            "submit_policy",
            "request_hint",
        )
    )
    if kind == "start":
        return {"kind": "start"}
    if kind == "move":
        exits = spec.adjacency.get(state.maze.current_node, ())
        if exits and rng.random() < 0.8:
            return {"kind": "move", "to": rng.choice(exits)}
        return {"kind": "move", "to": rng.choice([n.id for n in spec.nodes])}
    if kind == "flag_risk":
        return {
            "kind": "flag_risk",
            "encounter": rng.choice(risk_ids),
            "decision": rng.random() < 0.7,
        }
    if kind == "submit_ranking":
        eligible = sorted(
            rid
            for rid, decision in state.maze.flags.items()
            if decision and rid in scenario.true_risk_ids
        )
        if rng.random() < 0.8:
            if rng.random() < 0.5:
                ranking = rank_oracle({scenario.risks_by_id[r] for r in eligible})
            else:
                ranking = list(eligible)
                rng.shuffle(ranking)
        else:
            ranking = rng.sample(risk_ids, k=rng.randint(0, len(risk_ids)))
        return {"kind": "submit_ranking", "ranking": ranking}
    if kind == "assign":
        return {
            "kind": "assign",
            "control": rng.choice(control_ids),
            "frameworks": rng.sample(framework_ids, k=rng.randint(0, len(framework_ids))),
        }
    if kind == "submit_matching":
        return {"kind": "submit_matching"}
    if kind == "edit_policy":
        op = rng.choice(("add", "remove", "reorder"))
        element = rng.choice(element_ids)
        if op == "remove":
            return {"kind": "edit_policy", "op": "remove", "element": element}
        position = rng.randint(-1, len(state.policy.selected) + 1)
        return {"kind": "edit_policy", "op": op, "element": element, "position": position}
    if kind == "submit_policy":
        return {"kind": "submit_policy"}
    puzzles = sorted(scenario.puzzles_by_id) or ["none"]
    return {"kind": "request_hint", "puzzle": rng.choice(puzzles)}


def random_play(
    scenario: Scenario,
    seed: int,
    steps: int = 200,
    start_time: float = 0.0,
    session_id: str | None = None,
    validated: bool = False,
) -> BotRun:
    """Play seeded random inputs until completion, expiry, or the step cap."""
    rng = random.Random(seed)
    driver = _Driver(scenario, start_time, session_id, validated)
    for _ in range(steps):
        if driver.state.phase in ("completed", "expired"):
            break
        advance = rng.uniform(0.5, 5.0)
        if rng.random() < 0.005:
            advance += scenario.time_limit  # occasionally run out the clock
        raw = _random_action(rng, scenario, driver.state)
        driver.step(raw, advance=advance, strict=False)
    return driver.run()
