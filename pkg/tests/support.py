"""Builders, drivers, and audit helpers shared across the test suite."""

from __future__ import annotations

from typing import Any, Iterable, Mapping

from govroom.session import apply_action, create_session, creation_event, parse_action
from govroom.scenario import (
    ControlItem,
    Framework,
    HintPuzzle,
    MatchingSolution,
    MatchingZone,
    MazeNode,
    MazeSolution,
    MazeSpec,
    MazeZone,
    PolicyElement,
    PolicySolution,
    PolicyZone,
    ReferenceSolutions,
    RiskCard,
    Scenario,
    ValidationRule,
)

FORBIDDEN_VIEW_KEYS = {
    "answer_key",
    "is_true_risk",
    "is_flawed",
    "covers_risks",
    "references_frameworks",
    "contradicts",
    "reference_solutions",
    "tiers",
}


def risk(
    risk_id: str,
    likelihood: int,
    impact: int,
    true_risk: bool = True,
    title: str | None = None,
) -> RiskCard:
    return RiskCard(
        id=risk_id,
        title=title or risk_id,
        description=f"description of {risk_id}",
        likelihood=likelihood,
        impact=impact,
        is_true_risk=true_risk,
    )


def element(
    element_id: str,
    category: str,
    covers: Iterable[str] = (),
    references: Iterable[str] = (),
    contradicts: Iterable[str] = (),
    flawed: bool = False,
) -> PolicyElement:
    return PolicyElement(
        id=element_id,
        text=f"text of {element_id}",
        category=category,
        covers_risks=frozenset(covers),
        references_frameworks=frozenset(references),
        contradicts=frozenset(contradicts),
        is_flawed=flawed,
    )


def default_rules() -> tuple[ValidationRule, ...]:
    return (
        ValidationRule(id="core-sections", kind="completeness"),
        ValidationRule(id="cover-risks", kind="risk_coverage"),
        ValidationRule(id="align-frameworks", kind="framework_alignment"),
        ValidationRule(id="no-contradictions", kind="consistency"),
    )


def build_scenario(
    *,
    risks: tuple[RiskCard, ...] | None = None,
    maze: MazeSpec | None = None,
    frameworks: tuple[Framework, ...] | None = None,
    controls: tuple[ControlItem, ...] | None = None,
    elements: tuple[PolicyElement, ...] | None = None,
    existing: tuple[str, ...] | None = None,
    rules: tuple[ValidationRule, ...] | None = None,
    solutions: ReferenceSolutions | None = None,
    hints: tuple[HintPuzzle, ...] = (),
    thresholds: tuple[float, float, float] = (0.7, 0.7, 0.9),
    risk_threshold: int = 15,
    ranking_weights: tuple[float, float, float] = (0.5, 0.25, 0.25),
    hint_penalty: float = 0.05,
    zone_weights: tuple[float, float, float] = (1.0, 1.0, 1.0),
    time_limit: int = 2700,
) -> Scenario:
    """A small self-consistent scenario; any part can be swapped out.

    Constructed directly from dataclasses, bypassing the parser; useful for
    engine-level tests that need precise control over content. The default
    configuration lints clean.
    """
    if risks is None:
        risks = (risk("r_hi", 4, 5), risk("r_lo", 2, 3), risk("d_noise", 1, 1, true_risk=False))
    if maze is None:
        hall = MazeNode(id="hall", description="hall", encounter=None)
        rooms = tuple(
            MazeNode(id=f"room{i}", description=f"room {i}", encounter=r.id)
            for i, r in enumerate(risks)
        )
        out = MazeNode(id="out", description="out", encounter=None)
        nodes = (hall,) + rooms + (out,)
        edges: list[tuple[str, str]] = []
        for node in rooms + (out,):
            edges.append(("hall", node.id))
            edges.append((node.id, "hall"))
        maze = MazeSpec(nodes=nodes, edges=tuple(edges), entry="hall", exit="out")
    if frameworks is None:
        frameworks = (
            Framework(id="fw_a", name="Framework A", description="a"),
            Framework(id="fw_b", name="Framework B", description="b"),
        )
    if controls is None:
        controls = (
            ControlItem(id="c_one", text="one", answer_key=frozenset({"fw_a"})),
            ControlItem(id="c_both", text="both", answer_key=frozenset({"fw_a", "fw_b"})),
        )
    if elements is None:
        true_high = [
            r.id
            for r in risks
            if r.is_true_risk and r.likelihood * r.impact >= risk_threshold
        ]
        elements = (
            element("e_scope_bad", "scope", flawed=True),
            element("e_scope", "scope"),
            element("e_roles", "roles_responsibilities"),
            element("e_comp", "compliance", references=[f.id for f in frameworks]),
            element("e_enf", "enforcement"),
            element("e_cover", "other", covers=true_high),
        )
    if existing is None:
        existing = (elements[0].id,)
    if rules is None:
        rules = default_rules()
    if solutions is None:
        flagged = {r.id: r.is_true_risk for r in risks}
        placed = {n.encounter: n.id for n in maze.nodes if n.encounter is not None}
        path: list[str] = []
        for r in risks:
            node_id = placed.get(r.id)
            if node_id is not None:
                path += [node_id, maze.entry]
        from govroom.maze import rank_oracle

        ranking = rank_oracle({r for r in risks if r.is_true_risk})
        selected = tuple(e.id for e in elements if not e.is_flawed)
        solutions = ReferenceSolutions(
            maze=MazeSolution(path=tuple(path), flags=flagged, ranking=tuple(ranking)),
            matching=MatchingSolution(assignments={c.id: c.answer_key for c in controls}),
            policy=PolicySolution(selected=selected),
        )
    return Scenario(
        id="test-room",
        title="Test Room",
        company_profile="A test company.",
        time_limit=time_limit,
        risk_threshold=risk_threshold,
        zone_pass_thresholds=thresholds,
        zones=(
            MazeZone(risks=risks, maze=maze),
            MatchingZone(frameworks=frameworks, controls=controls),
            PolicyZone(elements=elements, existing_policy=existing, rules=rules),
        ),
        reference_solutions=solutions,
        hints=hints,
        ranking_weights=ranking_weights,
        hint_penalty=hint_penalty,
        zone_weights=zone_weights,
    )


class Driver:
    """Applies parsed actions against one session, collecting the event log.

    The solve_* helpers assume the default build_scenario content. Each action
    advances the clock, one second unless told otherwise.
    """

    def __init__(self, scenario: Scenario, now: float = 1000.0, session_id: str = "s-test"):
        self.scenario = scenario
        self.now = now
        self.state = create_session(scenario, now, session_id=session_id)
        self.events = [creation_event(self.state, scenario)]

    def do(self, raw: Mapping[str, Any], advance: float = 1.0):
        self.now += advance
        action = parse_action(raw)
        outcome = apply_action(self.state, action, self.now, self.scenario, seq=len(self.events))
        self.events.append(outcome.events[0])
        self.state = outcome.state
        return outcome

    def solve_zone1(self):
        self.do({"kind": "start"})
        self.do({"kind": "move", "to": "room0"})
        self.do({"kind": "flag_risk", "encounter": "r_hi", "decision": True})
        self.do({"kind": "move", "to": "hall"})
        self.do({"kind": "move", "to": "room1"})
        self.do({"kind": "flag_risk", "encounter": "r_lo", "decision": True})
        return self.do({"kind": "submit_ranking", "ranking": ["r_hi", "r_lo"]})

    def solve_zone2(self):
        self.do({"kind": "assign", "control": "c_one", "frameworks": ["fw_a"]})
        self.do({"kind": "assign", "control": "c_both", "frameworks": ["fw_a", "fw_b"]})
        return self.do({"kind": "submit_matching"})

    def solve_zone3(self):
        self.do({"kind": "edit_policy", "op": "remove", "element": "e_scope_bad"})
        for i, eid in enumerate(("e_scope", "e_roles", "e_comp", "e_enf", "e_cover")):
            self.do({"kind": "edit_policy", "op": "add", "element": eid, "position": i})
        return self.do({"kind": "submit_policy"})


def forbidden_keys_in(document: Any) -> set[str]:
    """Every forbidden key name appearing anywhere in a JSON-like structure."""
    found: set[str] = set()

    def walk(value: Any) -> None:
        if isinstance(value, Mapping):
            for key, nested in value.items():
                if key in FORBIDDEN_VIEW_KEYS:
                    found.add(key)
                walk(nested)
        elif isinstance(value, (list, tuple)):
            for nested in value:
                walk(nested)

    walk(document)
    return found
