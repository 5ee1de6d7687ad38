"""Authoring linter: solvability and quality checks beyond schema validation.

Errors make a scenario unplayable or unwinnable and block session creation;
warnings flag authoring smells (missing distractors, no overlap controls,
one-way contradictions) without blocking play.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matching, maze, policy
from .errors import GameError
from .scenario import Scenario, parse_scenario


@dataclass(frozen=True)
class LintIssue:
    code: str
    message: str


@dataclass(frozen=True)
class LintReport:
    errors: tuple[LintIssue, ...]
    warnings: tuple[LintIssue, ...]

    @property
    def passed(self) -> bool:
        return not self.errors


def lint_document(document: bytes | str) -> LintReport:
    """Lint a raw scenario file; parse failures become single-issue reports."""
    try:
        scenario = parse_scenario(document)
    except GameError as exc:
        return LintReport(errors=(LintIssue(code=exc.code, message=exc.message),), warnings=())
    return lint_scenario(scenario)


def _check_maze_solution(scenario: Scenario, errors: list[LintIssue]) -> None:
    solution = scenario.reference_solutions.maze
    state = maze.initial_maze_state(scenario.maze_zone.maze)
    for step in solution.path:
        try:
            state = maze.move(state, step, scenario.maze_zone.maze)
        except GameError as exc:
            errors.append(
                LintIssue("invalid-reference-path", f'maze path step "{step}": {exc.message}')
            )
            return
    for risk_id in sorted(solution.flags):
        try:
            state = maze.flag_risk(state, risk_id, solution.flags[risk_id], scenario.maze_zone.maze)
        except GameError as exc:
            errors.append(
                LintIssue("invalid-reference-flags", f'flag "{risk_id}": {exc.message}')
            )
            return
    try:
        _, result = maze.submit_ranking(state, list(solution.ranking), scenario)
    except GameError as exc:
        errors.append(LintIssue("invalid-reference-ranking", exc.message))
        return
    if not result.passed:
        errors.append(
            LintIssue(
                "reference-solution-fails",
                f"zone 1 reference solution scores {result.zone_score:.3f}, "
                f"below threshold {scenario.zone_pass_thresholds[0]}",
            )
        )


def _check_matching_solution(scenario: Scenario, errors: list[LintIssue]) -> None:
    solution = scenario.reference_solutions.matching
    state = matching.initial_match_state()
    for control_id in sorted(solution.assignments):
        try:
            state = matching.assign(state, control_id, solution.assignments[control_id], scenario)
        except GameError as exc:
            errors.append(
                LintIssue("invalid-reference-assignments", f'control "{control_id}": {exc.message}')
            )
            return
    _, result = matching.score_matching(state, scenario)
    if not result.passed:
        errors.append(
            LintIssue(
                "reference-solution-fails",
                f"zone 2 reference solution scores {result.zone_score:.3f}, "
                f"below threshold {scenario.zone_pass_thresholds[1]}",
            )
        )


def _check_policy_solution(scenario: Scenario, errors: list[LintIssue]) -> None:
    solution = scenario.reference_solutions.policy
    flagged_true = frozenset(
        risk_id for risk_id, decision in scenario.reference_solutions.maze.flags.items() if decision
    )
    ctx = policy.ZoneContext(flagged_true=flagged_true, zone1_submitted=True, zone2_submitted=True)
    state = policy.PolicyState(selected=solution.selected, submitted=False)
    _, result = policy.submit_policy(state, ctx, scenario)
    if not result.passed:
        detail = result.report.gaps[0].message if result.report.gaps else (
            f"scores {result.zone_score:.3f}, below threshold {scenario.zone_pass_thresholds[2]}"
        )
        errors.append(
            LintIssue("reference-solution-fails", f"zone 3 reference solution fails: {detail}")
        )


def lint_scenario(scenario: Scenario) -> LintReport:
    errors: list[LintIssue] = []
    warnings: list[LintIssue] = []
    spec = scenario.maze_zone.maze
    reachable = spec.reachable_from_entry()

    if spec.exit not in reachable:
        errors.append(
            LintIssue("unreachable-exit", f'exit node "{spec.exit}" is not reachable from the entry')
        )

    placements: dict[str, list[str]] = {}
    for node in spec.nodes:
        if node.encounter is not None:
            placements.setdefault(node.encounter, []).append(node.id)
    for risk in scenario.maze_zone.risks:
        if not risk.is_true_risk:
            continue
        nodes = placements.get(risk.id, [])
        if not nodes:
            warnings.append(
                LintIssue("unplaced-risk", f'true risk "{risk.id}" is not placed on any maze node')
            )
        elif not any(node_id in reachable for node_id in nodes):
            errors.append(
                LintIssue(
                    "unreachable-risk",
                    f'true risk "{risk.id}" is only placed on unreachable nodes',
                )
            )

    for element in scenario.policy_zone.elements:
        for other_id in sorted(element.contradicts):
            other = scenario.elements_by_id[other_id]
            if element.id not in other.contradicts:
                warnings.append(
                    LintIssue(
                        "asymmetric-contradiction",
                        f'"{element.id}" declares a contradiction with "{other_id}" '
                        "but not the other way around",
                    )
                )

    if all(risk.is_true_risk for risk in scenario.maze_zone.risks):
        warnings.append(
            LintIssue("no-distractors", "every risk is a true risk; zone 1 cannot test precision")
        )
    if all(len(control.answer_key) == 1 for control in scenario.matching_zone.controls):
        warnings.append(
            LintIssue(
                "no-overlap-controls",
                "no control maps to multiple frameworks; zone 2 cannot test overlap reasoning",
            )
        )

    _check_maze_solution(scenario, errors)
    _check_matching_solution(scenario, errors)
    _check_policy_solution(scenario, errors)

    return LintReport(errors=tuple(errors), warnings=tuple(warnings))


def format_report(report: LintReport) -> str:
    lines = [f"ERROR {issue.code}: {issue.message}" for issue in report.errors]
    lines += [f"WARNING {issue.code}: {issue.message}" for issue in report.warnings]
    lines.append("PASS" if report.passed else "FAIL")
    return "\n".join(lines)
