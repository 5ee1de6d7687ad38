"""Zone 3 engine: policy composition, rule-based gap analysis, and scoring.

The gap evaluator runs the scenario's authored rules (completeness,
risk_coverage, framework_alignment, consistency) plus the built-in
flaw_retained check. Scoring counts rule instances: one per required
category, one per thresholded flagged risk, one per answer-keyed framework,
one per library contradiction pair, and one per flawed library element.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import (
    DUPLICATE_ADD,
    NOT_SELECTED,
    POSITION_OUT_OF_BOUNDS,
    UNKNOWN_ELEMENT,
    ZONE_ALREADY_SUBMITTED,
    ZONES_NOT_COMPLETE,
    GameError,
)
from .scenario import REQUIRED_CATEGORIES, Scenario, severity

GAP_KINDS = ("completeness", "risk_coverage", "framework_alignment", "consistency", "flaw_retained")

FLAW_RULE_ID = "flaw-retained"  # built-in check, not an authorable rule


@dataclass(frozen=True)
class PolicyState:
    selected: tuple[str, ...]
    submitted: bool


@dataclass(frozen=True)
class ZoneContext:
    """What zone 3 validation needs to know about the first two zones."""

    flagged_true: frozenset[str]  # risk ids the player flagged true in zone 1
    zone1_submitted: bool
    zone2_submitted: bool


@dataclass(frozen=True)
class Gap:
    rule_id: str
    kind: str
    message: str
    targets: tuple[str, ...]
    blocking: bool


@dataclass(frozen=True)
class GapReport:
    gaps: tuple[Gap, ...]
    complete: bool


@dataclass(frozen=True)
class PolicyResult:
    report: GapReport
    satisfied_instances: int
    total_instances: int
    zone_score: float
    passed: bool


def gap_report_to_json(report: GapReport) -> dict:
    return {
        "complete": report.complete,
        "gaps": [
            {
                "rule_id": gap.rule_id,
                "kind": gap.kind,
                "message": gap.message,
                "targets": list(gap.targets),
                "blocking": gap.blocking,
            }
            for gap in report.gaps
        ],
    }


def initial_policy_state(scenario: Scenario) -> PolicyState:
    return PolicyState(selected=scenario.policy_zone.existing_policy, submitted=False)


def add_element(state: PolicyState, element: str, position: int, scenario: Scenario) -> PolicyState:
    if state.submitted:
        raise GameError(ZONE_ALREADY_SUBMITTED, "zone 3 has already been submitted")
    if element not in scenario.elements_by_id:
        raise GameError(UNKNOWN_ELEMENT, f'unknown element "{element}"')
    if element in state.selected:
        raise GameError(DUPLICATE_ADD, f'element "{element}" is already in the policy')
    if not 0 <= position <= len(state.selected):
        raise GameError(
            POSITION_OUT_OF_BOUNDS,
            f"position {position} is out of bounds for a policy of {len(state.selected)} elements",
        )
    selected = list(state.selected)
    selected.insert(position, element)
    return replace(state, selected=tuple(selected))


def remove_element(state: PolicyState, element: str) -> PolicyState:
    if state.submitted:
        raise GameError(ZONE_ALREADY_SUBMITTED, "zone 3 has already been submitted")
    if element not in state.selected:
        raise GameError(NOT_SELECTED, f'element "{element}" is not in the policy')
    return replace(state, selected=tuple(e for e in state.selected if e != element))


def reorder_element(state: PolicyState, element: str, position: int) -> PolicyState:
    if state.submitted:
        raise GameError(ZONE_ALREADY_SUBMITTED, "zone 3 has already been submitted")
    if element not in state.selected:
        raise GameError(NOT_SELECTED, f'element "{element}" is not in the policy')
    if not 0 <= position < len(state.selected):
        raise GameError(
            POSITION_OUT_OF_BOUNDS,
            f"position {position} is out of bounds for a policy of {len(state.selected)} elements",
        )
    selected = [e for e in state.selected if e != element]
    selected.insert(position, element)
    return replace(state, selected=tuple(selected))


def _instances(
    state: PolicyState, ctx: ZoneContext, scenario: Scenario
) -> list[tuple[int, tuple[str, ...], str, Gap | None]]:
    """Every rule instance as (kind order, sort targets, rule id, gap when violated)."""
    selected_set = set(state.selected)
    elements = scenario.elements_by_id
    out: list[tuple[int, tuple[str, ...], str, Gap | None]] = []

    selected_categories = {elements[eid].category for eid in state.selected}
    covered_risks: set[str] = set()
    referenced_frameworks: set[str] = set()
    for eid in state.selected:
        covered_risks |= elements[eid].covers_risks
        referenced_frameworks |= elements[eid].references_frameworks

    for rule in scenario.policy_zone.rules:
        if rule.kind == "completeness":
            categories = rule.params.get("required_categories", REQUIRED_CATEGORIES)
            for category in categories:
                gap = None
                if category not in selected_categories:
                    gap = Gap(
                        rule_id=rule.id,
                        kind="completeness",
                        message=f'no selected element covers the "{category}" category',
                        targets=(category,),
                        blocking=True,
                    )
                out.append((0, (category,), rule.id, gap))
        elif rule.kind == "risk_coverage":
            threshold = rule.params.get("severity_threshold", scenario.risk_threshold)
            required = sorted(
                rid
                for rid in ctx.flagged_true
                if rid in scenario.true_risk_ids
                and severity(scenario.risks_by_id[rid]) >= threshold
            )
            for rid in required:
                gap = None
                if rid not in covered_risks:
                    gap = Gap(
                        rule_id=rule.id,
                        kind="risk_coverage",
                        message=f'high-severity risk "{rid}" is not covered by any selected element',
                        targets=(rid,),
                        blocking=True,
                    )
                out.append((1, (rid,), rule.id, gap))
        elif rule.kind == "framework_alignment":
            for fid in sorted(scenario.keyed_framework_ids):
                gap = None
                if fid not in referenced_frameworks:
                    gap = Gap(
                        rule_id=rule.id,
                        kind="framework_alignment",
                        message=f'framework "{fid}" is never referenced by the composed policy',
                        targets=(fid,),
                        blocking=True,
                    )
                out.append((2, (fid,), rule.id, gap))
        else:  # consistency
            for a, b in scenario.contradiction_pairs:
                gap = None
                if a in selected_set and b in selected_set:
                    gap = Gap(
                        rule_id=rule.id,
                        kind="consistency",
                        message=f'elements "{a}" and "{b}" contradict each other',
                        targets=(a, b),
                        blocking=True,
                    )
                out.append((3, (a, b), rule.id, gap))

    for eid in sorted(scenario.flawed_element_ids):
        gap = None
        if eid in selected_set:
            gap = Gap(
                rule_id=FLAW_RULE_ID,
                kind="flaw_retained",
                message=f'element "{eid}" is a known-flawed statement and must be removed',
                targets=(eid,),
                blocking=True,
            )
        out.append((4, (eid,), FLAW_RULE_ID, gap))
    return out


def evaluate_policy(state: PolicyState, ctx: ZoneContext, scenario: Scenario) -> GapReport:
    if not (ctx.zone1_submitted and ctx.zone2_submitted):
        raise GameError(ZONES_NOT_COMPLETE, "zones 1 and 2 must be submitted before policy validation")
    instances = _instances(state, ctx, scenario)
    gaps = [
        gap
        for _, _, _, gap in sorted(instances, key=lambda item: (item[0], item[1], item[2]))
        if gap is not None
    ]
    return GapReport(gaps=tuple(gaps), complete=not any(g.blocking for g in gaps))


def submit_policy(
    state: PolicyState, ctx: ZoneContext, scenario: Scenario
) -> tuple[PolicyState, PolicyResult]:
    if state.submitted:
        raise GameError(ZONE_ALREADY_SUBMITTED, "zone 3 has already been submitted")
    report = evaluate_policy(state, ctx, scenario)
    instances = _instances(state, ctx, scenario)
    total = len(instances)
    violated = sum(1 for _, _, _, gap in instances if gap is not None)
    zone_score = (total - violated) / total if total else 1.0
    result = PolicyResult(
        report=report,
        satisfied_instances=total - violated,
        total_instances=total,
        zone_score=zone_score,
        passed=report.complete and zone_score >= scenario.zone_pass_thresholds[2],
    )
    return replace(state, submitted=True), result
