import pytest

from govroom.errors import GameError
from govroom.policy import (
    FLAW_RULE_ID,
    ZoneContext,
    add_element,
    evaluate_policy,
    gap_report_to_json,
    initial_policy_state,
    remove_element,
    reorder_element,
    submit_policy,
)
from govroom.scenario import ValidationRule
from support import build_scenario, default_rules, element, risk


def ctx(*flagged: str, zone1: bool = True, zone2: bool = True) -> ZoneContext:
    return ZoneContext(
        flagged_true=frozenset(flagged), zone1_submitted=zone1, zone2_submitted=zone2
    )


@pytest.fixture
def scenario():
    return build_scenario()


def gap_keys(report):
    return [(g.kind, g.targets) for g in report.gaps]


class TestEditing:
    def test_initial_state_is_the_existing_policy(self, scenario):
        assert initial_policy_state(scenario).selected == ("e_scope_bad",)

    def test_add_inserts_at_position(self, scenario):
        state = initial_policy_state(scenario)
        state = add_element(state, "e_scope", 0, scenario)
        state = add_element(state, "e_roles", 2, scenario)
        assert state.selected == ("e_scope", "e_scope_bad", "e_roles")

    def test_add_unknown_element(self, scenario):
        with pytest.raises(GameError) as err:
            add_element(initial_policy_state(scenario), "e_missing", 0, scenario)
        assert err.value.code == "unknown-element"

    def test_add_duplicate(self, scenario):
        with pytest.raises(GameError) as err:
            add_element(initial_policy_state(scenario), "e_scope_bad", 0, scenario)
        assert err.value.code == "duplicate-add"

    @pytest.mark.parametrize("position", [-1, 2, 100])
    def test_add_position_out_of_bounds(self, scenario, position):
        with pytest.raises(GameError) as err:
            add_element(initial_policy_state(scenario), "e_scope", position, scenario)
        assert err.value.code == "position-out-of-bounds"

    def test_add_allows_position_equal_to_length(self, scenario):
        state = add_element(initial_policy_state(scenario), "e_scope", 1, scenario)
        assert state.selected == ("e_scope_bad", "e_scope")

    def test_remove(self, scenario):
        state = remove_element(initial_policy_state(scenario), "e_scope_bad")
        assert state.selected == ()

    def test_remove_not_selected(self, scenario):
        with pytest.raises(GameError) as err:
            remove_element(initial_policy_state(scenario), "e_scope")
        assert err.value.code == "not-selected"

    def test_reorder_moves_the_element(self, scenario):
        state = initial_policy_state(scenario)
        state = add_element(state, "e_scope", 1, scenario)
        state = add_element(state, "e_roles", 2, scenario)
        state = reorder_element(state, "e_roles", 0)
        assert state.selected == ("e_roles", "e_scope_bad", "e_scope")

    def test_reorder_to_same_position_is_identity(self, scenario):
        state = add_element(initial_policy_state(scenario), "e_scope", 1, scenario)
        assert reorder_element(state, "e_scope", 1).selected == state.selected

    def test_reorder_rejects_position_equal_to_length(self, scenario):
        state = add_element(initial_policy_state(scenario), "e_scope", 1, scenario)
        with pytest.raises(GameError) as err:
            reorder_element(state, "e_scope", 2)
        assert err.value.code == "position-out-of-bounds"

    def test_reorder_not_selected(self, scenario):
        with pytest.raises(GameError) as err:
            reorder_element(initial_policy_state(scenario), "e_scope", 0)
        assert err.value.code == "not-selected"

    def test_no_edits_after_submit(self, scenario):
        state, _ = submit_policy(initial_policy_state(scenario), ctx("r_hi"), scenario)
        for attempt in (
            lambda: add_element(state, "e_scope", 0, scenario),
            lambda: remove_element(state, "e_scope_bad"),
            lambda: reorder_element(state, "e_scope_bad", 0),
            lambda: submit_policy(state, ctx("r_hi"), scenario),
        ):
            with pytest.raises(GameError) as err:
                attempt()
            assert err.value.code == "zone-already-submitted"


class TestGapAnalysis:
    def test_requires_earlier_zones(self, scenario):
        state = initial_policy_state(scenario)
        for context in (ctx(zone1=False), ctx(zone2=False), ctx(zone1=False, zone2=False)):
            with pytest.raises(GameError) as err:
                evaluate_policy(state, context, scenario)
            assert err.value.code == "zones-not-complete"

    def test_initial_policy_gaps(self, scenario):
        report = evaluate_policy(initial_policy_state(scenario), ctx("r_hi", "r_lo"), scenario)
        assert not report.complete
        assert gap_keys(report) == [
            ("completeness", ("compliance",)),
            ("completeness", ("enforcement",)),
            ("completeness", ("roles_responsibilities",)),
            ("risk_coverage", ("r_hi",)),
            ("framework_alignment", ("fw_a",)),
            ("framework_alignment", ("fw_b",)),
            ("flaw_retained", ("e_scope_bad",)),
        ]
        assert all(g.blocking for g in report.gaps)
        assert all(g.message for g in report.gaps)

    def test_two_missing_categories_yield_two_completeness_gaps(self, scenario):
        state = initial_policy_state(scenario)
        state = remove_element(state, "e_scope_bad")
        state = add_element(state, "e_scope", 0, scenario)
        state = add_element(state, "e_roles", 1, scenario)
        report = evaluate_policy(state, ctx(), scenario)
        completeness = [g for g in report.gaps if g.kind == "completeness"]
        assert [g.targets for g in completeness] == [("compliance",), ("enforcement",)]

    def test_flagged_distractors_do_not_demand_coverage(self, scenario):
        report = evaluate_policy(initial_policy_state(scenario), ctx("d_noise"), scenario)
        assert all(g.kind != "risk_coverage" for g in report.gaps)

    def test_low_severity_flags_do_not_demand_coverage(self, scenario):
        report = evaluate_policy(initial_policy_state(scenario), ctx("r_lo"), scenario)
        assert all(g.kind != "risk_coverage" for g in report.gaps)

    def test_severity_threshold_param_overrides_scenario_default(self):
        rules = tuple(
            ValidationRule(id="cover-risks", kind="risk_coverage", params={"severity_threshold": 5})
            if rule.kind == "risk_coverage"
            else rule
            for rule in default_rules()
        )
        scenario = build_scenario(rules=rules)
        report = evaluate_policy(initial_policy_state(scenario), ctx("r_hi", "r_lo"), scenario)
        targets = [g.targets for g in report.gaps if g.kind == "risk_coverage"]
        assert targets == [("r_hi",), ("r_lo",)]

    def test_required_categories_param_overrides_default(self):
        rules = tuple(
            ValidationRule(
                id="core-sections", kind="completeness", params={"required_categories": ["scope"]}
            )
            if rule.kind == "completeness"
            else rule
            for rule in default_rules()
        )
        scenario = build_scenario(rules=rules)
        state = remove_element(initial_policy_state(scenario), "e_scope_bad")
        report = evaluate_policy(state, ctx(), scenario)
        completeness = [g for g in report.gaps if g.kind == "completeness"]
        assert [g.targets for g in completeness] == [("scope",)]

    def test_consistency_gap_only_when_both_selected(self):
        elements = (
            element("e_scope_bad", "scope", flawed=True),
            element("e_scope", "scope"),
            element("e_roles", "roles_responsibilities"),
            element("e_comp", "compliance", references=["fw_a", "fw_b"]),
            element("e_enf", "enforcement"),
            element("e_cover", "other", covers=["r_hi"]),
            element("e_mdm", "other", contradicts=["e_byod"]),
            element("e_byod", "other"),
        )
        scenario = build_scenario(elements=elements)
        base = remove_element(initial_policy_state(scenario), "e_scope_bad")
        one = add_element(base, "e_mdm", 0, scenario)
        report = evaluate_policy(one, ctx(), scenario)
        assert all(g.kind != "consistency" for g in report.gaps)
        both = add_element(one, "e_byod", 0, scenario)
        report = evaluate_policy(both, ctx(), scenario)
        conflicts = [g for g in report.gaps if g.kind == "consistency"]
        assert [g.targets for g in conflicts] == [("e_byod", "e_mdm")]

    def test_complete_policy_has_no_gaps(self, scenario):
        state = remove_element(initial_policy_state(scenario), "e_scope_bad")
        for eid in ("e_scope", "e_roles", "e_comp", "e_enf", "e_cover"):
            state = add_element(state, eid, len(state.selected), scenario)
        report = evaluate_policy(state, ctx("r_hi"), scenario)
        assert report.complete
        assert report.gaps == ()

    def test_evaluation_is_pure(self, scenario):
        state = initial_policy_state(scenario)
        first = evaluate_policy(state, ctx("r_hi"), scenario)
        second = evaluate_policy(state, ctx("r_hi"), scenario)
        assert first == second
        assert state == initial_policy_state(scenario)

    def test_order_of_selection_does_not_matter(self, scenario):
        forward = remove_element(initial_policy_state(scenario), "e_scope_bad")
        backward = remove_element(initial_policy_state(scenario), "e_scope_bad")
        for eid in ("e_scope", "e_roles"):
            forward = add_element(forward, eid, len(forward.selected), scenario)
        for eid in ("e_roles", "e_scope"):
            backward = add_element(backward, eid, 0, scenario)
        assert evaluate_policy(forward, ctx(), scenario) == evaluate_policy(
            backward, ctx(), scenario
        )

    def test_gap_report_json_shape(self, scenario):
        report = evaluate_policy(initial_policy_state(scenario), ctx(), scenario)
        document = gap_report_to_json(report)
        assert document["complete"] is False
        first = document["gaps"][0]
        assert set(first) == {"rule_id", "kind", "message", "targets", "blocking"}
        assert isinstance(first["targets"], list)


def ten_instance_scenario():
    """4 categories + 2 thresholded risks + 2 frameworks + 1 pair + 1 flaw."""
    risks = (risk("r_a", 4, 5), risk("r_b", 4, 4), risk("d", 1, 1, true_risk=False))
    elements = (
        element("e_scope_bad", "scope", flawed=True),
        element("e_scope", "scope"),
        element("e_roles", "roles_responsibilities"),
        element("e_comp", "compliance", references=["fw_a", "fw_b"]),
        element("e_enf", "enforcement"),
        element("e_cov_a", "other", covers=["r_a"]),
        element("e_cov_b", "other", covers=["r_b"]),
        element("e_mdm", "other", contradicts=["e_byod"]),
        element("e_byod", "other"),
    )
    return build_scenario(risks=risks, elements=elements)


class TestSubmission:
    def test_instance_counting(self):
        scenario = ten_instance_scenario()
        state = remove_element(initial_policy_state(scenario), "e_scope_bad")
        for eid in ("e_scope", "e_roles", "e_comp", "e_enf", "e_cov_a"):
            state = add_element(state, eid, len(state.selected), scenario)
        _, result = submit_policy(state, ctx("r_a", "r_b"), scenario)
        assert result.total_instances == 10
        assert result.satisfied_instances == 9
        assert result.zone_score == pytest.approx(0.9)
        assert [g.targets for g in result.report.gaps] == [("r_b",)]

    def test_any_blocking_gap_fails_even_at_threshold(self):
        scenario = ten_instance_scenario()
        state = remove_element(initial_policy_state(scenario), "e_scope_bad")
        for eid in ("e_scope", "e_roles", "e_comp", "e_enf", "e_cov_a"):
            state = add_element(state, eid, len(state.selected), scenario)
        _, result = submit_policy(state, ctx("r_a", "r_b"), scenario)
        assert result.zone_score >= scenario.zone_pass_thresholds[2]
        assert not result.passed

    def test_complete_policy_passes(self, scenario):
        state = remove_element(initial_policy_state(scenario), "e_scope_bad")
        for eid in ("e_scope", "e_roles", "e_comp", "e_enf", "e_cover"):
            state = add_element(state, eid, len(state.selected), scenario)
        new_state, result = submit_policy(state, ctx("r_hi"), scenario)
        assert new_state.submitted
        assert result.zone_score == 1.0
        assert result.passed
        assert result.report.complete

    def test_flaw_retained_is_checked_without_any_authored_rule(self, scenario):
        bare = build_scenario(rules=(ValidationRule(id="only", kind="consistency"),))
        _, result = submit_policy(initial_policy_state(bare), ctx(), bare)
        assert result.total_instances == 1
        assert result.satisfied_instances == 0
        assert [g.rule_id for g in result.report.gaps] == [FLAW_RULE_ID]

    def test_no_instances_scores_one(self):
        elements = (
            element("e_scope", "scope"),
            element("e_roles", "roles_responsibilities"),
            element("e_comp", "compliance", references=["fw_a", "fw_b"]),
            element("e_enf", "enforcement"),
            element("e_cover", "other", covers=["r_hi"]),
        )
        scenario = build_scenario(
            elements=elements,
            existing=(),
            rules=(ValidationRule(id="only", kind="consistency"),),
        )
        _, result = submit_policy(initial_policy_state(scenario), ctx(), scenario)
        assert result.total_instances == 0
        assert result.zone_score == 1.0
        assert result.passed
