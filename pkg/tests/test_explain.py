"""Deficit, price, and displacement reporting plus the renderers."""

from __future__ import annotations

import json

import pytest

from quotacount import (
    CategoryBound,
    CriterionSpec,
    RelaxationPolicy,
    SolveStatus,
    at_least,
    at_most,
    build_report_bundle,
    deficit_report,
    displacement_report,
    exact,
    price_report,
    render_report,
    solve,
)
from quotacount.model import UnknownCandidateError
from quotacount.solver import InfeasibleError

from conftest import make_candidate, make_config, make_tally


def small_instance():
    """k=3: b is forced in because zone 2 has exactly one member."""
    roster = [
        make_candidate("a", gender="F", zone="1"),
        make_candidate("b", gender="M", zone="2"),
        make_candidate("c", gender="M", zone="1"),
        make_candidate("d", gender="F", zone="1"),
        make_candidate("e", gender="M", zone="1"),
    ]
    gender = CriterionSpec(
        "gender",
        (CategoryBound("M", at_least(1)), CategoryBound("F", at_least(1))),
        preference_rank=1,
    )
    zone = CriterionSpec(
        "zone",
        (CategoryBound("1", at_most(2)), CategoryBound("2", at_least(1))),
        preference_rank=2,
    )
    cfg = make_config(roster, [gender, zone], seats=3, max_selections=3)
    tally = make_tally({"a": 20, "b": 2, "c": 15, "d": 12, "e": 9})
    return tally, cfg


class TestDeficitReport:
    def test_rows_follow_criterion_and_category_order(self):
        _, cfg = small_instance()
        report = deficit_report({"a", "c"}, cfg)
        keys = [(r.attribute, r.category) for r in report.rows]
        assert keys == [
            ("gender", "M"),
            ("gender", "F"),
            ("zone", "1"),
            ("zone", "2"),
        ]

    def test_difference_is_reached_minus_lower(self):
        _, cfg = small_instance()
        report = deficit_report({"a", "c"}, cfg)
        by_key = {(r.attribute, r.category): r for r in report.rows}
        assert by_key[("gender", "M")].reached == 1
        assert by_key[("gender", "M")].difference == 0
        assert by_key[("zone", "2")].reached == 0
        assert by_key[("zone", "2")].difference == -1
        # AT_MOST rows have lower edge 0, so they can never go negative
        assert by_key[("zone", "1")].difference == 2

    def test_unmet_lists_only_negative_rows(self):
        _, cfg = small_instance()
        report = deficit_report({"a", "c"}, cfg)
        assert [(r.attribute, r.category) for r in report.unmet] == [("zone", "2")]

    def test_empty_partial_committee(self):
        _, cfg = small_instance()
        report = deficit_report([], cfg)
        assert all(r.reached == 0 for r in report.rows)

    def test_unknown_member_rejected(self):
        _, cfg = small_instance()
        with pytest.raises(UnknownCandidateError):
            deficit_report({"zz"}, cfg)


class TestPriceReport:
    def test_small_instance_price(self):
        tally, cfg = small_instance()
        report = price_report(tally, cfg)
        # unconstrained top 3: a + c + d = 47; constrained must seat b
        assert report.unconstrained_objective == 47
        assert report.constrained_objective == 37
        assert report.price == 10
        assert report.total_votes_cast == 58
        # lost votes: 11 (19.0%) unconstrained vs 21 (36.2%) constrained
        assert report.lost_votes_unconstrained == 11
        assert report.lost_votes_constrained == 21
        assert report.lost_votes_unconstrained_pct == 19.0
        assert report.lost_votes_constrained_pct == 36.2
        assert report.price_pct == pytest.approx(17.2)

    def test_price_pct_is_difference_of_rounded_percentages(self):
        tally, cfg = small_instance()
        report = price_report(tally, cfg)
        assert report.price_pct == pytest.approx(
            report.lost_votes_constrained_pct - report.lost_votes_unconstrained_pct
        )

    def test_zero_price_when_criteria_cost_nothing(self):
        roster = [make_candidate("a", g="x"), make_candidate("b", g="y")]
        crit = CriterionSpec(
            "g",
            (CategoryBound("x", at_least(1)), CategoryBound("y", at_least(1))),
            preference_rank=1,
        )
        cfg = make_config(roster, [crit], seats=2)
        report = price_report(make_tally({"a": 5, "b": 3}), cfg)
        assert report.price == 0
        assert report.price_pct == 0.0

    def test_infeasible_instance_raises(self):
        roster = [make_candidate("a", g="x"), make_candidate("b", g="x")]
        crit = CriterionSpec(
            "g",
            (CategoryBound("x", at_most(1)), CategoryBound("y", at_least(1))),
            preference_rank=1,
        )
        cfg = make_config(
            roster, [crit], seats=2, relaxation_policy=RelaxationPolicy.FAIL
        )
        with pytest.raises(InfeasibleError):
            price_report(make_tally({"a": 5, "b": 3}), cfg)

    def test_round_trip(self):
        tally, cfg = small_instance()
        report = price_report(tally, cfg)
        from quotacount.explain import PriceReport

        assert PriceReport.from_dict(report.to_dict()) == report


class TestDisplacementReport:
    def test_forced_candidate_below_cut_is_explained(self):
        tally, cfg = small_instance()
        outcome = solve(tally, cfg)
        assert outcome.committee == {"a", "c", "b"}
        records = displacement_report(outcome, tally, cfg)
        [rec] = records
        assert rec.candidate_id == "b"
        assert rec.votes == 2
        assert rec.forced
        # b owes the seat to the one-member zone 2
        assert ("zone", "2") in rec.categories
        # d (12) and e (9) both outpolled b yet sat out
        assert rec.displaced == (("d", 12), ("e", 9))

    def test_no_records_when_top_k_wins_unchanged(self):
        roster = [make_candidate("a", g="x"), make_candidate("b", g="y")]
        crit = CriterionSpec(
            "g",
            (CategoryBound("x", at_least(1)), CategoryBound("y", at_least(1))),
            preference_rank=1,
        )
        cfg = make_config(roster, [crit], seats=2)
        tally = make_tally({"a": 5, "b": 3})
        outcome = solve(tally, cfg)
        assert displacement_report(outcome, tally, cfg) == ()

    def test_infeasible_outcome_rejected(self):
        roster = [make_candidate("a", g="x"), make_candidate("b", g="x")]
        crit = CriterionSpec(
            "g",
            (CategoryBound("x", at_most(1)), CategoryBound("y", at_least(1))),
            preference_rank=1,
        )
        cfg = make_config(
            roster, [crit], seats=2, relaxation_policy=RelaxationPolicy.FAIL
        )
        tally = make_tally({"a": 5, "b": 3})
        outcome = solve(tally, cfg)
        assert outcome.status == SolveStatus.INFEASIBLE
        with pytest.raises(ValueError):
            displacement_report(outcome, tally, cfg)


class TestReportBundle:
    def test_bundle_carries_all_parts(self):
        tally, cfg = small_instance()
        outcome = solve(tally, cfg)
        bundle = build_report_bundle(cfg, tally, outcome)
        assert bundle.price is not None
        assert bundle.criteria_status is not None
        assert len(bundle.displacement) == 1
        payload = bundle.to_dict()
        assert payload["election_id"] == "test"
        assert payload["outcome"]["objective"] == 37

    def test_infeasible_bundle_is_sparse(self):
        roster = [make_candidate("a", g="x"), make_candidate("b", g="x")]
        crit = CriterionSpec(
            "g",
            (CategoryBound("x", at_most(1)), CategoryBound("y", at_least(1))),
            preference_rank=1,
        )
        cfg = make_config(
            roster, [crit], seats=2, relaxation_policy=RelaxationPolicy.FAIL
        )
        tally = make_tally({"a": 5, "b": 3})
        bundle = build_report_bundle(cfg, tally, solve(tally, cfg))
        assert bundle.price is None
        assert bundle.criteria_status is None
        assert bundle.displacement == ()


class TestRenderReport:
    def bundle(self):
        tally, cfg = small_instance()
        return build_report_bundle(cfg, tally, solve(tally, cfg))

    def test_json_is_lossless_and_parseable(self):
        bundle = self.bundle()
        payload = json.loads(render_report(bundle, "json"))
        assert payload == json.loads(json.dumps(bundle.to_dict()))

    def test_text_mentions_core_figures(self):
        text = render_report(self.bundle(), "text")
        assert "37" in text  # objective
        assert "b" in text
        assert "elected" in text.lower()

    def test_markdown_has_table_pipes(self):
        md = render_report(self.bundle(), "markdown")
        assert "|" in md
        assert "---" in md

    def test_text_and_markdown_share_content(self):
        text = render_report(self.bundle(), "text")
        md = render_report(self.bundle(), "markdown")
        assert "10" in text and "10" in md  # the price figure

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError):
            render_report(self.bundle(), "pdf")

    def test_narrative_includes_displacement_disclaimer(self):
        text = render_report(self.bundle(), "text")
        # category attribution is heuristic; the report must say so
        assert "heuristic" in text.lower()
