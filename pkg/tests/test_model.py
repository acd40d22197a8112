"""Core data model: bounds, configs, validation, rounding, codecs."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quotacount import (
    Bound,
    BoundType,
    CategoryBound,
    CriterionSpec,
    ElectionConfig,
    InvalidConfigError,
    RelaxationPolicy,
    ShareSumError,
    TiePolicy,
    at_least,
    at_most,
    bounds_from_percentages,
    canonical_json,
    exact,
    percent_1dp,
    percent_tenths,
    validate_config,
)
from quotacount.model import (
    read_candidates_csv,
    read_config_json,
    write_candidates_csv,
    write_config_json,
)

from conftest import make_candidate, make_config


class TestBound:
    def test_exact_admits_only_its_value(self):
        b = exact(3)
        assert not b.admits(2)
        assert b.admits(3)
        assert not b.admits(4)

    def test_at_least_is_one_sided(self):
        b = at_least(2)
        assert not b.admits(1)
        assert b.admits(2)
        assert b.admits(17)

    def test_at_most_is_one_sided(self):
        b = at_most(2)
        assert b.admits(0)
        assert b.admits(2)
        assert not b.admits(3)

    def test_lower_edge(self):
        assert exact(3).lower == 3
        assert at_least(2).lower == 2
        assert at_most(5).lower == 0

    def test_upper_edge_uses_default_for_at_least(self):
        assert exact(3).upper(17) == 3
        assert at_most(5).upper(17) == 5
        assert at_least(2).upper(17) == 17

    def test_negative_value_rejected(self):
        with pytest.raises(ValueError):
            Bound(BoundType.EXACT, -1)

    def test_round_trip(self):
        for b in (exact(3), at_least(0), at_most(9)):
            assert Bound.from_dict(b.to_dict()) == b

    def test_describe_mentions_value(self):
        assert "3" in exact(3).describe()


class TestCriterionSpec:
    def spec(self) -> CriterionSpec:
        return CriterionSpec(
            attribute="gender",
            categories=(
                CategoryBound("M", exact(8)),
                CategoryBound("F", exact(9)),
            ),
            preference_rank=1,
        )

    def test_category_names_in_order(self):
        assert self.spec().category_names() == ("M", "F")

    def test_bound_for(self):
        assert self.spec().bound_for("F") == exact(9)
        with pytest.raises(KeyError):
            self.spec().bound_for("X")

    def test_lower_sum_and_all_exact(self):
        s = self.spec()
        assert s.lower_sum() == 17
        assert s.all_exact()
        mixed = CriterionSpec(
            "age",
            (CategoryBound("young", at_least(4)), CategoryBound("old", at_most(2))),
            preference_rank=2,
        )
        assert mixed.lower_sum() == 4
        assert not mixed.all_exact()

    def test_round_trip(self):
        s = self.spec()
        assert CriterionSpec.from_dict(s.to_dict()) == s


class TestValidateConfig:
    def base(self):
        roster = [
            make_candidate("a", color="red"),
            make_candidate("b", color="blue"),
            make_candidate("c", color="red"),
        ]
        crit = CriterionSpec(
            "color",
            (CategoryBound("red", at_least(1)), CategoryBound("blue", at_least(1))),
            preference_rank=1,
        )
        return make_config(roster, [crit], seats=2)

    def test_clean_config_has_no_violations(self):
        assert validate_config(self.base()) == []

    def test_duplicate_candidate_id(self):
        cfg = self.base()
        cfg = make_config(
            list(cfg.roster) + [make_candidate("a", color="blue")],
            cfg.criteria,
            seats=2,
        )
        codes = [v.code for v in validate_config(cfg)]
        assert "DUPLICATE_CANDIDATE_ID" in codes

    def test_duplicate_attribute_and_rank(self):
        crit = self.base().criteria[0]
        twin = CriterionSpec(crit.attribute, crit.categories, preference_rank=1)
        cfg = make_config(self.base().roster, [crit, twin], seats=2)
        codes = [v.code for v in validate_config(cfg)]
        assert "DUPLICATE_ATTRIBUTE" in codes
        assert "DUPLICATE_PREFERENCE_RANK" in codes

    def test_lower_bound_sum_exceeds_seats(self):
        crit = CriterionSpec(
            "color",
            (CategoryBound("red", at_least(2)), CategoryBound("blue", at_least(2))),
            preference_rank=1,
        )
        cfg = make_config(self.base().roster, [crit], seats=2)
        codes = [v.code for v in validate_config(cfg)]
        assert "LOWER_BOUND_SUM_EXCEEDS_SEATS" in codes

    def test_exact_sum_mismatch(self):
        crit = CriterionSpec(
            "color",
            (CategoryBound("red", exact(2)), CategoryBound("blue", exact(2))),
            preference_rank=1,
        )
        cfg = make_config(self.base().roster, [crit], seats=3)
        codes = [v.code for v in validate_config(cfg)]
        assert "EXACT_SUM_MISMATCH" in codes

    def test_uncategorized_and_undeclared_candidates(self):
        roster = [
            make_candidate("a", color="red"),
            make_candidate("b"),  # no color at all
            make_candidate("c", color="green"),  # not a declared category
        ]
        cfg = make_config(roster, self.base().criteria, seats=2)
        codes = [v.code for v in validate_config(cfg)]
        assert "UNCATEGORIZED_CANDIDATE" in codes
        assert "UNDECLARED_CATEGORY" in codes

    def test_supply_shortfall_is_not_a_violation(self):
        # infeasibility is a solver outcome, not a malformed config:
        # blue needs 2 seats but only 1 blue candidate exists
        crit = CriterionSpec(
            "color",
            (CategoryBound("red", at_least(0)), CategoryBound("blue", at_least(2))),
            preference_rank=1,
        )
        roster = [make_candidate("a", color="red"), make_candidate("b", color="blue")]
        cfg = make_config(roster, [crit], seats=2)
        assert validate_config(cfg) == []

    def test_violations_come_out_in_stable_order(self):
        cfg = make_config(
            [make_candidate("a"), make_candidate("b")],
            self.base().criteria,
            seats=2,
        )
        first = validate_config(cfg)
        second = validate_config(cfg)
        assert [v.code for v in first] == [v.code for v in second]
        assert [v.message for v in first] == [v.message for v in second]


class TestElectionConfig:
    def test_candidate_lookup(self):
        cfg = make_config([make_candidate("a"), make_candidate("b")])
        assert cfg.candidate("a").candidate_id == "a"
        assert cfg.candidate_ids() == ("a", "b")

    def test_with_criteria_replaces(self):
        crit = CriterionSpec(
            "color", (CategoryBound("red", at_least(1)),), preference_rank=1
        )
        cfg = make_config([make_candidate("a", color="red")], [crit])
        stripped = cfg.with_criteria(())
        assert stripped.criteria == ()
        assert cfg.criteria == (crit,)

    def test_json_round_trip(self, tmp_path):
        crit = CriterionSpec(
            "color",
            (CategoryBound("red", at_least(1)), CategoryBound("blue", at_most(1))),
            preference_rank=1,
        )
        cfg = ElectionConfig(
            election_id="rt",
            seats=2,
            max_selections=2,
            roster=(make_candidate("a", color="red"), make_candidate("b", color="blue")),
            criteria=(crit,),
            tie_policy=TiePolicy.LEXICOGRAPHIC,
            relaxation_policy=RelaxationPolicy.FAIL,
        )
        path = tmp_path / "config.json"
        write_config_json(path, cfg)
        assert read_config_json(path) == cfg

    def test_json_is_canonical(self, tmp_path):
        cfg = make_config([make_candidate("a")])
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        write_config_json(p1, cfg)
        write_config_json(p2, cfg)
        assert p1.read_bytes() == p2.read_bytes()
        assert p1.read_text(encoding="utf-8").endswith("\n")


class TestPercentages:
    def test_published_figures(self):
        assert percent_tenths(67, 1931) == 35
        assert percent_tenths(424, 1931) == 220
        assert percent_tenths(491, 1931) == 254
        assert percent_1dp(424, 1931) == 22.0
        assert percent_1dp(491, 1931) == 25.4

    def test_half_up_at_the_boundary(self):
        # 0.05% rounds up to 0.1%
        assert percent_tenths(1, 2000) == 1
        assert percent_tenths(1, 2001) == 0

    def test_zero_denominator(self):
        assert percent_tenths(5, 0) == 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            percent_tenths(-1, 10)

    @given(st.integers(0, 10**6), st.integers(1, 10**6))
    def test_matches_fraction_half_up(self, n, d):
        expected = math.floor(Fraction(n, d) * 1000 + Fraction(1, 2))
        assert percent_tenths(n, d) == expected


class TestBoundsFromPercentages:
    def test_ceil_of_share_times_seats(self):
        got = bounds_from_percentages(17, [("R1", 0.25), ("R2", 0.2)])
        assert got == [
            CategoryBound("R1", at_least(5)),
            CategoryBound("R2", at_least(4)),
        ]

    def test_string_shares_avoid_float_ceiling_artifacts(self):
        # 0.2 * 15 must be exactly 3, not ceil(3.0000000000000004) = 4
        got = bounds_from_percentages(15, [("x", "0.2")])
        assert got == [CategoryBound("x", at_least(3))]
        got_float = bounds_from_percentages(15, [("x", 0.2)])
        assert got_float == [CategoryBound("x", at_least(3))]

    def test_shares_over_one_rejected(self):
        with pytest.raises(ShareSumError):
            bounds_from_percentages(10, [("a", 0.7), ("b", 0.6)])
        with pytest.raises(ValueError):
            bounds_from_percentages(10, [("a", 1.5)])

    @given(
        st.integers(1, 60),
        st.lists(
            st.tuples(st.text("abc", min_size=1, max_size=3), st.integers(0, 100)),
            min_size=1,
            max_size=4,
            unique_by=lambda t: t[0],
        ),
    )
    def test_lower_bounds_never_below_proportion(self, seats, raw):
        total = sum(w for _, w in raw)
        if total == 0:
            return
        # halving keeps the sum clear of 1 despite float round trips
        shares = [(name, Fraction(w, 2 * total)) for name, w in raw]
        got = bounds_from_percentages(
            seats, [(name, str(float(f))) for name, f in shares]
        )
        for (name, f), cb in zip(shares, got):
            assert cb.category == name
            assert cb.bound.type is BoundType.AT_LEAST
            assert cb.bound.value >= float(f) * seats - 1e-6


class TestCandidatesCsv:
    def test_round_trip_with_attributes(self, tmp_path):
        roster = [
            make_candidate("a", gender="F", region="1"),
            make_candidate("b", gender="M", region="2"),
        ]
        path = tmp_path / "candidates.csv"
        write_candidates_csv(path, roster, ["gender", "region"])
        assert read_candidates_csv(path) == roster

    def test_attribute_columns_survive_verbatim(self, tmp_path):
        path = tmp_path / "candidates.csv"
        path.write_text(
            "candidate_id,display_name,tier\nx,Candidate X,gold\n",
            encoding="utf-8",
        )
        [cand] = read_candidates_csv(path)
        assert cand.attributes == {"tier": "gold"}


def test_canonical_json_is_sorted_and_stable():
    text = canonical_json({"b": 1, "a": [2, 1]})
    assert text == '{\n  "a": [\n    2,\n    1\n  ],\n  "b": 1\n}\n'


def test_invalid_config_error_carries_violations():
    crit = CriterionSpec(
        "color", (CategoryBound("red", exact(3)),), preference_rank=1
    )
    cfg = make_config([make_candidate("a", color="red")], [crit], seats=2)
    violations = validate_config(cfg)
    err = InvalidConfigError(violations)
    assert err.violations == tuple(violations)
    assert "EXACT_SUM_MISMATCH" in str(err)
