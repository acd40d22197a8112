"""LP export and assignment import for third-party cross-checks."""

from __future__ import annotations

import pytest

from quotacount import (
    CategoryBound,
    CriterionSpec,
    at_least,
    at_most,
    exact,
    read_assignment,
    variable_map,
    write_lp,
)

from conftest import make_candidate, make_config


def instance():
    roster = [
        make_candidate("a", gender="F"),
        make_candidate("b", gender="F"),
        make_candidate("c", gender="M"),
    ]
    crit = CriterionSpec(
        "gender",
        (CategoryBound("M", exact(1)), CategoryBound("F", exact(1))),
        preference_rank=1,
    )
    cfg = make_config(roster, [crit], seats=2)
    votes = {"a": 5, "b": 4, "c": 3}
    return votes, cfg


class TestVariableMap:
    def test_plain_ids_pass_through(self):
        _, cfg = instance()
        assert variable_map(cfg) == {"a": "x_a", "b": "x_b", "c": "x_c"}

    def test_punctuation_sanitized(self):
        cfg = make_config([make_candidate("jo-ann.k")], seats=1, max_selections=1)
        assert variable_map(cfg) == {"jo-ann.k": "x_jo_ann_k"}

    def test_sanitization_collisions_deduplicated(self):
        cfg = make_config(
            [make_candidate("a-b"), make_candidate("a.b"), make_candidate("a_b")],
            seats=1,
            max_selections=1,
        )
        names = list(variable_map(cfg).values())
        assert len(set(names)) == 3
        assert names[0] == "x_a_b"
        assert names[1] == "x_a_b__2"


class TestWriteLp:
    def test_sections_in_order(self, tmp_path):
        votes, cfg = instance()
        path = tmp_path / "instance.lp"
        write_lp(path, votes, cfg)
        text = path.read_text(encoding="utf-8")
        assert text.index("Maximize") < text.index("Subject To")
        assert text.index("Subject To") < text.index("Binaries")
        assert text.rstrip().endswith("End")

    def test_objective_and_constraints(self, tmp_path):
        votes, cfg = instance()
        path = tmp_path / "instance.lp"
        write_lp(path, votes, cfg)
        text = path.read_text(encoding="utf-8")
        assert " obj: 5 x_a + 4 x_b + 3 x_c" in text
        assert " seats: x_a + x_b + x_c = 2" in text
        assert " c1_M: x_c = 1" in text
        assert " c1_F: x_a + x_b = 1" in text

    def test_zero_vote_candidate_left_out_of_objective(self, tmp_path):
        votes, cfg = instance()
        votes = dict(votes, b=0)
        path = tmp_path / "instance.lp"
        write_lp(path, votes, cfg)
        text = path.read_text(encoding="utf-8")
        assert " obj: 5 x_a + 3 x_c" in text
        # still a declared binary and still constrained
        assert "x_b" in text.split("Binaries")[1]
        assert "x_b" in text.split("Subject To")[1].split("Binaries")[0]

    def test_at_least_and_at_most_relations(self, tmp_path):
        roster = [make_candidate("a", kind="x"), make_candidate("b", kind="y")]
        crit = CriterionSpec(
            "kind",
            (CategoryBound("x", at_least(1)), CategoryBound("y", at_most(1))),
            preference_rank=1,
        )
        cfg = make_config(roster, [crit], seats=1, max_selections=1)
        path = tmp_path / "instance.lp"
        write_lp(path, {"a": 1, "b": 1}, cfg)
        text = path.read_text(encoding="utf-8")
        assert " c1_x: x_a >= 1" in text
        assert " c1_y: x_b <= 1" in text

    def test_empty_roster_rejected(self, tmp_path):
        cfg = make_config([], seats=1, max_selections=1)
        with pytest.raises(ValueError):
            write_lp(tmp_path / "bad.lp", {}, cfg)

    def test_writes_are_deterministic(self, tmp_path):
        votes, cfg = instance()
        p1, p2 = tmp_path / "a.lp", tmp_path / "b.lp"
        write_lp(p1, votes, cfg)
        write_lp(p2, votes, cfg)
        assert p1.read_bytes() == p2.read_bytes()


class TestReadAssignment:
    def test_plain_pairs(self, tmp_path):
        _, cfg = instance()
        path = tmp_path / "solution.txt"
        path.write_text("x_a 1\nx_b 0\nx_c 1\n", encoding="utf-8")
        assert read_assignment(path, cfg) == {"a", "c"}

    def test_equals_sign_and_comments_tolerated(self, tmp_path):
        _, cfg = instance()
        path = tmp_path / "solution.txt"
        path.write_text(
            "# solver output\n\\ another comment\n\nx_a = 1\nx_c = 0.9999999\n",
            encoding="utf-8",
        )
        assert read_assignment(path, cfg) == {"a", "c"}

    def test_omitted_variables_count_as_zero(self, tmp_path):
        _, cfg = instance()
        path = tmp_path / "solution.txt"
        path.write_text("x_b 1\n", encoding="utf-8")
        assert read_assignment(path, cfg) == {"b"}

    def test_unknown_variable_rejected(self, tmp_path):
        _, cfg = instance()
        path = tmp_path / "solution.txt"
        path.write_text("x_zz 1\n", encoding="utf-8")
        with pytest.raises(ValueError):
            read_assignment(path, cfg)

    def test_fractional_value_rejected(self, tmp_path):
        _, cfg = instance()
        path = tmp_path / "solution.txt"
        path.write_text("x_a 0.5\n", encoding="utf-8")
        with pytest.raises(ValueError):
            read_assignment(path, cfg)

    def test_round_trip_through_file_pair(self, tmp_path):
        # write the instance, fake an external solve, read it back
        votes, cfg = instance()
        write_lp(tmp_path / "instance.lp", votes, cfg)
        (tmp_path / "solution.txt").write_text("x_a 1\nx_c 1\n", encoding="utf-8")
        committee = read_assignment(tmp_path / "solution.txt", cfg)
        from quotacount import violated_constraints

        assert violated_constraints(committee, cfg) == []
