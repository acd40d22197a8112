"""Regenerate the golden-district fixtures deterministically.

The published record gives per-candidate vote totals, criteria-vote
percentages, and the adopted criteria; it does not publish individual
ballots. This script reconstructs a synthetic ballot corpus that
reproduces every published total exactly, then runs the pipeline and
freezes its outputs. Everything is deterministic (fixed salt seed, fixed
spreading order), so re-running the script must reproduce the committed
fixtures byte for byte.

Usage: python scripts/generate_monthey_fixtures.py [--certify]

--certify additionally enumerates all C(28, 17) committees to confirm
the optimum is unique and the forced set exact (minutes of CPU; not part
of the normal regeneration).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from quotacount import (
    Answer,
    Ballot,
    CandidateRecord,
    CategoryBound,
    CriteriaBallot,
    CriteriaQuestion,
    CriterionSpec,
    ElectionConfig,
    at_least,
    build_election_config,
    build_report_bundle,
    count_votes,
    exact,
    issue_receipts,
    render_report,
    solve,
    tally_criteria_vote,
    validate_config,
)
from quotacount.criteria import (
    write_criteria_ballots_csv,
    write_questions_json,
    write_result_json,
)
from quotacount.ledger import write_receipts_csv
from quotacount.model import canonical_json, write_candidates_csv, write_config_json
from quotacount.tally import write_ballots_csv, write_tally_csv

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures" / "monthey"
SALT_SEED = 20160417
N_VOTERS = 331
N_PHASE1 = 347

# Published results table: the 26 candidates who are shown, in vote order.
VOTED_ROWS = [
    ("A", "M", "31-65", "1", 166, True),
    ("B", "F", "31-65", "1", 128, True),
    ("C", "F", "31-65", "2", 121, True),
    ("D", "M", "18-30", "1", 114, True),
    ("E", "F", "31-65", "1", 111, True),
    ("F", "F", "18-30", "3", 92, True),
    ("G", "F", "31-65", "2", 90, True),
    ("H", "M", "31-65", "4", 89, True),
    ("I", "M", "+65", "4", 75, True),
    ("J", "F", "31-65", "1", 73, True),
    ("K", "F", "18-30", "2", 73, True),
    ("L", "F", "18-30", "2", 70, True),
    ("M", "M", "+65", "1", 70, True),
    ("N", "M", "31-65", "1", 64, False),
    ("O", "M", "31-65", "1", 58, False),
    ("P", "F", "18-30", "1", 57, False),
    ("Q", "F", "31-65", "2", 56, False),
    ("R", "M", "18-30", "1", 56, False),
    ("S", "M", "31-65", "3", 49, True),
    ("T", "M", "+65", "1", 47, True),
    ("U", "M", "31-65", "1", 45, False),
    ("V", "M", "31-65", "1", 45, False),
    ("W", "F", "31-65", "3", 45, True),
    ("X", "M", "18-30", "3", 42, False),
    ("Y", "F", "18-30", "2", 29, False),
    ("Z", "M", "+65", "1", 27, True),
]
# The results table hides the two lowest-vote unelected candidates. The
# criteria table's supply column (N=28: region 14/7/4/3, gender 16/12,
# age 8/16/4) pins their attributes: both male, both 31-65, one region 2
# and one region 4, sharing the 39 votes missing from the 1,931 total.
# The 20/19 split is a reconstruction choice; nothing downstream depends
# on it.
HIDDEN_ROWS = [
    ("AA", "M", "31-65", "2", 20, False),
    ("AB", "M", "31-65", "4", 19, False),
]
ALL_ROWS = VOTED_ROWS + HIDDEN_ROWS

# Criteria-vote counts reconstructed from the published one-decimal
# percentages over 347 participants (gender 74.9/19.6/5.5,
# age 76.9/17.6/5.5, region 70.0/21.6/8.4).
PHASE1_COUNTS = {
    "q-gender": (260, 68, 19),
    "q-age": (267, 61, 19),
    "q-region": (243, 75, 29),
}


def build_questions() -> list[CriteriaQuestion]:
    gender = CriterionSpec(
        "gender",
        (CategoryBound("M", exact(8)), CategoryBound("F", exact(9))),
        preference_rank=1,
    )
    region = CriterionSpec(
        "region",
        (
            CategoryBound("1", at_least(5)),
            CategoryBound("2", at_least(4)),
            CategoryBound("3", at_least(3)),
            CategoryBound("4", at_least(2)),
        ),
        preference_rank=2,
    )
    age = CriterionSpec(
        "age",
        (
            CategoryBound("18-30", at_least(4)),
            CategoryBound("31-65", at_least(7)),
            CategoryBound("+65", at_least(4)),
        ),
        preference_rank=3,
    )
    return [
        CriteriaQuestion(
            "q-gender", gender, "Fix the committee at 8 men and 9 women?"
        ),
        CriteriaQuestion(
            "q-age",
            age,
            "Guarantee at least 4 seats for 18-30, 7 for 31-65 and 4 for +65?",
        ),
        CriteriaQuestion(
            "q-region",
            region,
            "Guarantee at least 5/4/3/2 seats for regions 1/2/3/4?",
        ),
    ]


def build_phase1_ballots(questions) -> list[CriteriaBallot]:
    """347 ballots hitting the published per-question counts exactly.

    Voter v gets YES while their index is under the question's yes count
    after a per-question rotation, so answer patterns vary per ballot but
    the counts are exact.
    """
    ballots = []
    offsets = {q.question_id: i * 101 for i, q in enumerate(questions)}
    for v in range(N_PHASE1):
        answers = {}
        for q in questions:
            yes, no, blank = PHASE1_COUNTS[q.question_id]
            slot = (v + offsets[q.question_id]) % N_PHASE1
            if slot < yes:
                answers[q.question_id] = Answer.YES
            elif slot < yes + no:
                answers[q.question_id] = Answer.NO
            else:
                answers[q.question_id] = Answer.BLANK
        ballots.append(CriteriaBallot(f"v{v + 1:03d}", answers))
    return ballots


def build_phase2_ballots() -> list[Ballot]:
    """331 ballots whose per-candidate totals equal the published ones.

    Each candidate's votes are spread over a cyclic run of ballots
    starting where the previous candidate's run ended, so no ballot
    collects more than ceil(total/voters) + 1 selections and every total
    lands exactly.
    """
    selections: list[set[str]] = [set() for _ in range(N_VOTERS)]
    offset = 0
    for cid, _, _, _, votes, _ in ALL_ROWS:
        for i in range(votes):
            selections[(offset + i) % N_VOTERS].add(cid)
        offset = (offset + votes) % N_VOTERS
    ballots = [
        Ballot(f"b{i + 1:03d}", frozenset(sel)) for i, sel in enumerate(selections)
    ]
    sizes = [len(b.selections) for b in ballots]
    assert sum(sizes) == sum(r[4] for r in ALL_ROWS) == 1931
    assert max(sizes) <= 17, f"ballot overloaded: {max(sizes)}"
    assert min(sizes) >= 1
    return ballots


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--certify", action="store_true")
    args = parser.parse_args()

    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)

    roster = tuple(
        CandidateRecord(cid, f"Candidate {cid}", {"gender": g, "age": a, "region": r})
        for cid, g, a, r, _, _ in ALL_ROWS
    )
    questions = build_questions()

    # phase 1
    p1_ballots = build_phase1_ballots(questions)
    write_questions_json(FIXTURE_DIR / "questions.json", questions)
    write_criteria_ballots_csv(FIXTURE_DIR / "phase1_ballots.csv", p1_ballots)
    result = tally_criteria_vote(questions, p1_ballots)
    write_result_json(FIXTURE_DIR / "phase1_result.json", result)
    for r in result.results:
        print(
            f"{r.question.question_id}: {r.yes_pct}/{r.no_pct}/{r.blank_pct}"
            f" accepted={r.accepted}"
        )
        assert r.accepted

    base = ElectionConfig(
        election_id="monthey-district",
        seats=17,
        max_selections=17,
        roster=roster,
        criteria=(),
    )
    config = build_election_config(base, result)
    assert validate_config(config) == []
    write_config_json(FIXTURE_DIR / "config.json", config)
    write_candidates_csv(
        FIXTURE_DIR / "candidates.csv", roster, ("gender", "age", "region")
    )

    # phase 2
    raw_ballots = build_phase2_ballots()
    published, receipts = issue_receipts(raw_ballots, salt_seed=SALT_SEED)
    write_ballots_csv(FIXTURE_DIR / "phase2_ballots.csv", published)
    write_receipts_csv(FIXTURE_DIR / "receipts.csv", receipts)

    tally = count_votes(published, config)
    expected_votes = {cid: votes for cid, _, _, _, votes, _ in ALL_ROWS}
    assert dict(tally.votes) == expected_votes
    assert tally.total_votes_cast == 1931
    assert tally.ballots_counted == 331
    write_tally_csv(FIXTURE_DIR / "tally.csv", tally)

    outcome = solve(tally, config)
    elected = {cid for cid, _, _, _, _, e in ALL_ROWS if e}
    assert outcome.status == "OPTIMAL"
    assert outcome.objective == 1440, outcome.objective
    assert outcome.committee == frozenset(elected)
    assert outcome.forced == frozenset({"I", "M", "T", "Z"})
    assert outcome.co_optimal_committees is not None
    assert len(outcome.co_optimal_committees) == 1
    (FIXTURE_DIR / "outcome.json").write_text(
        canonical_json(outcome.to_dict()), encoding="utf-8"
    )

    bundle = build_report_bundle(config, tally, outcome)
    assert bundle.price.price == 67
    assert bundle.price.price_pct == 3.4
    (FIXTURE_DIR / "report.json").write_text(
        render_report(bundle, "json"), encoding="utf-8"
    )
    (FIXTURE_DIR / "report.md").write_text(
        render_report(bundle, "markdown"), encoding="utf-8"
    )
    print(f"solve: objective {outcome.objective}, nodes {outcome.node_count}")
    print(f"price: {bundle.price.price} votes ({bundle.price.price_pct}%)")

    if args.certify:
        from quotacount.solver import _brute_force_once

        votes = dict(tally.votes)
        res = _brute_force_once(votes, config, keep_ties=True, compute_forced=True)
        status, best_obj, best_tuple, ties, forced, n = res
        print(
            f"certify: enumerated {n} committees, optimum {best_obj},"
            f" co-optimal {len(ties)}, forced {sorted(forced)}"
        )
        assert best_obj == 1440
        assert set(best_tuple) == elected
        assert len(ties) == 1
        assert forced == frozenset({"I", "M", "T", "Z"})

    print(f"fixtures written to {FIXTURE_DIR}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
