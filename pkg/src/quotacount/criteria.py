"""Phase-1 tallying: the yes/no/blank vote that adopts criteria.

Each proposed criterion is one question. A criterion is adopted on a
strict majority of non-blank answers (yes > no); blanks count toward
turnout and appear in the reported percentages but never in the decision.
No quorum is applied: with zero participants every question reports 0/0/0
and is rejected (0 > 0 is false).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .model import (
    CriterionSpec,
    ElectionConfig,
    ElectionError,
    canonical_json,
    percent_1dp,
)


class UnknownQuestionError(ElectionError):
    code = "UNKNOWN_QUESTION_ID"


class Answer(str, Enum):
    YES = "YES"
    NO = "NO"
    BLANK = "BLANK"


@dataclass(frozen=True)
class CriteriaQuestion:
    """One ballot question proposing a criterion."""

    question_id: str
    criterion: CriterionSpec
    text: str

    def to_dict(self) -> dict:
        return {
            "question_id": self.question_id,
            "criterion": self.criterion.to_dict(),
            "text": self.text,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CriteriaQuestion":
        return cls(
            question_id=str(data["question_id"]),
            criterion=CriterionSpec.from_dict(data["criterion"]),
            text=str(data.get("text", "")),
        )


@dataclass(frozen=True)
class CriteriaBallot:
    """One voter's answers, keyed by question_id; missing answers = BLANK."""

    ballot_id: str
    answers: Mapping[str, Answer]


@dataclass(frozen=True)
class QuestionResult:
    question: CriteriaQuestion
    yes_count: int
    no_count: int
    blank_count: int
    yes_pct: float
    no_pct: float
    blank_pct: float
    accepted: bool

    def to_dict(self) -> dict:
        return {
            "question": self.question.to_dict(),
            "yes_count": self.yes_count,
            "no_count": self.no_count,
            "blank_count": self.blank_count,
            "yes_pct": self.yes_pct,
            "no_pct": self.no_pct,
            "blank_pct": self.blank_pct,
            "accepted": self.accepted,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "QuestionResult":
        return cls(
            question=CriteriaQuestion.from_dict(data["question"]),
            yes_count=int(data["yes_count"]),
            no_count=int(data["no_count"]),
            blank_count=int(data["blank_count"]),
            yes_pct=float(data["yes_pct"]),
            no_pct=float(data["no_pct"]),
            blank_pct=float(data["blank_pct"]),
            accepted=bool(data["accepted"]),
        )


@dataclass(frozen=True)
class CriteriaVoteResult:
    results: tuple[QuestionResult, ...]
    participants: int
    ballots_rejected: tuple[tuple[str, str], ...] = ()

    def to_dict(self) -> dict:
        return {
            "results": [r.to_dict() for r in self.results],
            "participants": self.participants,
            "ballots_rejected": [list(pair) for pair in self.ballots_rejected],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CriteriaVoteResult":
        return cls(
            results=tuple(QuestionResult.from_dict(r) for r in data["results"]),
            participants=int(data["participants"]),
            ballots_rejected=tuple(
                (str(b), str(r)) for b, r in data.get("ballots_rejected", ())
            ),
        )


def tally_criteria_vote(
    questions: Sequence[CriteriaQuestion], ballots: Iterable[CriteriaBallot]
) -> CriteriaVoteResult:
    """Count every question; a second ballot under the same id is rejected.

    Raises :class:`UnknownQuestionError` when a ballot answers a question
    that was never asked. Yes/no/blank always sum to participants, so the
    result is order-independent apart from the rejected-ballot listing.
    """
    known = {q.question_id for q in questions}
    counts = {q.question_id: {Answer.YES: 0, Answer.NO: 0, Answer.BLANK: 0} for q in questions}
    seen: set[str] = set()
    rejected: list[tuple[str, str]] = []
    participants = 0

    for ballot in ballots:
        if ballot.ballot_id in seen:
            rejected.append((ballot.ballot_id, "DUPLICATE_BALLOT"))
            continue
        seen.add(ballot.ballot_id)
        for qid in ballot.answers:
            if qid not in known:
                raise UnknownQuestionError(f"ballot {ballot.ballot_id!r} answers unknown question {qid!r}")
        participants += 1
        for q in questions:
            answer = ballot.answers.get(q.question_id, Answer.BLANK)
            counts[q.question_id][answer] += 1

    results = []
    for q in questions:
        c = counts[q.question_id]
        yes, no, blank = c[Answer.YES], c[Answer.NO], c[Answer.BLANK]
        results.append(
            QuestionResult(
                question=q,
                yes_count=yes,
                no_count=no,
                blank_count=blank,
                yes_pct=percent_1dp(yes, participants),
                no_pct=percent_1dp(no, participants),
                blank_pct=percent_1dp(blank, participants),
                accepted=yes > no,
            )
        )
    return CriteriaVoteResult(
        results=tuple(results),
        participants=participants,
        ballots_rejected=tuple(rejected),
    )


def build_election_config(
    base: ElectionConfig, result: CriteriaVoteResult
) -> ElectionConfig:
    """Adopt the accepted criteria onto a criteria-less base config.

    Question order is preserved; preference ranks travel with their
    criteria untouched. Rejected criteria simply never appear.
    """
    adopted = tuple(r.question.criterion for r in result.results if r.accepted)
    return base.with_criteria(adopted)


# -- codecs -----------------------------------------------------------------

BALLOT_COLUMNS = ("ballot_id", "question_id", "answer")


def write_questions_json(path: str | Path, questions: Sequence[CriteriaQuestion]) -> None:
    payload = [q.to_dict() for q in questions]
    Path(path).write_text(canonical_json(payload), encoding="utf-8")


def read_questions_json(path: str | Path) -> list[CriteriaQuestion]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return [CriteriaQuestion.from_dict(q) for q in data]


def write_criteria_ballots_csv(
    path: str | Path, ballots: Sequence[CriteriaBallot]
) -> None:
    """One row per (ballot, answered question), non-blank answers first-class.

    BLANK rows are written explicitly so the file re-tallies bit-for-bit
    even for voters who skipped a question on purpose.
    """
    with open(path, "w", encoding="utf-8", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(BALLOT_COLUMNS)
        for ballot in ballots:
            for qid in sorted(ballot.answers):
                writer.writerow([ballot.ballot_id, qid, ballot.answers[qid].value])


def read_criteria_ballots_csv(path: str | Path) -> list[CriteriaBallot]:
    with open(path, "r", encoding="utf-8", newline="") as fp:
        reader = csv.DictReader(fp)
        if reader.fieldnames != list(BALLOT_COLUMNS):
            raise ValueError(
                f"phase-1 ballots CSV needs columns {','.join(BALLOT_COLUMNS)}"
            )
        grouped: dict[str, dict[str, Answer]] = {}
        order: list[str] = []
        for row in reader:
            bid = row["ballot_id"]
            if bid not in grouped:
                grouped[bid] = {}
                order.append(bid)
            grouped[bid][row["question_id"]] = Answer(row["answer"])
        return [CriteriaBallot(bid, grouped[bid]) for bid in order]


def write_result_json(path: str | Path, result: CriteriaVoteResult) -> None:
    Path(path).write_text(canonical_json(result.to_dict()), encoding="utf-8")


def read_result_json(path: str | Path) -> CriteriaVoteResult:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return CriteriaVoteResult.from_dict(data)
