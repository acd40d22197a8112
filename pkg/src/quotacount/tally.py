"""Phase-2 counting: plurality-at-large vote totals.

A ballot selects up to ``max_selections`` candidates; each selection is
one vote for that candidate. Invalid ballots (too many selections, or any
unknown id) are rejected whole and listed with a reason, never truncated:
truncation would need an arbitrary drop order, rejection is auditable.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .model import Ballot, ElectionConfig, TallyResult

TOO_MANY_SELECTIONS = "TOO_MANY_SELECTIONS"
UNKNOWN_CANDIDATE = "UNKNOWN_CANDIDATE"


def validate_ballot(ballot: Ballot, config: ElectionConfig) -> str | None:
    """Return a rejection reason code, or None when the ballot counts.

    An empty selection set is valid (abstention).
    """
    if len(ballot.selections) > config.max_selections:
        return TOO_MANY_SELECTIONS
    known = set(config.candidate_ids())
    for cid in ballot.selections:
        if cid not in known:
            return UNKNOWN_CANDIDATE
    return None


def count_votes(ballots: Iterable[Ballot], config: ElectionConfig) -> TallyResult:
    """Count valid ballots into per-candidate totals.

    The totals, the vote sum, and the counted/rejected split are invariant
    under ballot reordering; only the rejected list's order follows input
    order. Every roster candidate appears in ``votes``, zero included.
    """
    votes = {cid: 0 for cid in config.candidate_ids()}
    rejected: list[tuple[str, str]] = []
    counted = 0
    total = 0
    for ballot in ballots:
        reason = validate_ballot(ballot, config)
        if reason is not None:
            rejected.append((ballot.ballot_id, reason))
            continue
        counted += 1
        total += len(ballot.selections)
        for cid in ballot.selections:
            votes[cid] += 1
    return TallyResult(
        votes=votes,
        total_votes_cast=total,
        ballots_counted=counted,
        ballots_rejected=tuple(rejected),
    )


# -- codecs -----------------------------------------------------------------

BALLOT_COLUMNS = ("ballot_id", "selections", "receipt")
TALLY_COLUMNS = ("candidate_id", "votes")


def write_ballots_csv(path: str | Path, ballots: Sequence[Ballot]) -> None:
    """Published open format: selections are `|`-joined sorted ids."""
    with open(path, "w", encoding="utf-8", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(BALLOT_COLUMNS)
        for ballot in ballots:
            writer.writerow(
                [
                    ballot.ballot_id,
                    "|".join(sorted(ballot.selections)),
                    ballot.receipt or "",
                ]
            )


def read_ballots_csv(path: str | Path) -> tuple[list[Ballot], list[tuple[str, str]]]:
    """Read published ballots; returns (ballots, warnings).

    Hand-filled files sometimes repeat a candidate inside one row; set
    semantics absorb the repeat and a (ballot_id, DUPLICATE_SELECTION)
    warning records that the file was not canonical.
    """
    ballots: list[Ballot] = []
    warnings: list[tuple[str, str]] = []
    with open(path, "r", encoding="utf-8", newline="") as fp:
        reader = csv.DictReader(fp)
        if reader.fieldnames != list(BALLOT_COLUMNS):
            raise ValueError(
                f"phase-2 ballots CSV needs columns {','.join(BALLOT_COLUMNS)}"
            )
        for row in reader:
            raw = row["selections"]
            parts = [p for p in raw.split("|") if p] if raw else []
            selections = frozenset(parts)
            if len(selections) != len(parts):
                warnings.append((row["ballot_id"], "DUPLICATE_SELECTION"))
            ballots.append(
                Ballot(
                    ballot_id=row["ballot_id"],
                    selections=selections,
                    receipt=row["receipt"] or None,
                )
            )
    return ballots, warnings


def write_tally_csv(path: str | Path, tally: TallyResult) -> None:
    """Vote totals, descending, candidate_id as the tie key."""
    rows = sorted(tally.votes.items(), key=lambda kv: (-kv[1], kv[0]))
    with open(path, "w", encoding="utf-8", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(TALLY_COLUMNS)
        for cid, votes in rows:
            writer.writerow([cid, votes])


def read_tally_csv(path: str | Path) -> dict[str, int]:
    with open(path, "r", encoding="utf-8", newline="") as fp:
        reader = csv.DictReader(fp)
        if reader.fieldnames != list(TALLY_COLUMNS):
            raise ValueError(f"tally CSV needs columns {','.join(TALLY_COLUMNS)}")
        return {row["candidate_id"]: int(row["votes"]) for row in reader}


def tally_from_votes(votes: Mapping[str, int]) -> TallyResult:
    """Wrap bare totals (e.g. a tally CSV) for downstream consumers.

    Ballot-level bookkeeping is unavailable in this form; the vote sum is
    the only total that survives the CSV round trip.
    """
    total = sum(votes.values())
    return TallyResult(
        votes=dict(votes),
        total_votes_cast=total,
        ballots_counted=0,
        ballots_rejected=(),
    )
