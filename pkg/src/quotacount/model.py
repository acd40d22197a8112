"""Core domain model for quota-constrained committee elections.

An election here runs in two recorded stages: a criteria vote that adopts
per-category seat bounds (quotas) over candidate attributes, and a
plurality-at-large candidate vote counted under whatever bounds were
adopted. This module holds the value objects shared by every other module
(candidates, bounds, criteria, configs, ballots, tallies), the structural
validation rules for a config, and the stable on-disk codecs (JSON config,
CSV roster/ballots/tally).

All types are frozen dataclasses. Serialization is deterministic: JSON is
emitted with sorted keys and a trailing newline, CSV with ``\n`` line
terminators, so identical inputs produce byte-identical artifacts.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class ElectionError(Exception):
    """Base class for toolkit errors; ``code`` is machine-readable."""

    code = "ERROR"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InvalidConfigError(ElectionError):
    code = "INVALID_CONFIG"

    def __init__(self, violations: Sequence["Violation"]):
        self.violations = tuple(violations)
        lines = "; ".join(f"{v.code}: {v.message}" for v in self.violations)
        super().__init__(f"config failed validation: {lines}")


class ShareSumError(ElectionError):
    code = "SHARE_SUM_EXCEEDS_ONE"


class UnknownCandidateError(ElectionError):
    code = "UNKNOWN_CANDIDATE"


class BoundType(str, Enum):
    """How a category's seat count is constrained."""

    EXACT = "EXACT"
    AT_LEAST = "AT_LEAST"
    AT_MOST = "AT_MOST"


@dataclass(frozen=True)
class Bound:
    """Seat-count constraint for one category of one criterion.

    ``value`` is a seat count, never a percentage; percentage-style rules
    are converted up front (see :func:`bounds_from_percentages`).
    """

    type: BoundType
    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise TypeError(f"bound value must be an int, got {self.value!r}")
        if self.value < 0:
            raise ValueError(f"bound value must be >= 0, got {self.value}")

    @property
    def lower(self) -> int:
        """Smallest admissible seat count for the category."""
        return 0 if self.type is BoundType.AT_MOST else self.value

    def upper(self, default: int) -> int:
        """Largest admissible seat count; AT_LEAST is capped by ``default``."""
        return default if self.type is BoundType.AT_LEAST else self.value

    def admits(self, count: int) -> bool:
        if self.type is BoundType.EXACT:
            return count == self.value
        if self.type is BoundType.AT_LEAST:
            return count >= self.value
        return count <= self.value

    def describe(self) -> str:
        return {
            BoundType.EXACT: f"= {self.value}",
            BoundType.AT_LEAST: f">= {self.value}",
            BoundType.AT_MOST: f"<= {self.value}",
        }[self.type]

    def to_dict(self) -> dict:
        return {"type": self.type.value, "value": self.value}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Bound":
        return cls(type=BoundType(data["type"]), value=int(data["value"]))


def exact(value: int) -> Bound:
    return Bound(BoundType.EXACT, value)


def at_least(value: int) -> Bound:
    return Bound(BoundType.AT_LEAST, value)


def at_most(value: int) -> Bound:
    return Bound(BoundType.AT_MOST, value)


@dataclass(frozen=True)
class CategoryBound:
    """One (category, bound) row of a criterion."""

    category: str
    bound: Bound

    def to_dict(self) -> dict:
        return {"category": self.category, "bound": self.bound.to_dict()}

    @classmethod
    def from_dict(cls, data: Mapping) -> "CategoryBound":
        return cls(category=str(data["category"]), bound=Bound.from_dict(data["bound"]))


@dataclass(frozen=True)
class CriterionSpec:
    """A quota rule over one candidate attribute.

    The categories must partition the roster: every candidate carries the
    attribute and its value is one of the declared categories (enforced by
    :func:`validate_config`, not by the constructor). ``preference_rank``
    orders criteria for relaxation; rank 1 is most preferred and is
    relaxed last.
    """

    attribute: str
    categories: tuple[CategoryBound, ...]
    preference_rank: int

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(self.categories))

    def category_names(self) -> tuple[str, ...]:
        return tuple(cb.category for cb in self.categories)

    def bound_for(self, category: str) -> Bound:
        for cb in self.categories:
            if cb.category == category:
                return cb.bound
        raise KeyError(category)

    def lower_sum(self) -> int:
        return sum(cb.bound.lower for cb in self.categories)

    def all_exact(self) -> bool:
        return all(cb.bound.type is BoundType.EXACT for cb in self.categories)

    def to_dict(self) -> dict:
        return {
            "attribute": self.attribute,
            "categories": [cb.to_dict() for cb in self.categories],
            "preference_rank": self.preference_rank,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CriterionSpec":
        return cls(
            attribute=str(data["attribute"]),
            categories=tuple(CategoryBound.from_dict(cb) for cb in data["categories"]),
            preference_rank=int(data["preference_rank"]),
        )


@dataclass(frozen=True)
class CandidateRecord:
    """Roster entry: stable id, display name, attribute -> category map.

    ``attributes`` is stored as a plain dict but must be treated as
    immutable; codecs always build fresh dicts.
    """

    candidate_id: str
    display_name: str
    attributes: Mapping[str, str]

    def category(self, attribute: str) -> str:
        return self.attributes[attribute]

    def to_dict(self) -> dict:
        return {
            "candidate_id": self.candidate_id,
            "display_name": self.display_name,
            "attributes": dict(sorted(self.attributes.items())),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CandidateRecord":
        return cls(
            candidate_id=str(data["candidate_id"]),
            display_name=str(data.get("display_name", "")),
            attributes={str(k): str(v) for k, v in data["attributes"].items()},
        )


class TiePolicy(str, Enum):
    REPORT_ALL = "REPORT_ALL"
    LEXICOGRAPHIC = "LEXICOGRAPHIC"


class RelaxationPolicy(str, Enum):
    FAIL = "FAIL"
    FREE_SEATS_THEN_DROP = "FREE_SEATS_THEN_DROP"


@dataclass(frozen=True)
class ElectionConfig:
    """Everything needed to count one election deterministically."""

    election_id: str
    seats: int
    max_selections: int
    roster: tuple[CandidateRecord, ...]
    criteria: tuple[CriterionSpec, ...] = ()
    tie_policy: TiePolicy = TiePolicy.REPORT_ALL
    relaxation_policy: RelaxationPolicy = RelaxationPolicy.FREE_SEATS_THEN_DROP

    def __post_init__(self):
        object.__setattr__(self, "roster", tuple(self.roster))
        object.__setattr__(self, "criteria", tuple(self.criteria))
        if self.seats <= 0:
            raise ValueError(f"seats must be positive, got {self.seats}")
        if self.max_selections <= 0:
            raise ValueError(
                f"max_selections must be positive, got {self.max_selections}"
            )

    def candidate_ids(self) -> tuple[str, ...]:
        return tuple(c.candidate_id for c in self.roster)

    def candidate(self, candidate_id: str) -> CandidateRecord:
        for c in self.roster:
            if c.candidate_id == candidate_id:
                return c
        raise UnknownCandidateError(f"no such candidate: {candidate_id!r}")

    def criterion(self, attribute: str) -> CriterionSpec:
        for crit in self.criteria:
            if crit.attribute == attribute:
                return crit
        raise KeyError(attribute)

    def with_criteria(self, criteria: Iterable[CriterionSpec]) -> "ElectionConfig":
        return replace(self, criteria=tuple(criteria))

    def to_dict(self) -> dict:
        return {
            "election_id": self.election_id,
            "seats": self.seats,
            "max_selections": self.max_selections,
            "roster": [c.to_dict() for c in self.roster],
            "criteria": [c.to_dict() for c in self.criteria],
            "tie_policy": self.tie_policy.value,
            "relaxation_policy": self.relaxation_policy.value,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ElectionConfig":
        return cls(
            election_id=str(data["election_id"]),
            seats=int(data["seats"]),
            max_selections=int(data["max_selections"]),
            roster=tuple(CandidateRecord.from_dict(c) for c in data["roster"]),
            criteria=tuple(CriterionSpec.from_dict(c) for c in data.get("criteria", ())),
            tie_policy=TiePolicy(data.get("tie_policy", TiePolicy.REPORT_ALL.value)),
            relaxation_policy=RelaxationPolicy(
                data.get("relaxation_policy", RelaxationPolicy.FREE_SEATS_THEN_DROP.value)
            ),
        )


@dataclass(frozen=True)
class Ballot:
    """One cast phase-2 ballot. ``selections`` is a set: order never counts.

    ``receipt`` carries the published digest column when present; it plays
    no role in counting.
    """

    ballot_id: str
    selections: frozenset[str]
    receipt: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "selections", frozenset(self.selections))


@dataclass(frozen=True)
class TallyResult:
    """Per-candidate totals plus counting bookkeeping.

    ``votes`` covers every roster candidate (zero included);
    ``ballots_rejected`` is (ballot_id, reason-code) pairs in input order.
    """

    votes: Mapping[str, int]
    total_votes_cast: int
    ballots_counted: int
    ballots_rejected: tuple[tuple[str, str], ...] = ()

    def to_dict(self) -> dict:
        return {
            "votes": dict(sorted(self.votes.items())),
            "total_votes_cast": self.total_votes_cast,
            "ballots_counted": self.ballots_counted,
            "ballots_rejected": [list(pair) for pair in self.ballots_rejected],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "TallyResult":
        return cls(
            votes={str(k): int(v) for k, v in data["votes"].items()},
            total_votes_cast=int(data["total_votes_cast"]),
            ballots_counted=int(data["ballots_counted"]),
            ballots_rejected=tuple(
                (str(b), str(r)) for b, r in data.get("ballots_rejected", ())
            ),
        )


@dataclass(frozen=True)
class Violation:
    """One structural problem found in a config."""

    code: str
    message: str


def validate_config(config: ElectionConfig) -> list[Violation]:
    """Check structural validity; returns [] when the config is usable.

    Deterministic: violations come out in a fixed order (roster order,
    then criterion order). Supply shortfalls are deliberately *not*
    violations; an infeasible but well-formed instance is a reportable
    solver outcome, not a config error. ``seats <= len(roster)`` is not
    required for the same reason.
    """
    out: list[Violation] = []

    seen_ids: set[str] = set()
    for cand in config.roster:
        if cand.candidate_id in seen_ids:
            out.append(
                Violation(
                    "DUPLICATE_CANDIDATE_ID",
                    f"candidate id {cand.candidate_id!r} appears more than once",
                )
            )
        seen_ids.add(cand.candidate_id)

    seen_attrs: set[str] = set()
    seen_ranks: set[int] = set()
    for crit in config.criteria:
        if crit.attribute in seen_attrs:
            out.append(
                Violation(
                    "DUPLICATE_ATTRIBUTE",
                    f"criterion attribute {crit.attribute!r} declared twice",
                )
            )
        seen_attrs.add(crit.attribute)

        if crit.preference_rank in seen_ranks:
            out.append(
                Violation(
                    "DUPLICATE_PREFERENCE_RANK",
                    f"preference rank {crit.preference_rank} assigned twice",
                )
            )
        seen_ranks.add(crit.preference_rank)
        if crit.preference_rank < 1:
            out.append(
                Violation(
                    "BAD_PREFERENCE_RANK",
                    f"preference rank must be >= 1, got {crit.preference_rank}"
                    f" on {crit.attribute!r}",
                )
            )

        seen_cats: set[str] = set()
        for cb in crit.categories:
            if cb.category in seen_cats:
                out.append(
                    Violation(
                        "DUPLICATE_CATEGORY",
                        f"category {cb.category!r} listed twice under"
                        f" {crit.attribute!r}",
                    )
                )
            seen_cats.add(cb.category)

        low = crit.lower_sum()
        if low > config.seats:
            out.append(
                Violation(
                    "LOWER_BOUND_SUM_EXCEEDS_SEATS",
                    f"lower bounds under {crit.attribute!r} sum to {low}"
                    f" > {config.seats} seats",
                )
            )
        if crit.all_exact():
            total = sum(cb.bound.value for cb in crit.categories)
            if total != config.seats:
                out.append(
                    Violation(
                        "EXACT_SUM_MISMATCH",
                        f"EXACT bounds under {crit.attribute!r} sum to {total},"
                        f" need exactly {config.seats}",
                    )
                )

        cats = set(seen_cats)
        for cand in config.roster:
            got = cand.attributes.get(crit.attribute)
            if got is None:
                out.append(
                    Violation(
                        "UNCATEGORIZED_CANDIDATE",
                        f"candidate {cand.candidate_id!r} has no"
                        f" {crit.attribute!r} attribute",
                    )
                )
            elif got not in cats:
                out.append(
                    Violation(
                        "UNDECLARED_CATEGORY",
                        f"candidate {cand.candidate_id!r} has"
                        f" {crit.attribute!r}={got!r}, not a declared category",
                    )
                )
    return out


def bounds_from_percentages(
    seats: int, shares: Sequence[tuple[str, float | str]]
) -> list[CategoryBound]:
    """Turn population shares into AT_LEAST seat bounds: ceil(share * seats).

    Shares may be floats or decimal strings; they are converted through
    ``Fraction(str(share))`` so 0.2 means exactly 1/5 and never picks up a
    binary-float ceiling artifact. Raises :class:`ShareSumError` when the
    shares sum above 1, ValueError when any single share is outside [0, 1].
    """
    fracs: list[tuple[str, Fraction]] = []
    for category, share in shares:
        f = Fraction(str(share))
        if f < 0 or f > 1:
            raise ValueError(f"share for {category!r} outside [0, 1]: {share}")
        fracs.append((category, f))
    total = sum(f for _, f in fracs)
    if total > 1:
        raise ShareSumError(f"shares sum to {float(total):.6g} > 1")
    return [
        CategoryBound(category, at_least(math.ceil(f * seats)))
        for category, f in fracs
    ]


def percent_tenths(numerator: int, denominator: int) -> int:
    """Percentage in integer tenths of a percent, rounded half up.

    Pure integer arithmetic: 67/1931 -> 35 (3.5%), 424/1931 -> 220 (22.0%).
    Denominator 0 returns 0 (empty elections report 0.0% everywhere).
    """
    if denominator == 0:
        return 0
    if numerator < 0 or denominator < 0:
        raise ValueError("percent_tenths takes non-negative inputs")
    return (2000 * numerator + denominator) // (2 * denominator)


def percent_1dp(numerator: int, denominator: int) -> float:
    """One-decimal percentage, half-up; exact because tenths are integral."""
    return percent_tenths(numerator, denominator) / 10.0


def canonical_json(payload) -> str:
    """Stable JSON text: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def write_config_json(path: str | Path, config: ElectionConfig) -> None:
    Path(path).write_text(canonical_json(config.to_dict()), encoding="utf-8")


def read_config_json(path: str | Path) -> ElectionConfig:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return ElectionConfig.from_dict(data)


CANDIDATE_FIXED_COLUMNS = ("candidate_id", "display_name")


def write_candidates_csv(
    path: str | Path,
    roster: Sequence[CandidateRecord],
    attributes: Sequence[str],
) -> None:
    """Write the roster with one column per attribute, in the given order."""
    with open(path, "w", encoding="utf-8", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(list(CANDIDATE_FIXED_COLUMNS) + list(attributes))
        for cand in roster:
            writer.writerow(
                [cand.candidate_id, cand.display_name]
                + [cand.attributes[a] for a in attributes]
            )


def read_candidates_csv(path: str | Path) -> list[CandidateRecord]:
    """Read a roster CSV; every non-fixed column is an attribute, verbatim."""
    with open(path, "r", encoding="utf-8", newline="") as fp:
        reader = csv.DictReader(fp)
        if reader.fieldnames is None or reader.fieldnames[:2] != list(
            CANDIDATE_FIXED_COLUMNS
        ):
            raise ValueError(
                f"candidates CSV must start with columns"
                f" {','.join(CANDIDATE_FIXED_COLUMNS)}"
            )
        attr_cols = [c for c in reader.fieldnames if c not in CANDIDATE_FIXED_COLUMNS]
        roster = []
        for row in reader:
            roster.append(
                CandidateRecord(
                    candidate_id=row["candidate_id"],
                    display_name=row["display_name"],
                    attributes={a: row[a] for a in attr_cols},
                )
            )
        return roster
