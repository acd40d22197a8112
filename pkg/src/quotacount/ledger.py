"""Transparency layer: ballot receipts and independent recount checks.

Voters get a private receipt (ballot id, salt, digest); the public ballot
file carries only the digest column. Anyone can recompute a digest from a
published ballot plus their own salt to confirm their vote is in the
count, and anyone can re-run the whole count from the published artifacts
and compare against the published outcome. Salts keep low-entropy ballots
(a handful of ids) from being brute-forced out of the public digests.

Digest construction (fixed so third parties can verify with any standard
tooling): SHA-256 over the UTF-8 bytes of
``ballot_id + "\n" + "|".join(sorted(selections)) + "\n" + salt_hex``.
Salts are 16 random bytes, lowercase hex (32 chars).
"""

from __future__ import annotations

import csv
import hashlib
import secrets
from dataclasses import dataclass, replace
from pathlib import Path
from random import Random
from typing import Iterable, Mapping, Sequence

from .model import Ballot, ElectionConfig
from .solver import DEFAULT_NODE_BUDGET, SolveOutcome, solve
from .tally import count_votes

SALT_BYTES = 16


@dataclass(frozen=True)
class Receipt:
    ballot_id: str
    salt: str
    digest: str

    def __post_init__(self):
        if len(self.salt) != 2 * SALT_BYTES or any(
            c not in "0123456789abcdef" for c in self.salt
        ):
            raise ValueError(f"salt must be {2 * SALT_BYTES} lowercase hex chars")
        if len(self.digest) != 64:
            raise ValueError("digest must be 64 hex chars (SHA-256)")


def canonical_ballot_string(
    ballot_id: str, selections: Iterable[str], salt_hex: str
) -> str:
    """The exact string that gets digested; sorted ids make order moot."""
    return f"{ballot_id}\n{'|'.join(sorted(selections))}\n{salt_hex}"


def ballot_digest(ballot_id: str, selections: Iterable[str], salt_hex: str) -> str:
    text = canonical_ballot_string(ballot_id, selections, salt_hex)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def make_receipt(ballot: Ballot, salt: bytes | None = None) -> Receipt:
    """Issue a receipt; pass ``salt`` only for reproducible pipelines."""
    raw = secrets.token_bytes(SALT_BYTES) if salt is None else salt
    if len(raw) != SALT_BYTES:
        raise ValueError(f"salt must be exactly {SALT_BYTES} bytes")
    salt_hex = raw.hex()
    return Receipt(
        ballot_id=ballot.ballot_id,
        salt=salt_hex,
        digest=ballot_digest(ballot.ballot_id, ballot.selections, salt_hex),
    )


def issue_receipts(
    ballots: Sequence[Ballot], *, salt_seed: int | None = None
) -> tuple[list[Ballot], list[Receipt]]:
    """Receipt every ballot; returns (publishable ballots, private receipts).

    The returned ballots carry the digest in their receipt column. With
    ``salt_seed`` the salts come from a seeded PRNG (byte-identical runs
    for tests and fixtures); without it, OS entropy.
    """
    rng = Random(salt_seed) if salt_seed is not None else None
    published: list[Ballot] = []
    receipts: list[Receipt] = []
    for ballot in ballots:
        salt = rng.randbytes(SALT_BYTES) if rng is not None else None
        receipt = make_receipt(ballot, salt=salt)
        published.append(replace(ballot, receipt=receipt.digest))
        receipts.append(receipt)
    return published, receipts


def verify_receipt(receipt: Receipt, published_ballots: Iterable[Ballot]) -> bool:
    """True iff some published ballot re-digests to the receipt's digest."""
    for ballot in published_ballots:
        if ballot.ballot_id != receipt.ballot_id:
            continue
        if ballot_digest(ballot.ballot_id, ballot.selections, receipt.salt) == receipt.digest:
            return True
    return False


@dataclass(frozen=True)
class VerificationResult:
    confirmed: bool
    diffs: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"confirmed": self.confirmed, "diffs": list(self.diffs)}


def verify_count(
    published_ballots: Sequence[Ballot],
    config: ElectionConfig,
    published_outcome: SolveOutcome,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> VerificationResult:
    """Re-run the whole count from published artifacts and compare.

    Re-tallies the ballots, re-solves under the published config, then
    compares status, objective, and committee against the published
    outcome. Any difference is itemized; an empty diff list means
    CONFIRMED.
    """
    tally = count_votes(published_ballots, config)
    recount = solve(tally, config, node_budget=node_budget)
    diffs: list[str] = []
    if recount.status != published_outcome.status:
        diffs.append(
            f"status: published {published_outcome.status},"
            f" recount {recount.status}"
        )
    if recount.objective != published_outcome.objective:
        diffs.append(
            f"objective: published {published_outcome.objective},"
            f" recount {recount.objective}"
        )
    if recount.committee != published_outcome.committee:
        gained = sorted(recount.committee - published_outcome.committee)
        lost = sorted(published_outcome.committee - recount.committee)
        diffs.append(
            f"committee: recount elects {gained or '[]'}"
            f" instead of {lost or '[]'}"
        )
    return VerificationResult(confirmed=not diffs, diffs=tuple(diffs))


# -- codecs -----------------------------------------------------------------

RECEIPT_COLUMNS = ("ballot_id", "salt", "digest")


def write_receipts_csv(path: str | Path, receipts: Sequence[Receipt]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(RECEIPT_COLUMNS)
        for r in receipts:
            writer.writerow([r.ballot_id, r.salt, r.digest])


def read_receipts_csv(path: str | Path) -> list[Receipt]:
    with open(path, "r", encoding="utf-8", newline="") as fp:
        reader = csv.DictReader(fp)
        if reader.fieldnames != list(RECEIPT_COLUMNS):
            raise ValueError(
                f"receipts CSV needs columns {','.join(RECEIPT_COLUMNS)}"
            )
        return [
            Receipt(
                ballot_id=row["ballot_id"],
                salt=row["salt"],
                digest=row["digest"],
            )
            for row in reader
        ]
