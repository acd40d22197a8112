"""Layman-facing analyses of a solved election.

Four views, all derived from the same immutable inputs: a criteria status
table for any partial or full committee (targets vs reached), the price
of the criteria in votes, a narrative of which low-vote candidates were
seated by which binding categories, and a renderer that lays everything
out as JSON (lossless), Markdown, or plain text.

The narrative is a heuristic reading for publication: it follows the
two-step recipe of seating the undisputed top candidates plus the forced
ones and then explaining the rest through category deficits. It cannot
certify optimality; only the solver's search does that, and the rendered
report says so.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .model import (
    Bound,
    CandidateRecord,
    ElectionConfig,
    TallyResult,
    UnknownCandidateError,
    canonical_json,
    percent_1dp,
    percent_tenths,
)
from .solver import (
    DEFAULT_NODE_BUDGET,
    InfeasibleError,
    SolveOutcome,
    SolveStatus,
    solve,
)


@dataclass(frozen=True)
class DeficitRow:
    attribute: str
    category: str
    bound: Bound
    reached: int
    difference: int

    def to_dict(self) -> dict:
        return {
            "attribute": self.attribute,
            "category": self.category,
            "bound": self.bound.to_dict(),
            "reached": self.reached,
            "difference": self.difference,
        }


@dataclass(frozen=True)
class DeficitReport:
    rows: tuple[DeficitRow, ...]

    @property
    def unmet(self) -> tuple[DeficitRow, ...]:
        return tuple(r for r in self.rows if r.difference < 0)

    def to_dict(self) -> dict:
        return {
            "rows": [r.to_dict() for r in self.rows],
            "unmet": [r.to_dict() for r in self.unmet],
        }


def deficit_report(
    partial_committee: Iterable[str],
    config: ElectionConfig,
    roster: Sequence[CandidateRecord] | None = None,
) -> DeficitReport:
    """Targets vs reached counts for a (possibly partial) committee.

    ``difference`` is reached minus the bound's lower edge, so EXACT
    targets report their signed deviation and AT_MOST rows can only be
    zero or positive (an AT_MOST overrun on a partial committee shows as
    a positive difference against its own cap via the bound column).
    """
    pool = tuple(roster) if roster is not None else config.roster
    by_id = {c.candidate_id: c for c in pool}
    members: list[CandidateRecord] = []
    for cid in partial_committee:
        if cid not in by_id:
            raise UnknownCandidateError(f"not on the roster: {cid!r}")
        members.append(by_id[cid])

    rows: list[DeficitRow] = []
    for crit in config.criteria:
        counts: dict[str, int] = {}
        for member in members:
            cat = member.attributes.get(crit.attribute)
            if cat is not None:
                counts[cat] = counts.get(cat, 0) + 1
        for cb in crit.categories:
            reached = counts.get(cb.category, 0)
            rows.append(
                DeficitRow(
                    attribute=crit.attribute,
                    category=cb.category,
                    bound=cb.bound,
                    reached=reached,
                    difference=reached - cb.bound.lower,
                )
            )
    return DeficitReport(rows=tuple(rows))


@dataclass(frozen=True)
class PriceReport:
    unconstrained_objective: int
    constrained_objective: int
    price: int
    price_pct: float
    total_votes_cast: int
    lost_votes_unconstrained: int
    lost_votes_unconstrained_pct: float
    lost_votes_constrained: int
    lost_votes_constrained_pct: float

    def to_dict(self) -> dict:
        return {
            "unconstrained_objective": self.unconstrained_objective,
            "constrained_objective": self.constrained_objective,
            "price": self.price,
            "price_pct": self.price_pct,
            "total_votes_cast": self.total_votes_cast,
            "lost_votes_unconstrained": self.lost_votes_unconstrained,
            "lost_votes_unconstrained_pct": self.lost_votes_unconstrained_pct,
            "lost_votes_constrained": self.lost_votes_constrained,
            "lost_votes_constrained_pct": self.lost_votes_constrained_pct,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PriceReport":
        return cls(
            unconstrained_objective=int(data["unconstrained_objective"]),
            constrained_objective=int(data["constrained_objective"]),
            price=int(data["price"]),
            price_pct=float(data["price_pct"]),
            total_votes_cast=int(data["total_votes_cast"]),
            lost_votes_unconstrained=int(data["lost_votes_unconstrained"]),
            lost_votes_unconstrained_pct=float(data["lost_votes_unconstrained_pct"]),
            lost_votes_constrained=int(data["lost_votes_constrained"]),
            lost_votes_constrained_pct=float(data["lost_votes_constrained_pct"]),
        )


def price_report(
    tally: TallyResult,
    config: ElectionConfig,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> PriceReport:
    """How many votes the criteria cost, against the unconstrained top-k.

    Runs the solver twice: once as configured, once with the criteria
    stripped. Lost-vote percentages are one-decimal, half-up, over total
    votes cast; the headline price percentage is the difference of the
    two rounded lost-vote percentages (the published convention, computed
    in integer tenths so no float noise can move it).
    """
    constrained = solve(tally, config, node_budget=node_budget)
    if constrained.status == SolveStatus.INFEASIBLE:
        raise InfeasibleError("cannot price an infeasible instance")
    unconstrained = solve(tally, config.with_criteria(()), node_budget=node_budget)
    if unconstrained.status == SolveStatus.INFEASIBLE:
        raise InfeasibleError("instance infeasible even without criteria")

    total = tally.total_votes_cast
    lost_unc = total - unconstrained.objective
    lost_con = total - constrained.objective
    lu_tenths = percent_tenths(lost_unc, total)
    lc_tenths = percent_tenths(lost_con, total)
    return PriceReport(
        unconstrained_objective=unconstrained.objective,
        constrained_objective=constrained.objective,
        price=unconstrained.objective - constrained.objective,
        price_pct=(lc_tenths - lu_tenths) / 10.0,
        total_votes_cast=total,
        lost_votes_unconstrained=lost_unc,
        lost_votes_unconstrained_pct=lu_tenths / 10.0,
        lost_votes_constrained=lost_con,
        lost_votes_constrained_pct=lc_tenths / 10.0,
    )


@dataclass(frozen=True)
class DisplacementRecord:
    """Why one below-the-cut candidate was seated anyway."""

    candidate_id: str
    votes: int
    forced: bool
    displaced: tuple[tuple[str, int], ...]
    categories: tuple[tuple[str, str], ...]

    def to_dict(self) -> dict:
        return {
            "candidate_id": self.candidate_id,
            "votes": self.votes,
            "forced": self.forced,
            "displaced": [list(pair) for pair in self.displaced],
            "categories": [list(pair) for pair in self.categories],
        }


def displacement_report(
    outcome: SolveOutcome, tally: TallyResult, config: ElectionConfig
) -> tuple[DisplacementRecord, ...]:
    """Narrative records for every elected candidate below the vote cut.

    The cut is the k-th highest vote count. For each elected candidate
    strictly below it, the record lists the unelected candidates with
    more votes and the category memberships that explain the seat:
    scarce categories (supply equals the lower bound) for forced
    candidates, otherwise the candidate's categories that were still
    unmet after seating the undisputed top prefix and the forced set.
    """
    if outcome.status not in (SolveStatus.OPTIMAL, SolveStatus.RELAXED_OPTIMAL):
        raise ValueError(f"nothing to explain for status {outcome.status}")
    votes = dict(tally.votes)
    order = sorted(votes, key=lambda cid: (-votes[cid], cid))
    if len(order) <= config.seats:
        return ()
    cut_value = votes[order[config.seats - 1]]
    flagged = [
        cid for cid in order if cid in outcome.committee and votes[cid] < cut_value
    ]
    if not flagged:
        return ()

    prefix: list[str] = []
    for cid in order:
        if cid not in outcome.committee:
            break
        prefix.append(cid)
    partial = set(prefix) | set(outcome.forced)

    unmet_with_forced = {
        (r.attribute, r.category) for r in deficit_report(partial, config).unmet
    }
    unmet_prefix = {
        (r.attribute, r.category) for r in deficit_report(prefix, config).unmet
    }
    scarce: set[tuple[str, str]] = set()
    for crit in config.criteria:
        supply: dict[str, int] = {}
        for cand in config.roster:
            cat = cand.attributes.get(crit.attribute)
            if cat is not None:
                supply[cat] = supply.get(cat, 0) + 1
        for cb in crit.categories:
            if cb.bound.lower > 0 and supply.get(cb.category, 0) == cb.bound.lower:
                scarce.add((crit.attribute, cb.category))

    records: list[DisplacementRecord] = []
    for cid in flagged:
        cand = config.candidate(cid)
        pairs = [
            (crit.attribute, cand.attributes[crit.attribute])
            for crit in config.criteria
            if crit.attribute in cand.attributes
        ]
        is_forced = cid in outcome.forced
        if is_forced:
            cats = [p for p in pairs if p in scarce and p in unmet_prefix]
            if not cats:
                cats = [p for p in pairs if p in unmet_prefix]
        else:
            cats = [p for p in pairs if p in unmet_with_forced]
        displaced = tuple(
            (uid, votes[uid])
            for uid in order
            if uid not in outcome.committee and votes[uid] > votes[cid]
        )
        records.append(
            DisplacementRecord(
                candidate_id=cid,
                votes=votes[cid],
                forced=is_forced,
                displaced=displaced,
                categories=tuple(cats),
            )
        )
    return tuple(records)


@dataclass(frozen=True)
class ReportBundle:
    """Everything the renderer needs, precomputed and immutable."""

    config: ElectionConfig
    tally: TallyResult
    outcome: SolveOutcome
    price: PriceReport | None
    criteria_status: DeficitReport | None
    displacement: tuple[DisplacementRecord, ...]

    def to_dict(self) -> dict:
        return {
            "election_id": self.config.election_id,
            "config": self.config.to_dict(),
            "tally": self.tally.to_dict(),
            "outcome": self.outcome.to_dict(),
            "price": self.price.to_dict() if self.price else None,
            "criteria_status": (
                self.criteria_status.to_dict() if self.criteria_status else None
            ),
            "displacement": [r.to_dict() for r in self.displacement],
        }


def build_report_bundle(
    config: ElectionConfig,
    tally: TallyResult,
    outcome: SolveOutcome,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> ReportBundle:
    """Assemble the full analysis for one solved election."""
    if outcome.status == SolveStatus.INFEASIBLE:
        return ReportBundle(
            config=config,
            tally=tally,
            outcome=outcome,
            price=None,
            criteria_status=None,
            displacement=(),
        )
    return ReportBundle(
        config=config,
        tally=tally,
        outcome=outcome,
        price=price_report(tally, config, node_budget=node_budget),
        criteria_status=deficit_report(outcome.committee, config),
        displacement=displacement_report(outcome, tally, config),
    )


FORMAT_TEXT = "text"
FORMAT_JSON = "json"
FORMAT_MARKDOWN = "markdown"


def render_report(bundle: ReportBundle, fmt: str) -> str:
    """Render the bundle; JSON is lossless, the others mirror its tables."""
    if fmt == FORMAT_JSON:
        return canonical_json(bundle.to_dict())
    if fmt == FORMAT_MARKDOWN:
        return _render_tables(bundle, markdown=True)
    if fmt == FORMAT_TEXT:
        return _render_tables(bundle, markdown=False)
    raise ValueError(f"unknown report format {fmt!r}")


def _candidate_rows(bundle: ReportBundle) -> tuple[list[str], list[list[str]]]:
    config = bundle.config
    votes = dict(bundle.tally.votes)
    attrs = [crit.attribute for crit in config.criteria]
    header = ["candidate", *attrs, "votes", "elected"]
    order = sorted(
        config.roster, key=lambda c: (-votes.get(c.candidate_id, 0), c.candidate_id)
    )
    rows = []
    for cand in order:
        rows.append(
            [
                f"{cand.candidate_id}",
                *[cand.attributes.get(a, "") for a in attrs],
                str(votes.get(cand.candidate_id, 0)),
                "yes" if cand.candidate_id in bundle.outcome.committee else "",
            ]
        )
    return header, rows


def _status_rows(report: DeficitReport) -> tuple[list[str], list[list[str]]]:
    header = ["criterion", "category", "target", "reached", "difference"]
    rows = []
    for r in report.rows:
        rows.append(
            [
                r.attribute,
                r.category,
                r.bound.describe(),
                str(r.reached),
                f"{r.difference:+d}" if r.difference else "0",
            ]
        )
    return header, rows


def _table(header: list[str], rows: list[list[str]], markdown: bool) -> list[str]:
    if markdown:
        out = ["| " + " | ".join(header) + " |"]
        out.append("|" + "|".join(" --- " for _ in header) + "|")
        for row in rows:
            out.append("| " + " | ".join(row) + " |")
        return out
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    fmt_row = lambda r: "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(r)).rstrip()
    out = [fmt_row(header), fmt_row(["-" * w for w in widths])]
    out.extend(fmt_row(row) for row in rows)
    return out


def _render_tables(bundle: ReportBundle, markdown: bool) -> str:
    h1 = "# " if markdown else ""
    h2 = "## " if markdown else ""
    outcome = bundle.outcome
    total = bundle.tally.total_votes_cast
    lines: list[str] = []
    lines.append(f"{h1}Election report: {bundle.config.election_id}")
    lines.append("")

    if outcome.status == SolveStatus.INFEASIBLE:
        lines.append(
            "Status: INFEASIBLE. No committee of the required size satisfies"
            " the adopted criteria."
        )
        return "\n".join(lines) + "\n"

    share = percent_1dp(outcome.objective, total) if total else 0.0
    lines.append(
        f"Status: {outcome.status}. Committee total: {outcome.objective}"
        f" of {total} votes cast ({share}%)."
    )
    if outcome.co_optimal_committees is not None and len(outcome.co_optimal_committees) > 1:
        lines.append(
            f"Ties: {len(outcome.co_optimal_committees)} co-optimal committees"
            " exist; organizers must resolve the tie outside this tool."
        )
    lines.append("")

    lines.append(f"{h2}Committee")
    lines.append("")
    header, rows = _candidate_rows(bundle)
    lines.extend(_table(header, rows, markdown))
    lines.append("")

    if bundle.criteria_status and bundle.criteria_status.rows:
        lines.append(f"{h2}Criteria status")
        lines.append("")
        header, rows = _status_rows(bundle.criteria_status)
        lines.extend(_table(header, rows, markdown))
        lines.append("")

    if bundle.price is not None:
        p = bundle.price
        lines.append(f"{h2}Price of the criteria")
        lines.append("")
        lines.append(
            f"- Unconstrained top-{bundle.config.seats} total:"
            f" {p.unconstrained_objective}"
            f" (lost {p.lost_votes_unconstrained},"
            f" {p.lost_votes_unconstrained_pct}%)"
        )
        lines.append(
            f"- Committee total under criteria: {p.constrained_objective}"
            f" (lost {p.lost_votes_constrained},"
            f" {p.lost_votes_constrained_pct}%)"
        )
        lines.append(
            f"- Price: {p.price} votes ({p.price_pct}% of votes cast)"
        )
        lines.append("")

    if outcome.forced:
        lines.append(f"{h2}Protected candidates")
        lines.append("")
        lines.append(
            ", ".join(sorted(outcome.forced))
            + " sit in every committee that satisfies the criteria."
        )
        lines.append("")

    if bundle.displacement:
        lines.append(f"{h2}Criteria-selected candidates")
        lines.append("")
        for rec in bundle.displacement:
            over = ", ".join(f"{cid} ({v})" for cid, v in rec.displaced)
            why = (
                "protected: " + ", ".join(f"{a}={c}" for a, c in rec.categories)
                if rec.forced
                else "fills " + ", ".join(f"{a}={c}" for a, c in rec.categories)
            )
            if not rec.categories:
                why = "required by the joint criteria"
            lines.append(
                f"- {rec.candidate_id} ({rec.votes} votes) seated over {over};"
                f" {why}."
            )
        lines.append("")
        lines.append(
            "This narrative is a heuristic reading of the result; the"
            " optimality certificate is the solver's exhaustive search."
        )
        lines.append("")

    if outcome.applied_relaxations:
        lines.append(f"{h2}Applied relaxations")
        lines.append("")
        for rec in outcome.applied_relaxations:
            if rec.new_bound is not None:
                lines.append(
                    f"- {rec.attribute}={rec.category}: bound"
                    f" {rec.old_bound.describe()} reduced to"
                    f" {rec.new_bound.describe()} (candidate supply)"
                )
            else:
                lines.append(f"- criterion {rec.attribute!r} dropped")
        lines.append("")

    return "\n".join(lines) + "\n"
