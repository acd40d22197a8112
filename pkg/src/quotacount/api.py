"""HTTP facade over the solver and explainers.

Read-mostly and stateless: the served election snapshot (config + tally)
is immutable, and every what-if request solves a derived copy without
touching it. What-if solves run under a tight node budget so the
interactive loop stays responsive; a blown budget is a 503, never a slow
answer. No authentication: the service is meant to bind to localhost,
hardening is an ops concern.
"""

from __future__ import annotations

import dataclasses
import threading
from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .explain import build_report_bundle, price_report
from .model import (
    Bound,
    CandidateRecord,
    CriterionSpec,
    ElectionConfig,
    InvalidConfigError,
    RelaxationPolicy,
    TallyResult,
    TiePolicy,
    validate_config,
)
from .solver import (
    InfeasibleError,
    NodeBudgetExceededError,
    SolveStatus,
    UnsatisfiableError,
    check_feasibility,
    solve,
    violated_constraints,
)

WHATIF_NODE_BUDGET = 1_000_000


class BoundModel(BaseModel):
    type: Literal["EXACT", "AT_LEAST", "AT_MOST"]
    value: int = Field(ge=0)


class CategoryBoundModel(BaseModel):
    category: str
    bound: BoundModel


class CriterionModel(BaseModel):
    attribute: str
    categories: list[CategoryBoundModel]
    preference_rank: int = Field(ge=1)


class CriterionEdit(BaseModel):
    op: Literal["add_criterion", "remove_criterion", "set_bound", "set_preference"]
    attribute: str | None = None
    criterion: CriterionModel | None = None
    category: str | None = None
    bound: BoundModel | None = None
    preference_rank: int | None = None


class HypotheticalCandidate(BaseModel):
    candidate_id: str | None = None
    display_name: str = ""
    attributes: dict[str, str]
    assumed_votes: int = Field(default=0, ge=0)


class WhatIfRequest(BaseModel):
    election_id: str | None = None
    edits: list[CriterionEdit] = Field(default_factory=list)
    hypothetical_candidate: HypotheticalCandidate | None = None
    remove_candidates: list[str] = Field(default_factory=list)
    tie_policy: Literal["REPORT_ALL", "LEXICOGRAPHIC"] | None = None
    relaxation_policy: Literal["FAIL", "FREE_SEATS_THEN_DROP"] | None = None


def _bad_request(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail=message)


def _apply_edits(
    config: ElectionConfig, votes: dict[str, int], req: WhatIfRequest
) -> tuple[ElectionConfig, dict[str, int]]:
    """Build the hypothetical instance; raises 400-grade errors on bad refs."""
    criteria = list(config.criteria)
    roster = list(config.roster)
    votes = dict(votes)

    def crit_index(attribute: str | None) -> int:
        if attribute is None:
            raise _bad_request("edit is missing its attribute")
        for i, crit in enumerate(criteria):
            if crit.attribute == attribute:
                return i
        raise _bad_request(f"no criterion for attribute {attribute!r}")

    for edit in req.edits:
        if edit.op == "add_criterion":
            if edit.criterion is None:
                raise _bad_request("add_criterion needs a criterion body")
            if any(c.attribute == edit.criterion.attribute for c in criteria):
                raise _bad_request(
                    f"criterion {edit.criterion.attribute!r} already exists"
                )
            criteria.append(CriterionSpec.from_dict(edit.criterion.model_dump()))
        elif edit.op == "remove_criterion":
            criteria.pop(crit_index(edit.attribute))
        elif edit.op == "set_bound":
            i = crit_index(edit.attribute)
            if edit.category is None or edit.bound is None:
                raise _bad_request("set_bound needs category and bound")
            crit = criteria[i]
            if edit.category not in crit.category_names():
                raise _bad_request(
                    f"{edit.attribute!r} has no category {edit.category!r}"
                )
            new_cbs = tuple(
                dataclasses.replace(cb, bound=Bound.from_dict(edit.bound.model_dump()))
                if cb.category == edit.category
                else cb
                for cb in crit.categories
            )
            criteria[i] = dataclasses.replace(crit, categories=new_cbs)
        elif edit.op == "set_preference":
            i = crit_index(edit.attribute)
            if edit.preference_rank is None or edit.preference_rank < 1:
                raise _bad_request("set_preference needs preference_rank >= 1")
            criteria[i] = dataclasses.replace(
                criteria[i], preference_rank=edit.preference_rank
            )

    if req.hypothetical_candidate is not None:
        hypo = req.hypothetical_candidate
        cid = hypo.candidate_id or "hypothetical"
        if any(c.candidate_id == cid for c in roster):
            raise _bad_request(f"candidate id {cid!r} already on the roster")
        roster.append(
            CandidateRecord(
                candidate_id=cid,
                display_name=hypo.display_name or cid,
                attributes=dict(hypo.attributes),
            )
        )
        votes[cid] = hypo.assumed_votes

    for cid in req.remove_candidates:
        if not any(c.candidate_id == cid for c in roster):
            raise _bad_request(f"cannot remove unknown candidate {cid!r}")
        roster = [c for c in roster if c.candidate_id != cid]
        votes.pop(cid, None)

    edited = dataclasses.replace(
        config,
        roster=tuple(roster),
        criteria=tuple(criteria),
        tie_policy=TiePolicy(req.tie_policy) if req.tie_policy else config.tie_policy,
        relaxation_policy=(
            RelaxationPolicy(req.relaxation_policy)
            if req.relaxation_policy
            else config.relaxation_policy
        ),
    )
    violations = validate_config(edited)
    if violations:
        raise _bad_request(
            "edited config is invalid: "
            + "; ".join(f"{v.code}: {v.message}" for v in violations)
        )
    return edited, votes


def create_app(
    config: ElectionConfig,
    tally: TallyResult,
    *,
    whatif_node_budget: int = WHATIF_NODE_BUDGET,
    cors_origins: tuple[str, ...] = (),
) -> FastAPI:
    """Serve one election snapshot; all state is computed, never mutated."""
    violations = validate_config(config)
    if violations:
        raise InvalidConfigError(violations)

    app = FastAPI(title="quotacount", version="0.1.0")
    if cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    cache_lock = threading.Lock()
    cached_bundle: dict = {}

    def outcome_bundle() -> dict:
        # computed once per process; the snapshot never changes underneath
        with cache_lock:
            if not cached_bundle:
                outcome = solve(tally, config)
                bundle = build_report_bundle(config, tally, outcome)
                cached_bundle["payload"] = bundle.to_dict()
            return cached_bundle["payload"]

    @app.get("/election")
    def get_election() -> dict:
        return {"config": config.to_dict(), "tally": tally.to_dict()}

    @app.get("/outcome")
    def get_outcome() -> dict:
        return outcome_bundle()

    @app.post("/whatif")
    def post_whatif(req: WhatIfRequest) -> dict:
        if req.election_id is not None and req.election_id != config.election_id:
            raise _bad_request(
                f"this service hosts {config.election_id!r}, not {req.election_id!r}"
            )
        edited, votes = _apply_edits(config, dict(tally.votes), req)
        new_tally = TallyResult(
            votes=votes,
            total_votes_cast=sum(votes.values()),
            ballots_counted=tally.ballots_counted,
            ballots_rejected=(),
        )
        try:
            feasibility = check_feasibility(
                edited.roster, edited, node_budget=whatif_node_budget
            )
        except NodeBudgetExceededError as exc:
            raise HTTPException(status_code=503, detail=str(exc))
        try:
            outcome = solve(new_tally, edited, node_budget=whatif_node_budget)
        except NodeBudgetExceededError as exc:
            raise HTTPException(status_code=503, detail=str(exc))
        except UnsatisfiableError:
            return_payload = feasibility.to_dict()
            raise HTTPException(
                status_code=422,
                detail={
                    "message": "more seats than candidates",
                    "feasibility": return_payload,
                },
            )
        if outcome.status == SolveStatus.INFEASIBLE:
            raise HTTPException(
                status_code=422,
                detail={
                    "message": "no committee satisfies the edited criteria",
                    "feasibility": feasibility.to_dict(),
                },
            )
        try:
            price = price_report(new_tally, edited, node_budget=whatif_node_budget)
        except NodeBudgetExceededError as exc:
            raise HTTPException(status_code=503, detail=str(exc))
        except InfeasibleError as exc:  # FAIL-policy edge after a feasible solve
            raise HTTPException(status_code=422, detail=str(exc))
        bad = violated_constraints(outcome.committee, _active_config(edited, outcome))
        if bad:  # defensive: a solver bug must never reach a 200
            raise HTTPException(status_code=500, detail={"violations": bad})
        return {
            "outcome": outcome.to_dict(),
            "price": price.to_dict(),
            "forced": sorted(outcome.forced),
            "feasibility": feasibility.to_dict(),
        }

    @app.post("/feasibility")
    def post_feasibility(body: dict) -> dict:
        pool_data = body.get("pool")
        if not isinstance(pool_data, list):
            raise _bad_request("body must carry a 'pool' list of candidates")
        try:
            pool = [CandidateRecord.from_dict(c) for c in pool_data]
        except (KeyError, TypeError, AttributeError) as exc:
            raise _bad_request(f"malformed candidate in pool: {exc}")
        try:
            report = check_feasibility(pool, config, node_budget=whatif_node_budget)
        except InvalidConfigError as exc:
            raise _bad_request(str(exc))
        except NodeBudgetExceededError as exc:
            raise HTTPException(status_code=503, detail=str(exc))
        return report.to_dict()

    return app


def _active_config(edited: ElectionConfig, outcome) -> ElectionConfig:
    """Config whose constraints the committee must satisfy (post-relaxation)."""
    if not outcome.applied_relaxations:
        return edited
    criteria = {c.attribute: c for c in edited.criteria}
    for rec in outcome.applied_relaxations:
        if rec.new_bound is None:
            criteria.pop(rec.attribute, None)
        else:
            crit = criteria[rec.attribute]
            criteria[rec.attribute] = dataclasses.replace(
                crit,
                categories=tuple(
                    dataclasses.replace(cb, bound=rec.new_bound)
                    if cb.category == rec.category
                    else cb
                    for cb in crit.categories
                ),
            )
    return edited.with_criteria(
        criteria[c.attribute] for c in edited.criteria if c.attribute in criteria
    )
