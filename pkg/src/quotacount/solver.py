"""Exact committee optimization under per-category quota constraints.

The problem: pick exactly ``seats`` candidates maximizing total votes,
subject to per-criterion category bounds (each criterion partitions the
roster by one attribute; each category carries an EXACT / AT_LEAST /
AT_MOST seat bound). Binary decision per candidate, integer objective.

The production path is an in-house depth-first branch-and-bound chosen
for auditability: every pruning decision is explainable from the node's
partial committee and an admissible bound, and the whole search is
deterministic (fixed branch order, no wall clock, no randomness). A
brute-force enumerator over all C(m, k) committees doubles as the test
oracle for small rosters, and an LP-file bridge exists for anyone who
wants to cross-check with an external solver.

Bound design
------------
At a node we have a partial committee (value ``base``) and must place
``s`` more seats among the remaining suffix of the vote-sorted roster.
For each criterion alone, the best completion value is computable
exactly in one pass: reserve the mandatory seats (unmet lower bounds,
best members first), then spend the free seats on the highest-vote
suffix candidates whose category still has capacity. Each of those
single-criterion optima is an upper bound on the true multi-criterion
completion, so their minimum (together with the plain top-s vote sum) is
admissible. A criterion whose mandatory seats cannot be filled from the
suffix proves the node infeasible outright.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .model import (
    Bound,
    CategoryBound,
    CriterionSpec,
    ElectionConfig,
    ElectionError,
    InvalidConfigError,
    RelaxationPolicy,
    TallyResult,
    TiePolicy,
    validate_config,
)

DEFAULT_NODE_BUDGET = 50_000_000
BRUTE_FORCE_MAX_ROSTER = 24
TIE_REPORT_CAP = 100

ACTION_BOUND_REDUCED = "BOUND_REDUCED"
ACTION_CRITERION_DROPPED = "CRITERION_DROPPED"


class NodeBudgetExceededError(ElectionError):
    code = "NODE_BUDGET_EXCEEDED"


class RosterTooLargeError(ElectionError):
    code = "ROSTER_TOO_LARGE"


class UnsatisfiableError(ElectionError):
    code = "UNSATISFIABLE_EVEN_EMPTY"


class InfeasibleError(ElectionError):
    code = "INFEASIBLE"


class SolveStatus:
    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    RELAXED_OPTIMAL = "RELAXED_OPTIMAL"


@dataclass(frozen=True)
class RelaxationRecord:
    """One logged change made on the way to a feasible instance."""

    action: str
    attribute: str
    category: str | None = None
    old_bound: Bound | None = None
    new_bound: Bound | None = None

    def to_dict(self) -> dict:
        return {
            "action": self.action,
            "attribute": self.attribute,
            "category": self.category,
            "old_bound": self.old_bound.to_dict() if self.old_bound else None,
            "new_bound": self.new_bound.to_dict() if self.new_bound else None,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "RelaxationRecord":
        return cls(
            action=str(data["action"]),
            attribute=str(data["attribute"]),
            category=data.get("category"),
            old_bound=Bound.from_dict(data["old_bound"]) if data.get("old_bound") else None,
            new_bound=Bound.from_dict(data["new_bound"]) if data.get("new_bound") else None,
        )


@dataclass(frozen=True)
class SolveOutcome:
    """Result of one optimization run; serializes deterministically."""

    status: str
    committee: frozenset[str]
    objective: int | None
    forced: frozenset[str]
    co_optimal_committees: tuple[tuple[str, ...], ...] | None
    applied_relaxations: tuple[RelaxationRecord, ...]
    node_count: int

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "committee": sorted(self.committee),
            "objective": self.objective,
            "forced": sorted(self.forced),
            "co_optimal_committees": (
                None
                if self.co_optimal_committees is None
                else [list(c) for c in self.co_optimal_committees]
            ),
            "applied_relaxations": [r.to_dict() for r in self.applied_relaxations],
            "node_count": self.node_count,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SolveOutcome":
        co = data.get("co_optimal_committees")
        return cls(
            status=str(data["status"]),
            committee=frozenset(data["committee"]),
            objective=None if data["objective"] is None else int(data["objective"]),
            forced=frozenset(data.get("forced", ())),
            co_optimal_committees=(
                None if co is None else tuple(tuple(c) for c in co)
            ),
            applied_relaxations=tuple(
                RelaxationRecord.from_dict(r)
                for r in data.get("applied_relaxations", ())
            ),
            node_count=int(data.get("node_count", 0)),
        )


@dataclass(frozen=True)
class Deficit:
    """One reason a pool cannot seat a valid committee."""

    code: str
    attribute: str | None = None
    category: str | None = None
    shortfall: int | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "attribute": self.attribute,
            "category": self.category,
            "shortfall": self.shortfall,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    deficits: tuple[Deficit, ...] = ()

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "deficits": [d.to_dict() for d in self.deficits],
        }


class _NodeLedger:
    """Counts expanded nodes across every search one solve() performs."""

    __slots__ = ("count", "budget")

    def __init__(self, budget: int):
        self.count = 0
        self.budget = budget

    def spend(self) -> None:
        self.count += 1
        if self.count > self.budget:
            raise NodeBudgetExceededError(
                f"search exceeded the node budget of {self.budget}"
            )


class _Instance:
    """Vote-sorted arrays for one (votes, config, exclusions) search."""

    def __init__(
        self,
        votes: Mapping[str, int],
        config: ElectionConfig,
        exclude: frozenset[str] = frozenset(),
    ):
        roster = [c for c in config.roster if c.candidate_id not in exclude]
        roster.sort(key=lambda c: (-votes.get(c.candidate_id, 0), c.candidate_id))
        self.ids = [c.candidate_id for c in roster]
        self.w = [votes.get(c.candidate_id, 0) for c in roster]
        self.m = len(roster)
        self.k = config.seats

        self.wprefix = [0]
        for x in self.w:
            self.wprefix.append(self.wprefix[-1] + x)

        # Per criterion: lower/effective-upper per category index, and the
        # category index of each roster position.
        self.lowers: list[list[int]] = []
        self.uppers: list[list[int]] = []
        self.cat_of: list[list[int]] = []
        for crit in config.criteria:
            index = {cb.category: i for i, cb in enumerate(crit.categories)}
            self.lowers.append([cb.bound.lower for cb in crit.categories])
            self.uppers.append([cb.bound.upper(self.k) for cb in crit.categories])
            self.cat_of.append(
                [index[c.attributes[crit.attribute]] for c in roster]
            )
        self.ncrit = len(self.lowers)

    # -- admissible bound ---------------------------------------------------

    def _single_criterion_optimum(
        self, j: int, pos: int, s: int, counts_j: list[int]
    ) -> int | None:
        """Best completion value honoring only criterion j; None = infeasible.

        Exact for a single criterion: mandatory seats take the best members
        of each under-filled category, free seats take the best remaining
        candidates with category capacity left (greedy on a descending
        suffix is optimal for a partition constraint with lower bounds).
        """
        lower = self.lowers[j]
        upper = self.uppers[j]
        cat_of = self.cat_of[j]
        need = [0] * len(lower)
        total_need = 0
        for c, low in enumerate(lower):
            shy = low - counts_j[c]
            if shy > 0:
                need[c] = shy
                total_need += shy
        if total_need > s:
            return None
        free = s - total_need
        taken = [0] * len(lower)
        got = 0
        val = 0
        w = self.w
        for p in range(pos, self.m):
            if got == s:
                break
            c = cat_of[p]
            if taken[c] < need[c]:
                taken[c] += 1
                got += 1
                val += w[p]
            elif free > 0 and counts_j[c] + taken[c] < upper[c]:
                taken[c] += 1
                free -= 1
                got += 1
                val += w[p]
        if got < s:
            return None
        return val

    def completion_bound(
        self, pos: int, s: int, counts: list[list[int]]
    ) -> int | None:
        """Upper bound on the value addable from roster[pos:]; None = prune."""
        if self.m - pos < s:
            return None
        best = self.wprefix[pos + s] - self.wprefix[pos]
        for j in range(self.ncrit):
            b = self._single_criterion_optimum(j, pos, s, counts[j])
            if b is None:
                return None
            if b < best:
                best = b
        return best

    # -- searches -------------------------------------------------------

    def _lower_bounds_met(self, counts: list[list[int]]) -> bool:
        for j in range(self.ncrit):
            lower = self.lowers[j]
            cj = counts[j]
            for c, low in enumerate(lower):
                if cj[c] < low:
                    return False
        return True

    def optimize(
        self, ledger: _NodeLedger, keep_ties: bool
    ) -> tuple[int | None, tuple[str, ...] | None, list[tuple[str, ...]]]:
        """Full branch-and-bound.

        Returns (objective, lex-min optimal committee, co-optimal leaves in
        discovery order, capped). Pruning is strict (bound < incumbent) so
        ties are never lost; with keep_ties=False only the lex-min survives
        collection but equal-bound subtrees are still explored to find it.
        """
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 3 * self.m + 200))
        counts = [[0] * len(low) for low in self.lowers]
        chosen: list[str] = []
        best_obj: int | None = None
        best_tuple: tuple[str, ...] | None = None
        ties: list[tuple[str, ...]] = []

        k = self.k
        cat_of = self.cat_of
        uppers = self.uppers

        def dfs(pos: int, cur: int) -> None:
            nonlocal best_obj, best_tuple, ties
            ledger.spend()
            s = k - len(chosen)
            if s == 0:
                if not self._lower_bounds_met(counts):
                    return
                leaf = tuple(sorted(chosen))
                if best_obj is None or cur > best_obj:
                    best_obj = cur
                    best_tuple = leaf
                    ties = [leaf]
                elif cur == best_obj:
                    if keep_ties and len(ties) < TIE_REPORT_CAP:
                        ties.append(leaf)
                    if leaf < best_tuple:
                        best_tuple = leaf
                return
            ub = self.completion_bound(pos, s, counts)
            if ub is None:
                return
            if best_obj is not None and cur + ub < best_obj:
                return
            # include branch first: high-vote candidates into the committee
            # early gives a strong incumbent almost immediately.
            can_include = True
            for j in range(self.ncrit):
                c = cat_of[j][pos]
                if counts[j][c] + 1 > uppers[j][c]:
                    can_include = False
                    break
            if can_include:
                for j in range(self.ncrit):
                    counts[j][cat_of[j][pos]] += 1
                chosen.append(self.ids[pos])
                dfs(pos + 1, cur + self.w[pos])
                chosen.pop()
                for j in range(self.ncrit):
                    counts[j][cat_of[j][pos]] -= 1
            dfs(pos + 1, cur)

        dfs(0, 0)
        return best_obj, best_tuple, ties

    def first_feasible(self, ledger: _NodeLedger) -> tuple[str, ...] | None:
        """Depth-first probe for any valid committee; None when there is none."""
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 3 * self.m + 200))
        counts = [[0] * len(low) for low in self.lowers]
        chosen: list[str] = []
        k = self.k
        cat_of = self.cat_of
        uppers = self.uppers

        def dfs(pos: int) -> tuple[str, ...] | None:
            ledger.spend()
            s = k - len(chosen)
            if s == 0:
                if self._lower_bounds_met(counts):
                    return tuple(sorted(chosen))
                return None
            if self.completion_bound(pos, s, counts) is None:
                return None
            can_include = True
            for j in range(self.ncrit):
                c = cat_of[j][pos]
                if counts[j][c] + 1 > uppers[j][c]:
                    can_include = False
                    break
            if can_include:
                for j in range(self.ncrit):
                    counts[j][cat_of[j][pos]] += 1
                chosen.append(self.ids[pos])
                found = dfs(pos + 1)
                chosen.pop()
                for j in range(self.ncrit):
                    counts[j][cat_of[j][pos]] -= 1
                if found is not None:
                    return found
            return dfs(pos + 1)

        return dfs(0)


def _require_valid(config: ElectionConfig) -> None:
    violations = validate_config(config)
    if violations:
        raise InvalidConfigError(violations)


def _category_supply(config: ElectionConfig, crit: CriterionSpec) -> dict[str, int]:
    supply = {cb.category: 0 for cb in crit.categories}
    for cand in config.roster:
        cat = cand.attributes.get(crit.attribute)
        if cat in supply:
            supply[cat] += 1
    return supply


def _is_feasible(
    votes: Mapping[str, int], config: ElectionConfig, ledger: _NodeLedger
) -> bool:
    if config.seats > len(config.roster):
        return False
    return _Instance(votes, config).first_feasible(ledger) is not None


def solve(
    tally: TallyResult,
    config: ElectionConfig,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SolveOutcome:
    """Find a maximum-vote committee satisfying the configured criteria.

    Status is OPTIMAL on direct success; INFEASIBLE when no valid
    committee exists and the policy is FAIL; RELAXED_OPTIMAL when the
    FREE_SEATS_THEN_DROP policy had to weaken the config first (the
    applied changes ride along in ``applied_relaxations``). The forced
    set and, under REPORT_ALL, the co-optimal committees are computed
    against the active (post-relaxation) constraints.

    Raises NodeBudgetExceededError on pathological instances rather than
    ever returning an unproven answer, and UnsatisfiableError when more
    seats are requested than candidates exist under a relaxing policy.
    """
    _require_valid(config)
    votes = dict(tally.votes)
    ledger = _NodeLedger(node_budget)
    keep_ties = config.tie_policy is TiePolicy.REPORT_ALL

    active = config
    records: tuple[RelaxationRecord, ...] = ()
    best_obj, best_tuple, ties = _Instance(votes, active).optimize(ledger, keep_ties)

    status = SolveStatus.OPTIMAL
    if best_obj is None:
        if config.relaxation_policy is RelaxationPolicy.FAIL:
            return SolveOutcome(
                status=SolveStatus.INFEASIBLE,
                committee=frozenset(),
                objective=None,
                forced=frozenset(),
                co_optimal_committees=(() if keep_ties else None),
                applied_relaxations=(),
                node_count=ledger.count,
            )
        active, records = relax_until_feasible(tally, config, _ledger=ledger)
        best_obj, best_tuple, ties = _Instance(votes, active).optimize(
            ledger, keep_ties
        )
        if best_obj is None:  # relax_until_feasible guarantees otherwise
            raise AssertionError("relaxed instance still infeasible")
        status = SolveStatus.RELAXED_OPTIMAL

    forced = _forced_against(votes, active, frozenset(best_tuple), ledger)
    return SolveOutcome(
        status=status,
        committee=frozenset(best_tuple),
        objective=best_obj,
        forced=forced,
        co_optimal_committees=(tuple(sorted(ties)) if keep_ties else None),
        applied_relaxations=records,
        node_count=ledger.count,
    )


def brute_force_solve(
    tally: TallyResult,
    config: ElectionConfig,
    *,
    compute_forced: bool = False,
) -> SolveOutcome:
    """Enumerate every C(m, k) committee; the oracle the solver answers to.

    Same output contract as :func:`solve`, including the relaxation path,
    but built from nothing except itertools and a per-committee count.
    ``compute_forced=True`` intersects all feasible committees (exact
    forced semantics); otherwise the forced field is left empty to keep
    the enumeration single-purpose.
    """
    _require_valid(config)
    if len(config.roster) > BRUTE_FORCE_MAX_ROSTER:
        raise RosterTooLargeError(
            f"brute force caps at {BRUTE_FORCE_MAX_ROSTER} candidates,"
            f" got {len(config.roster)}"
        )
    votes = dict(tally.votes)
    keep_ties = config.tie_policy is TiePolicy.REPORT_ALL

    outcome = _brute_force_once(votes, config, keep_ties, compute_forced)
    if outcome is not None:
        status, best_obj, best_tuple, ties, forced, ncommittees = outcome
        return SolveOutcome(
            status=SolveStatus.OPTIMAL,
            committee=frozenset(best_tuple),
            objective=best_obj,
            forced=forced,
            co_optimal_committees=(tuple(sorted(ties)) if keep_ties else None),
            applied_relaxations=(),
            node_count=ncommittees,
        )

    if config.relaxation_policy is RelaxationPolicy.FAIL:
        return SolveOutcome(
            status=SolveStatus.INFEASIBLE,
            committee=frozenset(),
            objective=None,
            forced=frozenset(),
            co_optimal_committees=(() if keep_ties else None),
            applied_relaxations=(),
            node_count=0,
        )
    active, records = relax_until_feasible(tally, config)
    relaxed = _brute_force_once(votes, active, keep_ties, compute_forced)
    if relaxed is None:
        raise AssertionError("relaxed instance still infeasible")
    status, best_obj, best_tuple, ties, forced, ncommittees = relaxed
    return SolveOutcome(
        status=SolveStatus.RELAXED_OPTIMAL,
        committee=frozenset(best_tuple),
        objective=best_obj,
        forced=forced,
        co_optimal_committees=(tuple(sorted(ties)) if keep_ties else None),
        applied_relaxations=records,
        node_count=ncommittees,
    )


def _brute_force_once(votes, config, keep_ties, compute_forced):
    ids = [c.candidate_id for c in config.roster]
    w = [votes.get(cid, 0) for cid in ids]
    m = len(ids)
    k = config.seats
    if k > m:
        return None

    crits = []
    for crit in config.criteria:
        index = {cb.category: i for i, cb in enumerate(crit.categories)}
        lower = [cb.bound.lower for cb in crit.categories]
        upper = [cb.bound.upper(k) for cb in crit.categories]
        cat_of = [index[c.attributes[crit.attribute]] for c in config.roster]
        crits.append((lower, upper, cat_of))

    best_obj = None
    best_tuple = None
    ties: list[tuple[str, ...]] = []
    always_in: set[int] | None = None
    ncommittees = 0

    for combo in itertools.combinations(range(m), k):
        ncommittees += 1
        ok = True
        for lower, upper, cat_of in crits:
            counts = [0] * len(lower)
            for i in combo:
                counts[cat_of[i]] += 1
            for c in range(len(lower)):
                if not (lower[c] <= counts[c] <= upper[c]):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if compute_forced:
            if always_in is None:
                always_in = set(combo)
            else:
                always_in &= set(combo)
        value = sum(w[i] for i in combo)
        if best_obj is None or value > best_obj:
            best_obj = value
            best_tuple = tuple(sorted(ids[i] for i in combo))
            ties = [best_tuple]
        elif value == best_obj:
            leaf = tuple(sorted(ids[i] for i in combo))
            if keep_ties and len(ties) < TIE_REPORT_CAP:
                ties.append(leaf)
            if leaf < best_tuple:
                best_tuple = leaf

    if best_obj is None:
        return None
    forced = (
        frozenset(ids[i] for i in always_in) if compute_forced and always_in else frozenset()
    )
    return (SolveStatus.OPTIMAL, best_obj, best_tuple, ties, forced, ncommittees)


def check_feasibility(
    pool: Sequence, config: ElectionConfig, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> FeasibilityReport:
    """Can this candidate pool seat any valid committee at all?

    Structural shortfalls are named individually: a category with fewer
    candidates than its lower bound, a criterion whose lower bounds
    outgrow the seat count, a partition whose capacity cannot fill every
    seat, or a pool smaller than the committee. When the structure looks
    fine but the criteria still conflict jointly, a single
    CROSS_CRITERIA_CONFLICT deficit reports the search verdict.
    """
    work = replace(config, roster=tuple(pool))
    _require_valid(work)
    k = work.seats
    deficits: list[Deficit] = []

    if k > len(work.roster):
        deficits.append(
            Deficit(
                code="ROSTER_TOO_SMALL",
                shortfall=len(work.roster) - k,
                detail=f"{len(work.roster)} candidates for {k} seats",
            )
        )
    for crit in work.criteria:
        supply = _category_supply(work, crit)
        for cb in crit.categories:
            low = cb.bound.lower
            if supply[cb.category] < low:
                deficits.append(
                    Deficit(
                        code="CATEGORY_SUPPLY_SHORT",
                        attribute=crit.attribute,
                        category=cb.category,
                        shortfall=supply[cb.category] - low,
                        detail=(
                            f"{supply[cb.category]} candidates against"
                            f" {cb.bound.describe()}"
                        ),
                    )
                )
        if crit.lower_sum() > k:
            deficits.append(
                Deficit(
                    code="LOWER_BOUND_SUM_EXCEEDS_SEATS",
                    attribute=crit.attribute,
                    shortfall=k - crit.lower_sum(),
                    detail=f"lower bounds sum to {crit.lower_sum()} for {k} seats",
                )
            )
        capacity = sum(
            min(cb.bound.upper(k), supply[cb.category]) for cb in crit.categories
        )
        if capacity < k:
            deficits.append(
                Deficit(
                    code="PARTITION_CAPACITY_SHORT",
                    attribute=crit.attribute,
                    shortfall=capacity - k,
                    detail=f"at most {capacity} seats fillable of {k}",
                )
            )
    if deficits:
        return FeasibilityReport(feasible=False, deficits=tuple(deficits))

    votes = {c.candidate_id: 0 for c in work.roster}
    if _is_feasible(votes, work, _NodeLedger(node_budget)):
        return FeasibilityReport(feasible=True)
    return FeasibilityReport(
        feasible=False,
        deficits=(
            Deficit(
                code="CROSS_CRITERIA_CONFLICT",
                detail="per-criterion structure is satisfiable but no"
                " committee satisfies all criteria jointly",
            ),
        ),
    )


def find_forced_candidates(
    tally: TallyResult,
    config: ElectionConfig,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> frozenset[str]:
    """Candidates whose election is already decided by the constraints.

    Exact semantics: c is forced iff the instance with c excluded has no
    valid committee. Every forced candidate sits in every feasible
    committee, so only members of one known feasible committee need a
    probe; categories whose candidate supply equals their lower bound
    short-circuit (all their members are forced without a search).
    """
    _require_valid(config)
    votes = dict(tally.votes)
    ledger = _NodeLedger(node_budget)
    witness = _Instance(votes, config).first_feasible(ledger)
    if witness is None:
        raise InfeasibleError("no valid committee exists; nothing is forced")
    return _forced_against(votes, config, frozenset(witness), ledger)


def _forced_against(
    votes: Mapping[str, int],
    config: ElectionConfig,
    known_member_pool: frozenset[str],
    ledger: _NodeLedger,
) -> frozenset[str]:
    forced: set[str] = set()
    for crit in config.criteria:
        supply = _category_supply(config, crit)
        for cb in crit.categories:
            low = cb.bound.lower
            if low > 0 and supply[cb.category] == low:
                for cand in config.roster:
                    if cand.attributes.get(crit.attribute) == cb.category:
                        forced.add(cand.candidate_id)
    for cid in sorted(known_member_pool - forced):
        probe = _Instance(votes, config, exclude=frozenset((cid,)))
        if probe.first_feasible(ledger) is None:
            forced.add(cid)
    return frozenset(forced)


def relax_until_feasible(
    tally: TallyResult,
    config: ElectionConfig,
    *,
    _ledger: _NodeLedger | None = None,
) -> tuple[ElectionConfig, tuple[RelaxationRecord, ...]]:
    """Weaken the config, minimally and in policy order, until solvable.

    Stage 1 (free seats): every lower bound above its category's actual
    candidate supply is cut down to the supply, keeping its bound type.
    Stage 2 (drop): if criteria still conflict, whole criteria are removed
    least-preferred first (highest preference_rank number first) until a
    valid committee exists. Every change is returned as a record, in the
    order applied. With zero criteria and seats <= roster size the
    instance is always feasible, so the loop terminates.
    """
    if config.relaxation_policy is not RelaxationPolicy.FREE_SEATS_THEN_DROP:
        raise ValueError("relaxation requested under a non-relaxing policy")
    if config.seats > len(config.roster):
        raise UnsatisfiableError(
            f"{config.seats} seats cannot be filled from"
            f" {len(config.roster)} candidates"
        )
    ledger = _ledger if _ledger is not None else _NodeLedger(DEFAULT_NODE_BUDGET)
    votes = dict(tally.votes)
    if _is_feasible(votes, config, ledger):
        return config, ()

    records: list[RelaxationRecord] = []
    reduced: list[CriterionSpec] = []
    for crit in config.criteria:
        supply = _category_supply(config, crit)
        new_cbs: list[CategoryBound] = []
        for cb in crit.categories:
            low = cb.bound.lower
            sup = supply[cb.category]
            if low > sup:
                new_bound = Bound(cb.bound.type, sup)
                records.append(
                    RelaxationRecord(
                        action=ACTION_BOUND_REDUCED,
                        attribute=crit.attribute,
                        category=cb.category,
                        old_bound=cb.bound,
                        new_bound=new_bound,
                    )
                )
                new_cbs.append(CategoryBound(cb.category, new_bound))
            else:
                new_cbs.append(cb)
        reduced.append(replace(crit, categories=tuple(new_cbs)))
    work = config.with_criteria(reduced)
    if _is_feasible(votes, work, ledger):
        return work, tuple(records)

    remaining = sorted(work.criteria, key=lambda c: c.preference_rank)
    while remaining:
        dropped = remaining.pop()  # highest rank number = least preferred
        records.append(
            RelaxationRecord(
                action=ACTION_CRITERION_DROPPED, attribute=dropped.attribute
            )
        )
        work = work.with_criteria(remaining)
        if _is_feasible(votes, work, ledger):
            return work, tuple(records)
    raise AssertionError("criterion-free instance with k <= m must be feasible")


def violated_constraints(
    committee: Iterable[str], config: ElectionConfig
) -> list[str]:
    """Independent committee check: recount categories from raw attributes.

    Deliberately naive (dict counting, no solver machinery) so it can
    vouch for solver output. Returns human-readable violation lines;
    empty means the committee is valid.
    """
    members = list(committee)
    out: list[str] = []
    known = set(config.candidate_ids())
    for cid in members:
        if cid not in known:
            out.append(f"unknown candidate {cid!r}")
    if len(set(members)) != len(members):
        out.append("duplicate member in committee")
    if out:
        return out
    if len(members) != config.seats:
        out.append(f"committee size {len(members)}, need {config.seats}")
    for crit in config.criteria:
        counts: dict[str, int] = {}
        for cid in members:
            cat = config.candidate(cid).attributes[crit.attribute]
            counts[cat] = counts.get(cat, 0) + 1
        for cb in crit.categories:
            got = counts.get(cb.category, 0)
            if not cb.bound.admits(got):
                out.append(
                    f"{crit.attribute}/{cb.category}: reached {got},"
                    f" bound {cb.bound.describe()}"
                )
    return out
