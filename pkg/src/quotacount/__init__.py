"""Counting toolkit for quota-constrained plurality-at-large elections."""

from .model import (
    Ballot,
    Bound,
    BoundType,
    CandidateRecord,
    CategoryBound,
    CriterionSpec,
    ElectionConfig,
    ElectionError,
    InvalidConfigError,
    RelaxationPolicy,
    ShareSumError,
    TallyResult,
    TiePolicy,
    UnknownCandidateError,
    Violation,
    at_least,
    at_most,
    bounds_from_percentages,
    canonical_json,
    exact,
    percent_1dp,
    percent_tenths,
    validate_config,
)
from .criteria import (
    Answer,
    CriteriaBallot,
    CriteriaQuestion,
    CriteriaVoteResult,
    build_election_config,
    tally_criteria_vote,
)
from .tally import count_votes, validate_ballot
from .solver import (
    Deficit,
    FeasibilityReport,
    InfeasibleError,
    NodeBudgetExceededError,
    RelaxationRecord,
    RosterTooLargeError,
    SolveOutcome,
    SolveStatus,
    UnsatisfiableError,
    brute_force_solve,
    check_feasibility,
    find_forced_candidates,
    relax_until_feasible,
    solve,
    violated_constraints,
)
from .explain import (
    DeficitReport,
    DisplacementRecord,
    PriceReport,
    ReportBundle,
    build_report_bundle,
    deficit_report,
    displacement_report,
    price_report,
    render_report,
)
from .lpformat import read_assignment, variable_map, write_lp
from .ledger import (
    Receipt,
    ballot_digest,
    canonical_ballot_string,
    VerificationResult,
    issue_receipts,
    make_receipt,
    verify_count,
    verify_receipt,
)

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "Ballot",
    "Bound",
    "BoundType",
    "CandidateRecord",
    "CategoryBound",
    "CriteriaBallot",
    "CriteriaQuestion",
    "CriteriaVoteResult",
    "CriterionSpec",
    "Deficit",
    "DeficitReport",
    "DisplacementRecord",
    "ElectionConfig",
    "ElectionError",
    "FeasibilityReport",
    "InfeasibleError",
    "InvalidConfigError",
    "NodeBudgetExceededError",
    "PriceReport",
    "Receipt",
    "RelaxationPolicy",
    "RelaxationRecord",
    "ReportBundle",
    "RosterTooLargeError",
    "ShareSumError",
    "SolveOutcome",
    "SolveStatus",
    "TallyResult",
    "TiePolicy",
    "UnknownCandidateError",
    "UnsatisfiableError",
    "VerificationResult",
    "Violation",
    "at_least",
    "at_most",
    "ballot_digest",
    "bounds_from_percentages",
    "brute_force_solve",
    "build_election_config",
    "build_report_bundle",
    "canonical_ballot_string",
    "canonical_json",
    "check_feasibility",
    "count_votes",
    "deficit_report",
    "displacement_report",
    "exact",
    "find_forced_candidates",
    "issue_receipts",
    "make_receipt",
    "percent_1dp",
    "percent_tenths",
    "price_report",
    "read_assignment",
    "relax_until_feasible",
    "render_report",
    "solve",
    "tally_criteria_vote",
    "validate_ballot",
    "validate_config",
    "variable_map",
    "verify_count",
    "verify_receipt",
    "violated_constraints",
    "write_lp",
]
