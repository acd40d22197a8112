// Mirrors of the counting service's JSON payloads. The browser never
// re-derives any of these numbers; it only displays what the server sent.

export type BoundType = "EXACT" | "AT_LEAST" | "AT_MOST";

export interface BoundJson {
  type: BoundType;
  value: number;
}

export interface CategoryBoundJson {
  category: string;
  bound: BoundJson;
}

export interface CriterionJson {
  attribute: string;
  categories: CategoryBoundJson[];
  preference_rank: number;
}

export interface CandidateJson {
  candidate_id: string;
  display_name: string;
  attributes: Record<string, string>;
}

export interface ConfigJson {
  election_id: string;
  seats: number;
  max_selections: number;
  roster: CandidateJson[];
  criteria: CriterionJson[];
  tie_policy: string;
  relaxation_policy: string;
}

export interface TallyJson {
  votes: Record<string, number>;
  total_votes_cast: number;
  ballots_counted: number;
  ballots_rejected: [string, string][];
}

export interface ElectionSnapshot {
  config: ConfigJson;
  tally: TallyJson;
}

export interface RelaxationJson {
  action: "BOUND_REDUCED" | "CRITERION_DROPPED";
  attribute: string;
  category: string | null;
  old_bound: BoundJson | null;
  new_bound: BoundJson | null;
}

export interface OutcomeJson {
  status: "OPTIMAL" | "RELAXED_OPTIMAL" | "INFEASIBLE";
  committee: string[];
  objective: number | null;
  forced: string[];
  co_optimal_committees: string[][] | null;
  applied_relaxations: RelaxationJson[];
  node_count: number;
}

export interface PriceJson {
  unconstrained_objective: number;
  constrained_objective: number;
  price: number;
  price_pct: number;
  total_votes_cast: number;
  lost_votes_unconstrained: number;
  lost_votes_unconstrained_pct: number;
  lost_votes_constrained: number;
  lost_votes_constrained_pct: number;
}

/** Per-category target vs reached row, as the server computes it. */
export interface DeficitRowJson {
  attribute: string;
  category: string;
  bound: BoundJson;
  reached: number;
  difference: number;
}

export interface CriteriaStatusJson {
  rows: DeficitRowJson[];
  unmet: DeficitRowJson[];
}

export interface FeasibilityDeficitJson {
  code: string;
  attribute: string | null;
  category: string | null;
  shortfall: number | null;
  detail: string;
}

export interface FeasibilityJson {
  feasible: boolean;
  deficits: FeasibilityDeficitJson[];
}

export interface DisplacementJson {
  candidate_id: string;
  votes: number;
  forced: boolean;
  categories: [string, string][];
  displaced: [string, number][];
}

/** GET /outcome: the full report bundle for the served election. */
export interface ReportBundle {
  election_id: string;
  config: ConfigJson;
  tally: TallyJson;
  outcome: OutcomeJson;
  price: PriceJson;
  criteria_status: CriteriaStatusJson;
  displacement: DisplacementJson[];
}

// -- what-if request ---------------------------------------------------

export type CriterionEditJson =
  | { op: "add_criterion"; criterion: CriterionJson }
  | { op: "remove_criterion"; attribute: string }
  | { op: "set_bound"; attribute: string; category: string; bound: BoundJson }
  | { op: "set_preference"; attribute: string; preference_rank: number };

export interface HypotheticalCandidateJson {
  candidate_id?: string;
  display_name: string;
  attributes: Record<string, string>;
  assumed_votes: number;
}

export interface WhatIfRequestJson {
  election_id?: string;
  edits: CriterionEditJson[];
  hypothetical_candidate?: HypotheticalCandidateJson;
  remove_candidates: string[];
  tie_policy?: string;
  relaxation_policy?: string;
}

export interface WhatIfResponseJson {
  outcome: OutcomeJson;
  price: PriceJson;
  forced: string[];
  feasibility: FeasibilityJson;
}
