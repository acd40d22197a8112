// Draft scenario state with an undoable action history.
//
// The draft is never mutated in place: it is always the fold of the action
// history over the served baseline, so replaying the history reproduces the
// draft exactly and undo is just "fold one action fewer". Serialization is
// canonical (sorted keys), which makes "undo restores the previous draft"
// checkable byte for byte.

import type {
  BoundJson,
  ConfigJson,
  CriterionEditJson,
  CriterionJson,
  HypotheticalCandidateJson,
  WhatIfRequestJson,
} from "./types.js";

export type ScenarioAction =
  | { kind: "add_criterion"; criterion: CriterionJson }
  | { kind: "remove_criterion"; attribute: string }
  | { kind: "set_bound"; attribute: string; category: string; bound: BoundJson }
  | { kind: "set_preference"; attribute: string; preference_rank: number }
  | { kind: "remove_candidate"; candidate_id: string }
  | { kind: "restore_candidate"; candidate_id: string }
  | { kind: "set_hypothetical"; candidate: HypotheticalCandidateJson }
  | { kind: "clear_hypothetical" };

/** The accumulated effect of the action history. */
export interface ScenarioDraft {
  edits: CriterionEditJson[];
  removeCandidates: string[];
  hypothetical: HypotheticalCandidateJson | null;
}

function emptyDraft(): ScenarioDraft {
  return { edits: [], removeCandidates: [], hypothetical: null };
}

function foldAction(draft: ScenarioDraft, action: ScenarioAction): ScenarioDraft {
  switch (action.kind) {
    case "add_criterion":
      return {
        ...draft,
        edits: [...draft.edits, { op: "add_criterion", criterion: action.criterion }],
      };
    case "remove_criterion":
      return {
        ...draft,
        edits: [...draft.edits, { op: "remove_criterion", attribute: action.attribute }],
      };
    case "set_bound":
      return {
        ...draft,
        edits: [
          ...draft.edits,
          {
            op: "set_bound",
            attribute: action.attribute,
            category: action.category,
            bound: action.bound,
          },
        ],
      };
    case "set_preference":
      return {
        ...draft,
        edits: [
          ...draft.edits,
          {
            op: "set_preference",
            attribute: action.attribute,
            preference_rank: action.preference_rank,
          },
        ],
      };
    case "remove_candidate":
      return draft.removeCandidates.includes(action.candidate_id)
        ? draft
        : { ...draft, removeCandidates: [...draft.removeCandidates, action.candidate_id] };
    case "restore_candidate":
      return {
        ...draft,
        removeCandidates: draft.removeCandidates.filter(
          (id) => id !== action.candidate_id,
        ),
      };
    case "set_hypothetical":
      return { ...draft, hypothetical: action.candidate };
    case "clear_hypothetical":
      return { ...draft, hypothetical: null };
  }
}

/** Apply criterion edits to a config the way the server will. */
export function applyEditsToConfig(
  base: ConfigJson,
  draft: ScenarioDraft,
): ConfigJson {
  let criteria: CriterionJson[] = base.criteria.map((c) => ({
    attribute: c.attribute,
    preference_rank: c.preference_rank,
    categories: c.categories.map((e) => ({ category: e.category, bound: { ...e.bound } })),
  }));
  for (const edit of draft.edits) {
    switch (edit.op) {
      case "add_criterion":
        criteria = [...criteria, edit.criterion];
        break;
      case "remove_criterion":
        criteria = criteria.filter((c) => c.attribute !== edit.attribute);
        break;
      case "set_bound":
        criteria = criteria.map((c) =>
          c.attribute !== edit.attribute
            ? c
            : {
                ...c,
                categories: c.categories.map((e) =>
                  e.category === edit.category ? { ...e, bound: edit.bound } : e,
                ),
              },
        );
        break;
      case "set_preference":
        criteria = criteria.map((c) =>
          c.attribute !== edit.attribute
            ? c
            : { ...c, preference_rank: edit.preference_rank },
        );
        break;
    }
  }
  const removed = new Set(draft.removeCandidates);
  let roster = base.roster.filter((c) => !removed.has(c.candidate_id));
  if (draft.hypothetical) {
    roster = [
      ...roster,
      {
        candidate_id: draft.hypothetical.candidate_id ?? "hypothetical",
        display_name: draft.hypothetical.display_name,
        attributes: draft.hypothetical.attributes,
      },
    ];
  }
  return { ...base, criteria, roster };
}

/** JSON.stringify with keys sorted at every level. */
export function canonicalJson(value: unknown): string {
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalJson).join(",") + "]";
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.entries(value as Record<string, unknown>)
      .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
      .map(([k, v]) => JSON.stringify(k) + ":" + canonicalJson(v));
    return "{" + entries.join(",") + "}";
  }
  return JSON.stringify(value);
}

export class WorkbenchState {
  private past: ScenarioAction[] = [];
  private future: ScenarioAction[] = [];

  constructor(readonly baseline: ConfigJson) {}

  apply(action: ScenarioAction): void {
    this.past.push(action);
    this.future = []; // a new edit forks away from anything undone
  }

  undo(): boolean {
    const action = this.past.pop();
    if (action === undefined) return false;
    this.future.push(action);
    return true;
  }

  redo(): boolean {
    const action = this.future.pop();
    if (action === undefined) return false;
    this.past.push(action);
    return true;
  }

  canUndo(): boolean {
    return this.past.length > 0;
  }

  canRedo(): boolean {
    return this.future.length > 0;
  }

  get history(): readonly ScenarioAction[] {
    return this.past;
  }

  /** Fold of the whole committed history; recomputed, never cached. */
  get draft(): ScenarioDraft {
    return this.past.reduce(foldAction, emptyDraft());
  }

  draftConfig(): ConfigJson {
    return applyEditsToConfig(this.baseline, this.draft);
  }

  serializeDraft(): string {
    return canonicalJson(this.draftConfig());
  }

  isPristine(): boolean {
    const draft = this.draft;
    return (
      draft.edits.length === 0 &&
      draft.removeCandidates.length === 0 &&
      draft.hypothetical === null
    );
  }

  toWhatIfRequest(): WhatIfRequestJson {
    const draft = this.draft;
    const request: WhatIfRequestJson = {
      election_id: this.baseline.election_id,
      edits: draft.edits,
      remove_candidates: draft.removeCandidates,
    };
    if (draft.hypothetical) {
      request.hypothetical_candidate = draft.hypothetical;
    }
    return request;
  }
}
