// Glue between the API client, the draft state, the what-if scheduler,
// and the render functions. Produces a complete view model on every
// meaningful change; the app shell only copies it into the DOM.

import { ApiError, WorkbenchApi } from "./api.js";
import {
  computeDeficitRows,
  escapeHtml,
  renderCommitteeTable,
  renderCriteriaEditor,
  renderDeficitTable,
  renderFeasibilityNote,
  renderForcedBadges,
  renderOutcomeSummary,
  renderPriceBanner,
  renderRelaxations,
} from "./render.js";
import { WhatIfScheduler } from "./scheduler.js";
import { ScenarioAction, WorkbenchState } from "./state.js";
import type {
  ElectionSnapshot,
  ReportBundle,
  WhatIfRequestJson,
  WhatIfResponseJson,
} from "./types.js";
import { validateDraft } from "./validate.js";

export interface ViewModel {
  editorHtml: string;
  implicationHtml: string;
  statusHtml: string;
  canUndo: boolean;
  canRedo: boolean;
}

export type ViewSink = (view: ViewModel) => void;

export class WorkbenchController {
  private snapshot: ElectionSnapshot | null = null;
  private bundle: ReportBundle | null = null;
  private state: WorkbenchState | null = null;
  private lastResponse: WhatIfResponseJson | null = null;
  private pending = false;
  private errorHtml = "";
  private readonly scheduler: WhatIfScheduler<WhatIfRequestJson, WhatIfResponseJson>;

  constructor(
    private readonly api: WorkbenchApi,
    private readonly sink: ViewSink,
    delayMs = 250,
  ) {
    this.scheduler = new WhatIfScheduler(
      (request) => this.api.postWhatIf(request),
      {
        onResult: (response) => {
          this.lastResponse = response;
          this.pending = false;
          this.errorHtml = "";
          this.pushView();
        },
        onError: (error) => {
          // the draft stays exactly as the user left it; only the
          // status line changes
          this.pending = false;
          this.errorHtml = describeError(error);
          this.pushView();
        },
      },
      delayMs,
    );
  }

  async load(): Promise<void> {
    this.snapshot = await this.api.getElection();
    this.bundle = await this.api.getOutcome();
    this.state = new WorkbenchState(this.snapshot.config);
    this.pushView();
  }

  /** The served (baseline) config; null until load() completes. */
  get config(): ElectionSnapshot["config"] | null {
    return this.snapshot?.config ?? null;
  }

  apply(action: ScenarioAction): void {
    this.requireState().apply(action);
    this.afterDraftChange();
  }

  undo(): void {
    if (this.requireState().undo()) this.afterDraftChange();
  }

  redo(): void {
    if (this.requireState().redo()) this.afterDraftChange();
  }

  /** For tests and key handlers: send the debounced request right now. */
  flush(): void {
    this.scheduler.flush();
  }

  serializeDraft(): string {
    return this.requireState().serializeDraft();
  }

  private requireState(): WorkbenchState {
    if (this.state === null) {
      throw new Error("load() has not completed");
    }
    return this.state;
  }

  private afterDraftChange(): void {
    const state = this.requireState();
    this.errorHtml = "";
    if (state.isPristine()) {
      // back to the served election: the baseline bundle is the answer,
      // and any in-flight what-if no longer applies
      this.scheduler.cancel();
      this.lastResponse = null;
      this.pending = false;
      this.pushView();
      return;
    }
    if (validateDraft(state.draftConfig()).length === 0) {
      this.pending = true;
      this.scheduler.request(state.toWhatIfRequest());
    } else {
      // a diagnosed draft is not sendable; hold the last good answer
      this.scheduler.cancel();
      this.pending = false;
    }
    this.pushView();
  }

  private pushView(): void {
    this.sink(this.buildView());
  }

  private buildView(): ViewModel {
    const snapshot = this.snapshot;
    const bundle = this.bundle;
    const state = this.state;
    if (snapshot === null || bundle === null || state === null) {
      return {
        editorHtml: "",
        implicationHtml: "",
        statusHtml: `<p class="loading">loading election&hellip;</p>`,
        canUndo: false,
        canRedo: false,
      };
    }

    const draftConfig = state.draftConfig();
    const violations = validateDraft(draftConfig);
    const editorHtml = renderCriteriaEditor(draftConfig, violations);

    let implicationHtml: string;
    if (this.lastResponse === null) {
      // served baseline, every number straight from GET /outcome
      implicationHtml = [
        renderOutcomeSummary(bundle.outcome),
        renderPriceBanner(bundle.price),
        renderForcedBadges(bundle.outcome.forced),
        renderRelaxations(bundle.outcome.applied_relaxations),
        renderCommitteeTable(
          snapshot.config.roster,
          snapshot.tally.votes,
          bundle.outcome.committee,
        ),
        renderDeficitTable(bundle.criteria_status.rows),
      ].join("");
    } else {
      const response = this.lastResponse;
      const draft = state.draft;
      const votes: Record<string, number> = { ...snapshot.tally.votes };
      if (draft.hypothetical) {
        votes[draft.hypothetical.candidate_id ?? "hypothetical"] =
          draft.hypothetical.assumed_votes;
      }
      implicationHtml = [
        renderOutcomeSummary(response.outcome),
        renderPriceBanner(response.price),
        renderForcedBadges(response.forced),
        renderRelaxations(response.outcome.applied_relaxations),
        renderFeasibilityNote(response.feasibility),
        renderCommitteeTable(draftConfig.roster, votes, response.outcome.committee),
        renderDeficitTable(
          computeDeficitRows(draftConfig, response.outcome.committee),
        ),
      ].join("");
    }

    let statusHtml: string;
    if (this.errorHtml !== "") {
      statusHtml = this.errorHtml;
    } else if (this.pending) {
      statusHtml = `<p class="pending">computing&hellip;</p>`;
    } else if (violations.length > 0) {
      statusHtml = `<p class="draft-invalid">draft has problems; fix them to recompute</p>`;
    } else {
      statusHtml = `<p class="idle">up to date</p>`;
    }

    return {
      editorHtml,
      implicationHtml,
      statusHtml,
      canUndo: state.canUndo(),
      canRedo: state.canRedo(),
    };
  }
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    if (error.status === 503) {
      return `<p class="error">The solver ran out of search budget for this draft. Your edits are preserved; try a smaller change.</p>`;
    }
    if (error.status === 422) {
      return `<p class="error">No committee can satisfy the edited criteria. Your edits are preserved.</p>`;
    }
    const detail =
      typeof error.detail === "object" && error.detail !== null
        ? JSON.stringify(error.detail)
        : String(error.detail ?? "");
    return `<p class="error">The service rejected the request (${error.status}). ${escapeHtml(detail)}</p>`;
  }
  return `<p class="error">Could not reach the counting service. Your edits are preserved; it will retry on the next change.</p>`;
}
