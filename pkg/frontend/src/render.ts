// HTML string builders for every panel. No DOM access here: pure
// functions from server JSON (plus the draft) to markup, so the whole
// presentation layer is testable in node.

import type {
  BoundJson,
  CandidateJson,
  ConfigJson,
  DeficitRowJson,
  FeasibilityJson,
  OutcomeJson,
  PriceJson,
  RelaxationJson,
} from "./types.js";
import type { Violation } from "./validate.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** 1440 -> "1,440"; deterministic regardless of runtime locale. */
export function formatInt(value: number): string {
  const sign = value < 0 ? "-" : "";
  const digits = Math.abs(value).toString();
  const grouped = digits.replace(/\B(?=(\d{3})+(?!\d))/g, ",");
  return sign + grouped;
}

export function describeBound(bound: BoundJson): string {
  switch (bound.type) {
    case "EXACT":
      return `= ${bound.value}`;
    case "AT_LEAST":
      return `>= ${bound.value}`;
    case "AT_MOST":
      return `<= ${bound.value}`;
  }
}

function lowerEdge(bound: BoundJson): number {
  return bound.type === "AT_MOST" ? 0 : bound.value;
}

/**
 * Target-vs-reached rows for a committee against the draft's bounds.
 * Pure counting for display; objectives and committees always come from
 * the server.
 */
export function computeDeficitRows(
  config: ConfigJson,
  committee: string[],
): DeficitRowJson[] {
  const byId = new Map(config.roster.map((c) => [c.candidate_id, c]));
  const rows: DeficitRowJson[] = [];
  for (const criterion of config.criteria) {
    for (const entry of criterion.categories) {
      let reached = 0;
      for (const id of committee) {
        const candidate = byId.get(id);
        if (candidate && candidate.attributes[criterion.attribute] === entry.category) {
          reached += 1;
        }
      }
      rows.push({
        attribute: criterion.attribute,
        category: entry.category,
        bound: entry.bound,
        reached,
        difference: reached - lowerEdge(entry.bound),
      });
    }
  }
  return rows;
}

export function renderPriceBanner(price: PriceJson): string {
  const total = formatInt(price.total_votes_cast);
  return [
    `<div class="price-banner">`,
    `<span class="price-headline">Criteria cost <strong>${formatInt(price.price)}</strong> votes`,
    ` (${price.price_pct}% of ${total})</span>`,
    `<span class="price-detail">best satisfying committee ${formatInt(price.constrained_objective)}`,
    ` &middot; best unconstrained ${formatInt(price.unconstrained_objective)}`,
    ` &middot; votes outside the committee ${formatInt(price.lost_votes_constrained)}`,
    ` (${price.lost_votes_constrained_pct}%) vs ${formatInt(price.lost_votes_unconstrained)}`,
    ` (${price.lost_votes_unconstrained_pct}%)</span>`,
    `</div>`,
  ].join("");
}

export function renderForcedBadges(forced: string[]): string {
  if (forced.length === 0) {
    return `<p class="forced-none">No candidate is forced by the criteria.</p>`;
  }
  const badges = forced
    .map(
      (id) =>
        `<span class="badge badge-protected" title="in every feasible committee">${escapeHtml(id)}</span>`,
    )
    .join(" ");
  return `<p class="forced-badges">Protected: ${badges}</p>`;
}

/** Full roster sorted by votes (desc, id asc) with elected markers. */
export function renderCommitteeTable(
  roster: CandidateJson[],
  votes: Record<string, number>,
  committee: string[],
): string {
  const attributes = Array.from(
    new Set(roster.flatMap((c) => Object.keys(c.attributes))),
  ).sort();
  const elected = new Set(committee);
  const sorted = [...roster].sort((a, b) => {
    const va = votes[a.candidate_id] ?? 0;
    const vb = votes[b.candidate_id] ?? 0;
    if (va !== vb) return vb - va;
    return a.candidate_id < b.candidate_id ? -1 : 1;
  });

  const head = [
    "<th>candidate</th>",
    ...attributes.map((a) => `<th>${escapeHtml(a)}</th>`),
    "<th>votes</th>",
    "<th>elected</th>",
  ].join("");
  const body = sorted
    .map((c) => {
      const isElected = elected.has(c.candidate_id);
      const cells = [
        `<td>${escapeHtml(c.display_name)}</td>`,
        ...attributes.map(
          (a) => `<td>${escapeHtml(c.attributes[a] ?? "")}</td>`,
        ),
        `<td class="num">${formatInt(votes[c.candidate_id] ?? 0)}</td>`,
        `<td class="elected-mark">${isElected ? "&#10003;" : ""}</td>`,
      ].join("");
      return `<tr class="${isElected ? "elected" : "not-elected"}" data-candidate="${escapeHtml(c.candidate_id)}">${cells}</tr>`;
    })
    .join("");
  return `<table class="committee"><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}

export function renderDeficitTable(rows: DeficitRowJson[]): string {
  if (rows.length === 0) {
    return `<p class="deficit-empty">No criteria in force.</p>`;
  }
  const body: string[] = [];
  let lastAttribute = "";
  for (const row of rows) {
    if (row.attribute !== lastAttribute) {
      body.push(
        `<tr class="attribute-head"><td colspan="4">${escapeHtml(row.attribute)}</td></tr>`,
      );
      lastAttribute = row.attribute;
    }
    const unmet = row.difference < 0;
    const diff = row.difference > 0 ? `+${row.difference}` : `${row.difference}`;
    body.push(
      `<tr class="${unmet ? "unmet" : "met"}">` +
        `<td>${escapeHtml(row.category)}</td>` +
        `<td class="num">${escapeHtml(describeBound(row.bound))}</td>` +
        `<td class="num">${row.reached}</td>` +
        `<td class="num">${diff}</td>` +
        `</tr>`,
    );
  }
  return (
    `<table class="deficits"><thead><tr>` +
    `<th>category</th><th>target</th><th>reached</th><th>difference</th>` +
    `</tr></thead><tbody>${body.join("")}</tbody></table>`
  );
}

export function renderRelaxations(records: RelaxationJson[]): string {
  if (records.length === 0) return "";
  const items = records
    .map((r) => {
      if (r.action === "CRITERION_DROPPED") {
        return `<li class="relaxation dropped">criterion dropped: ${escapeHtml(r.attribute)}</li>`;
      }
      const oldText = r.old_bound ? escapeHtml(describeBound(r.old_bound)) : "?";
      const newText = r.new_bound ? escapeHtml(describeBound(r.new_bound)) : "?";
      return (
        `<li class="relaxation reduced">${escapeHtml(r.attribute)} / ` +
        `${escapeHtml(r.category ?? "")}: bound reduced from ${oldText} to ${newText}</li>`
      );
    })
    .join("");
  return `<div class="relaxations"><p>The criteria could not be met as written; applied relaxations:</p><ul>${items}</ul></div>`;
}

export function renderFeasibilityNote(feasibility: FeasibilityJson): string {
  if (feasibility.feasible) return "";
  const items = feasibility.deficits
    .map(
      (d) =>
        `<li><code>${escapeHtml(d.code)}</code> ${escapeHtml(d.detail)}</li>`,
    )
    .join("");
  return `<div class="infeasible-note"><p>The edited criteria cannot be met by this pool:</p><ul>${items}</ul></div>`;
}

export function renderValidation(violations: Violation[]): string {
  if (violations.length === 0) return "";
  const items = violations
    .map(
      (v) =>
        `<li><code>${escapeHtml(v.code)}</code> ${escapeHtml(v.message)}</li>`,
    )
    .join("");
  return `<ul class="validation-errors">${items}</ul>`;
}

export function renderOutcomeSummary(outcome: OutcomeJson): string {
  if (outcome.status === "INFEASIBLE" || outcome.objective === null) {
    return `<p class="outcome-summary infeasible">No committee satisfies the criteria.</p>`;
  }
  const relaxed = outcome.status === "RELAXED_OPTIMAL" ? " (after relaxation)" : "";
  return (
    `<p class="outcome-summary">Committee total <strong>${formatInt(outcome.objective)}</strong>` +
    ` votes${relaxed}, ${outcome.committee.length} seats.</p>`
  );
}

// -- criteria editor ---------------------------------------------------

const BOUND_TYPES: BoundJson["type"][] = ["AT_LEAST", "EXACT", "AT_MOST"];

/**
 * Editable criteria tables. Controls carry data- attributes; the app
 * shell translates change/click events into scenario actions.
 */
export function renderCriteriaEditor(
  config: ConfigJson,
  violations: Violation[],
): string {
  const sections = config.criteria.map((criterion) => {
    const rows = criterion.categories
      .map((entry) => {
        const options = BOUND_TYPES.map(
          (t) =>
            `<option value="${t}"${t === entry.bound.type ? " selected" : ""}>${t.toLowerCase().replace("_", " ")}</option>`,
        ).join("");
        return (
          `<tr><td>${escapeHtml(entry.category)}</td>` +
          `<td><select data-action="bound-type" data-attribute="${escapeHtml(criterion.attribute)}"` +
          ` data-category="${escapeHtml(entry.category)}">${options}</select></td>` +
          `<td><input type="number" min="0" value="${entry.bound.value}"` +
          ` data-action="bound-value" data-attribute="${escapeHtml(criterion.attribute)}"` +
          ` data-category="${escapeHtml(entry.category)}"></td></tr>`
        );
      })
      .join("");
    return (
      `<section class="criterion" data-attribute="${escapeHtml(criterion.attribute)}">` +
      `<h3>${escapeHtml(criterion.attribute)}` +
      ` <label>rank <input type="number" min="1" value="${criterion.preference_rank}"` +
      ` data-action="preference" data-attribute="${escapeHtml(criterion.attribute)}"></label>` +
      ` <button data-action="remove-criterion" data-attribute="${escapeHtml(criterion.attribute)}">remove</button></h3>` +
      `<table class="bounds"><thead><tr><th>category</th><th>type</th><th>seats</th></tr></thead>` +
      `<tbody>${rows}</tbody></table></section>`
    );
  });
  const empty =
    config.criteria.length === 0
      ? `<p class="no-criteria">No criteria in the draft; the count is a plain top-${config.seats}.</p>`
      : "";
  return sections.join("") + empty + renderValidation(violations);
}
