// Client-side mirror of the server's config validation, so the editor can
// flag a broken draft before wasting a round trip. Codes match the server;
// messages are phrased for the editor. The server remains the authority:
// anything missed here still comes back as a 400.

import type { BoundJson, ConfigJson } from "./types.js";

export interface Violation {
  code: string;
  message: string;
}

function lowerEdge(bound: BoundJson): number {
  return bound.type === "AT_MOST" ? 0 : bound.value;
}

export function validateDraft(config: ConfigJson): Violation[] {
  const violations: Violation[] = [];

  const seenIds = new Set<string>();
  for (const candidate of config.roster) {
    if (seenIds.has(candidate.candidate_id)) {
      violations.push({
        code: "DUPLICATE_CANDIDATE_ID",
        message: `candidate id ${candidate.candidate_id} appears twice`,
      });
    }
    seenIds.add(candidate.candidate_id);
  }

  const seenAttributes = new Set<string>();
  const seenRanks = new Set<number>();
  for (const criterion of config.criteria) {
    if (seenAttributes.has(criterion.attribute)) {
      violations.push({
        code: "DUPLICATE_ATTRIBUTE",
        message: `two criteria partition by ${criterion.attribute}`,
      });
    }
    seenAttributes.add(criterion.attribute);

    if (!Number.isInteger(criterion.preference_rank) || criterion.preference_rank < 1) {
      violations.push({
        code: "BAD_PREFERENCE_RANK",
        message: `${criterion.attribute}: preference rank must be a positive integer`,
      });
    } else if (seenRanks.has(criterion.preference_rank)) {
      violations.push({
        code: "DUPLICATE_PREFERENCE_RANK",
        message: `preference rank ${criterion.preference_rank} is used twice`,
      });
    }
    seenRanks.add(criterion.preference_rank);

    const seenCategories = new Set<string>();
    let lowerSum = 0;
    let allExact = criterion.categories.length > 0;
    let exactSum = 0;
    for (const entry of criterion.categories) {
      if (seenCategories.has(entry.category)) {
        violations.push({
          code: "DUPLICATE_CATEGORY",
          message: `${criterion.attribute}: category ${entry.category} listed twice`,
        });
      }
      seenCategories.add(entry.category);
      lowerSum += lowerEdge(entry.bound);
      if (entry.bound.type === "EXACT") {
        exactSum += entry.bound.value;
      } else {
        allExact = false;
      }
    }
    if (lowerSum > config.seats) {
      violations.push({
        code: "LOWER_BOUND_SUM_EXCEEDS_SEATS",
        message: `${criterion.attribute}: lower bounds demand ${lowerSum} of ${config.seats} seats`,
      });
    }
    if (allExact && exactSum !== config.seats) {
      violations.push({
        code: "EXACT_SUM_MISMATCH",
        message: `${criterion.attribute}: exact bounds sum to ${exactSum}, not ${config.seats}`,
      });
    }

    for (const candidate of config.roster) {
      const value = candidate.attributes[criterion.attribute];
      if (value === undefined) {
        violations.push({
          code: "UNCATEGORIZED_CANDIDATE",
          message: `${candidate.candidate_id} has no ${criterion.attribute}`,
        });
      } else if (!seenCategories.has(value)) {
        violations.push({
          code: "UNDECLARED_CATEGORY",
          message: `${candidate.candidate_id}: ${criterion.attribute} ${value} is not a declared category`,
        });
      }
    }
  }

  return violations;
}
