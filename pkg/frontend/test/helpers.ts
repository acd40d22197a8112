// Shared test plumbing: the golden fixtures from the counting service and
// a route-table fetch stub. Tests never talk to a real server; the mocked
// bodies are byte-for-byte what the service publishes.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";
import type {
  PriceJson,
  ReportBundle,
  WhatIfResponseJson,
} from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));
const FIXTURES = join(here, "..", "..", "fixtures", "monthey");

export function loadBundle(): ReportBundle {
  return JSON.parse(
    readFileSync(join(FIXTURES, "report.json"), "utf-8"),
  ) as ReportBundle;
}

export interface RouteResult {
  status?: number;
  body: unknown;
}

export type Route = (init?: RequestInit) => RouteResult | Promise<RouteResult>;

export interface RecordedCall {
  url: string;
  init?: RequestInit;
}

export interface MockFetch extends FetchLike {
  calls: RecordedCall[];
}

/** Keys are "METHOD url". Unrouted requests reject like a dead server. */
export function mockFetch(routes: Record<string, Route>): MockFetch {
  const calls: RecordedCall[] = [];
  const fn = (async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    const key = `${init?.method ?? "GET"} ${url}`;
    const route = routes[key];
    if (route === undefined) {
      throw new TypeError(`fetch failed: no route for ${key}`);
    }
    const result = await route(init);
    return new Response(JSON.stringify(result.body), {
      status: result.status ?? 200,
      headers: { "Content-Type": "application/json" },
    });
  }) as MockFetch;
  fn.calls = calls;
  return fn;
}

function zeroedPrice(template: PriceJson, objective: number): PriceJson {
  return {
    unconstrained_objective: objective,
    constrained_objective: objective,
    price: 0,
    price_pct: 0.0,
    total_votes_cast: template.total_votes_cast,
    lost_votes_unconstrained: template.total_votes_cast - objective,
    lost_votes_unconstrained_pct: template.lost_votes_unconstrained_pct,
    lost_votes_constrained: template.total_votes_cast - objective,
    lost_votes_constrained_pct: template.lost_votes_unconstrained_pct,
  };
}

/**
 * The service's answer to "delete every criterion": the plain top-17 by
 * votes. Committee and objective reproduce the published unconstrained
 * figures; this mirrors a recorded response, not client-side solving.
 */
export function unconstrainedWhatIfResponse(
  bundle: ReportBundle,
): WhatIfResponseJson {
  const ranked = Object.entries(bundle.tally.votes).sort(([ida, va], [idb, vb]) =>
    va !== vb ? vb - va : ida < idb ? -1 : 1,
  );
  const committee = ranked
    .slice(0, bundle.config.seats)
    .map(([id]) => id)
    .sort();
  const objective = ranked
    .slice(0, bundle.config.seats)
    .reduce((sum, [, v]) => sum + v, 0);
  return {
    outcome: {
      status: "OPTIMAL",
      committee,
      objective,
      forced: [],
      co_optimal_committees: [committee],
      applied_relaxations: [],
      node_count: 1,
    },
    price: zeroedPrice(bundle.price, objective),
    forced: [],
    feasibility: { feasible: true, deficits: [] },
  };
}

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}
