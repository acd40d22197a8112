import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { WhatIfScheduler } from "../src/scheduler.js";

interface Recorded {
  runs: string[];
  results: string[];
  errors: unknown[];
  pending: number;
}

function instantScheduler(delayMs = 250): {
  scheduler: WhatIfScheduler<string, string>;
  log: Recorded;
} {
  const log: Recorded = { runs: [], results: [], errors: [], pending: 0 };
  const scheduler = new WhatIfScheduler<string, string>(
    async (request) => {
      log.runs.push(request);
      return `result:${request}`;
    },
    {
      onResult: (result) => log.results.push(result),
      onError: (error) => log.errors.push(error),
      onPending: () => {
        log.pending += 1;
      },
    },
    delayMs,
  );
  return { scheduler, log };
}

/** A run function whose promises resolve only when the test says so. */
function manualScheduler(delayMs = 250): {
  scheduler: WhatIfScheduler<string, string>;
  log: Recorded;
  resolvers: Array<(value: string) => void>;
} {
  const log: Recorded = { runs: [], results: [], errors: [], pending: 0 };
  const resolvers: Array<(value: string) => void> = [];
  const scheduler = new WhatIfScheduler<string, string>(
    (request) => {
      log.runs.push(request);
      return new Promise<string>((resolve) => resolvers.push(resolve));
    },
    {
      onResult: (result) => log.results.push(result),
      onError: (error) => log.errors.push(error),
    },
    delayMs,
  );
  return { scheduler, log, resolvers };
}

beforeEach(() => {
  vi.useFakeTimers();
});

afterEach(() => {
  vi.useRealTimers();
});

describe("debouncing", () => {
  it("a burst of edits yields one request and one result", async () => {
    const { scheduler, log } = instantScheduler();
    scheduler.request("a");
    await vi.advanceTimersByTimeAsync(100);
    scheduler.request("b");
    await vi.advanceTimersByTimeAsync(100);
    scheduler.request("c");
    await vi.advanceTimersByTimeAsync(250);
    expect(log.runs).toEqual(["c"]);
    expect(log.results).toEqual(["result:c"]);
    expect(log.pending).toBe(3);
  });

  it("nothing fires before the quiet period elapses", async () => {
    const { scheduler, log } = instantScheduler();
    scheduler.request("a");
    await vi.advanceTimersByTimeAsync(249);
    expect(log.runs).toEqual([]);
    await vi.advanceTimersByTimeAsync(1);
    expect(log.runs).toEqual(["a"]);
  });

  it("separate quiet bursts each get a result", async () => {
    const { scheduler, log } = instantScheduler();
    scheduler.request("a");
    await vi.advanceTimersByTimeAsync(250);
    scheduler.request("b");
    await vi.advanceTimersByTimeAsync(250);
    expect(log.results).toEqual(["result:a", "result:b"]);
  });
});

describe("in-flight supersession", () => {
  it("an edit during flight queues; the stale response is dropped", async () => {
    const { scheduler, log, resolvers } = manualScheduler();
    scheduler.request("one");
    await vi.advanceTimersByTimeAsync(250); // "one" takes off
    expect(log.runs).toEqual(["one"]);

    scheduler.request("two");
    await vi.advanceTimersByTimeAsync(250); // "two" queues behind "one"
    expect(log.runs).toEqual(["one"]);

    resolvers[0]("r1"); // settles "one": stale, dispatches "two"
    await vi.advanceTimersByTimeAsync(0);
    expect(log.runs).toEqual(["one", "two"]);
    expect(log.results).toEqual([]);

    resolvers[1]("r2");
    await vi.advanceTimersByTimeAsync(0);
    expect(log.results).toEqual(["r2"]);
  });

  it("only the newest queued request survives a pile-up", async () => {
    const { scheduler, log, resolvers } = manualScheduler();
    scheduler.request("one");
    await vi.advanceTimersByTimeAsync(250);
    scheduler.request("two");
    await vi.advanceTimersByTimeAsync(250);
    scheduler.request("three");
    await vi.advanceTimersByTimeAsync(250);

    resolvers[0]("r1");
    await vi.advanceTimersByTimeAsync(0);
    resolvers[1]("r3");
    await vi.advanceTimersByTimeAsync(0);
    expect(log.runs).toEqual(["one", "three"]);
    expect(log.results).toEqual(["r3"]);
  });

  it("a response landing while a newer edit debounces is discarded", async () => {
    const { scheduler, log, resolvers } = manualScheduler();
    scheduler.request("one");
    await vi.advanceTimersByTimeAsync(250);
    scheduler.request("two"); // still debouncing when "one" lands
    resolvers[0]("r1");
    await vi.advanceTimersByTimeAsync(0);
    expect(log.results).toEqual([]);
    await vi.advanceTimersByTimeAsync(250);
    resolvers[1]("r2");
    await vi.advanceTimersByTimeAsync(0);
    expect(log.results).toEqual(["r2"]);
  });
});

describe("cancel", () => {
  it("drops a debouncing request entirely", async () => {
    const { scheduler, log } = instantScheduler();
    scheduler.request("a");
    scheduler.cancel();
    await vi.advanceTimersByTimeAsync(1000);
    expect(log.runs).toEqual([]);
    expect(log.results).toEqual([]);
  });

  it("suppresses delivery of an in-flight response", async () => {
    const { scheduler, log, resolvers } = manualScheduler();
    scheduler.request("a");
    await vi.advanceTimersByTimeAsync(250);
    scheduler.cancel();
    resolvers[0]("r1");
    await vi.advanceTimersByTimeAsync(0);
    expect(log.results).toEqual([]);
    expect(log.errors).toEqual([]);
  });

  it("clears a queued request too", async () => {
    const { scheduler, log, resolvers } = manualScheduler();
    scheduler.request("a");
    await vi.advanceTimersByTimeAsync(250);
    scheduler.request("b");
    await vi.advanceTimersByTimeAsync(250);
    scheduler.cancel();
    resolvers[0]("r1");
    await vi.advanceTimersByTimeAsync(0);
    expect(log.runs).toEqual(["a"]); // "b" never leaves
    expect(log.results).toEqual([]);
  });
});

describe("flush", () => {
  it("fires the armed request immediately", async () => {
    const { scheduler, log } = instantScheduler();
    scheduler.request("a");
    scheduler.flush();
    await vi.advanceTimersByTimeAsync(0);
    expect(log.runs).toEqual(["a"]);
    expect(log.results).toEqual(["result:a"]);
  });

  it("is a no-op with nothing armed", () => {
    const { scheduler, log } = instantScheduler();
    scheduler.flush();
    expect(log.runs).toEqual([]);
  });
});

describe("errors", () => {
  it("routes rejections to onError, latest-wins still holds", async () => {
    const log: Recorded = { runs: [], results: [], errors: [], pending: 0 };
    const scheduler = new WhatIfScheduler<string, string>(
      async (request) => {
        log.runs.push(request);
        throw new Error(`boom:${request}`);
      },
      {
        onResult: (result) => log.results.push(result),
        onError: (error) => log.errors.push(error),
      },
      250,
    );
    scheduler.request("a");
    scheduler.request("b");
    await vi.advanceTimersByTimeAsync(250);
    expect(log.runs).toEqual(["b"]);
    expect(log.errors).toHaveLength(1);
    expect((log.errors[0] as Error).message).toBe("boom:b");
  });
});
