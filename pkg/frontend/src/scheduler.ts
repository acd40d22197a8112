// Debounced, single-in-flight request scheduler.
//
// Rapid edits coalesce into one request after a quiet period; an edit made
// while a request is in flight queues the latest state and supersedes the
// response that is already on the wire. The sink only ever sees the result
// of the newest request, exactly once per settled burst.

export interface SchedulerSink<Res> {
  onResult(result: Res): void;
  onError(error: unknown): void;
  /** Fires when a request is scheduled; drive spinners off it. */
  onPending?(): void;
}

interface Stamped<Req> {
  request: Req;
  seq: number;
}

export class WhatIfScheduler<Req, Res> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private armed: Stamped<Req> | null = null;
  private seq = 0;
  private inFlight = false;
  private queued: Stamped<Req> | null = null;

  constructor(
    private readonly run: (request: Req) => Promise<Res>,
    private readonly sink: SchedulerSink<Res>,
    private readonly delayMs = 250,
  ) {}

  /** Schedule a request; any previously pending one is superseded. */
  request(request: Req): void {
    this.seq += 1;
    const stamped: Stamped<Req> = { request, seq: this.seq };
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.armed = stamped;
    this.sink.onPending?.();
    this.timer = setTimeout(() => {
      this.timer = null;
      this.armed = null;
      this.dispatch(stamped);
    }, this.delayMs);
  }

  /** Drop anything pending and mark anything in flight as stale. */
  cancel(): void {
    this.seq += 1;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.armed = null;
    this.queued = null;
  }

  /** Skip the quiet period for whatever is currently debouncing. */
  flush(): void {
    if (this.timer === null || this.armed === null) return;
    clearTimeout(this.timer);
    this.timer = null;
    const stamped = this.armed;
    this.armed = null;
    this.dispatch(stamped);
  }

  private dispatch(stamped: Stamped<Req>): void {
    if (this.inFlight) {
      this.queued = stamped; // supersedes any earlier queued request
      return;
    }
    this.inFlight = true;
    this.run(stamped.request).then(
      (result) => this.settle(stamped.seq, () => this.sink.onResult(result)),
      (error) => this.settle(stamped.seq, () => this.sink.onError(error)),
    );
  }

  private settle(seq: number, deliver: () => void): void {
    this.inFlight = false;
    if (this.queued !== null) {
      const next = this.queued;
      this.queued = null;
      this.dispatch(next); // this response is stale, a newer one is owed
      return;
    }
    if (this.timer !== null) return; // newer edit still debouncing
    if (seq !== this.seq) return; // superseded while we were settling
    deliver();
  }
}
