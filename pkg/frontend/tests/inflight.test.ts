import { describe, expect, it } from "vitest";

import { QueryGate } from "../src/inflight.js";

describe("QueryGate", () => {
  it("accepts the current ticket exactly once", () => {
    const gate = new QueryGate();
    const t = gate.begin();
    expect(gate.busy).toBe(true);
    expect(gate.accept(t)).toBe(true);
    expect(gate.busy).toBe(false);
    expect(gate.accept(t)).toBe(false); // already settled
  });

  it("discards a stale response when a newer query superseded it", () => {
    const gate = new QueryGate();
    const first = gate.begin();
    const second = gate.begin();
    // the slow first response arrives after the second was issued
    expect(gate.accept(first)).toBe(false);
    expect(gate.accept(second)).toBe(true);
  });

  it("discards responses landing out of order across many flights", () => {
    const gate = new QueryGate();
    const tickets = [gate.begin(), gate.begin(), gate.begin()];
    expect(gate.accept(tickets[0]!)).toBe(false);
    expect(gate.accept(tickets[2]!)).toBe(true);
    expect(gate.accept(tickets[1]!)).toBe(false);
  });

  it("refuses a cancelled flight's response", () => {
    const gate = new QueryGate();
    const t = gate.begin();
    gate.cancel();
    expect(gate.busy).toBe(false);
    expect(gate.accept(t)).toBe(false);
  });
});
