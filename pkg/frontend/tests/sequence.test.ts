import { describe, expect, it } from "vitest";

import { SequenceGuard } from "../src/sequence.js";

describe("SequenceGuard", () => {
  it("accepts in-order responses", () => {
    const guard = new SequenceGuard();
    const a = guard.next();
    const b = guard.next();
    expect(guard.accept(a)).toBe(true);
    expect(guard.accept(b)).toBe(true);
  });

  it("discards a stale response arriving after a newer one", () => {
    const guard = new SequenceGuard();
    const first = guard.next();
    const second = guard.next();
    expect(guard.accept(second)).toBe(true);
    expect(guard.accept(first)).toBe(false);
  });

  it("discards duplicate applications", () => {
    const guard = new SequenceGuard();
    const t = guard.next();
    expect(guard.accept(t)).toBe(true);
    expect(guard.accept(t)).toBe(false);
  });
});
