import { describe, expect, it } from "vitest";

import { SessionStore } from "../src/session.js";
import { renderSession } from "../src/render.js";
import { MockApi } from "./mockApi.js";

describe("session flow against the scripted mock", () => {
  it("completes create -> 3 answers -> guess -> teach", async () => {
    const api = new MockApi();
    const store = new SessionStore(api);

    await store.create();
    expect(store.state.phase).toBe("asking");
    expect(store.state.question?.text).toBe("Does it have fur?");

    await store.answer("no");
    await store.answer("yes");
    expect(store.state.phase).toBe("asking");
    expect(store.state.transcript).toHaveLength(2);

    await store.answer("yes");
    expect(store.state.phase).toBe("guessed");
    expect(store.state.guess?.concept).toBe("goldfish");
    expect(store.state.transcript).toHaveLength(3);

    await store.teach("goldfish", [{ feature: "is_small", value: 1 }]);
    expect(store.state.phase).toBe("done");
    expect(store.state.matrixVersion).toBe(1);
  });

  it("renders three Q/A rows then the guess card", async () => {
    const api = new MockApi();
    const store = new SessionStore(api);
    await store.create();
    await store.answer("no");
    await store.answer("yes");
    await store.answer("yes");
    const html = renderSession(store.state);
    const rows = html.match(/<tr><td>.*?<\/td><td class="answer-/g) ?? [];
    expect(rows).toHaveLength(3);
    expect(html).toContain("My guess: goldfish");
    expect(html).toContain("teach-form");
  });

  it("ignores answers after the guess state (controls disabled)", async () => {
    const api = new MockApi();
    const store = new SessionStore(api);
    await store.create();
    await store.answer("no");
    await store.answer("yes");
    await store.answer("yes");
    expect(store.state.phase).toBe("guessed");
    const before = store.state;
    await store.answer("yes"); // must be a no-op
    expect(store.state).toBe(before);
    const html = renderSession(store.state);
    expect(html).not.toContain("data-answer");
  });

  it("does not double-submit while a request is in flight", async () => {
    const api = new MockApi();
    const store = new SessionStore(api);
    await store.create();
    const first = store.answer("yes");
    const second = store.answer("no"); // rejected: inFlight
    await Promise.all([first, second]);
    expect(store.state.transcript).toHaveLength(1);
  });

  it("shows a non-blocking banner on network failure and recovers", async () => {
    const api = new MockApi();
    const store = new SessionStore(api);
    await store.create();
    api.failNext = true;
    await store.answer("yes");
    expect(store.state.banner).toMatch(/retry/);
    expect(store.state.phase).toBe("asking"); // still usable
    await store.answer("yes");
    expect(store.state.banner).toBeNull();
    expect(store.state.transcript).toHaveLength(1);
  });

  it("maps 409 conflicts to the already-submitted notice", async () => {
    const api = new MockApi();
    const store = new SessionStore(api);
    await store.create();
    api.conflictNext = true;
    await store.answer("yes");
    expect(store.state.banner).toContain("answer already submitted");
  });
});

describe("posterior display", () => {
  it("full posterior sums to 1 within 0.005 and truncated sums never exceed 1.005", async () => {
    const api = new MockApi();
    const store = new SessionStore(api);
    await store.create();
    const sums: number[] = [];
    sums.push(store.state.posterior.reduce((acc, e) => acc + e.prob, 0));
    for (const answer of ["no", "yes", "yes"] as const) {
      await store.answer(answer);
      sums.push(store.state.posterior.reduce((acc, e) => acc + e.prob, 0));
    }
    for (const sum of sums) {
      expect(sum).toBeLessThanOrEqual(1.005);
      expect(sum).toBeGreaterThanOrEqual(0.995);
    }
  });

  it("bars are sorted descending and show true probabilities, not renormalized", async () => {
    const api = new MockApi();
    const store = new SessionStore(api);
    await store.create();
    await store.answer("no");
    await store.answer("yes");
    await store.answer("yes");
    const html = renderSession(store.state);
    expect(html).toContain(">0.9230769230769231<");
    expect(html).toContain(">0.07692307692307693<");
    const probs = store.state.posterior.map((e) => e.prob);
    expect([...probs].sort((a, b) => b - a)).toEqual(probs);
  });
});
