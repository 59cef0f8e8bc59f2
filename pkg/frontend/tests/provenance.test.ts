import { describe, expect, it } from "vitest";

import { ExploreStore } from "../src/explore.js";
import { renderExplorer, renderSession } from "../src/render.js";
import { SessionStore } from "../src/session.js";
import { MockApi } from "./mockApi.js";

// The no-business-logic invariant: every number a user can read must appear
// verbatim in some recorded API response. Styling-only numbers (bar widths,
// svg coordinates) live in attributes, which visibleText strips.

function visibleText(html: string): string {
  return html
    .replace(/<style[\s\S]*?<\/style>/g, " ")
    .replace(/<[^>]*>/g, " ")
    .replace(/&[a-z#0-9]+;/g, " ");
}

function standaloneNumbers(text: string): string[] {
  const matches = text.match(/(?<![\w.])-?\d+(?:\.\d+)?(?:e-?\d+)?(?![\w.])/gi);
  return matches ?? [];
}

function responseLiterals(recorded: unknown[]): Set<string> {
  const literals = new Set<string>();
  const visit = (value: unknown) => {
    if (typeof value === "number") {
      literals.add(String(value));
    } else if (Array.isArray(value)) {
      value.forEach(visit);
    } else if (value && typeof value === "object") {
      Object.values(value).forEach(visit);
    }
  };
  recorded.forEach(visit);
  return literals;
}

describe("number provenance snapshot", () => {
  it("every number rendered during a full session exists in an API response", async () => {
    const api = new MockApi();
    const store = new SessionStore(api);
    const snapshots: string[] = [];

    await store.create();
    snapshots.push(renderSession(store.state));
    for (const answer of ["no", "yes", "yes"] as const) {
      await store.answer(answer);
      snapshots.push(renderSession(store.state));
    }
    await store.teach("goldfish", [{ feature: "is_small", value: 1 }]);
    snapshots.push(renderSession(store.state));

    const allowed = responseLiterals(api.recorded);
    for (const html of snapshots) {
      for (const num of standaloneNumbers(visibleText(html))) {
        expect(allowed, `rendered number ${num} missing from API responses`).toContain(num);
      }
    }
  });

  it("every number in the explorer view exists in the wsd response", async () => {
    const api = new MockApi();
    const store = new ExploreStore(api);
    store.setText("the ball bounced after a kick");
    await store.submit();
    const html = renderExplorer(store.state);
    const allowed = responseLiterals(api.recorded);
    for (const num of standaloneNumbers(visibleText(html))) {
      expect(allowed, `rendered number ${num} missing from API responses`).toContain(num);
    }
  });
});
