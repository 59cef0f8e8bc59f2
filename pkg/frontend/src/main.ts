import { HttpApiClient } from "./api.js";
import { ExploreStore } from "./explore.js";
import { renderExplorer, renderSession } from "./render.js";
import { SessionStore } from "./session.js";
import type { Answer } from "./types.js";

const api = new HttpApiClient("");

const sessionRoot = document.getElementById("session-root")!;
const exploreRoot = document.getElementById("explore-root")!;

const session = new SessionStore(api, (state) => {
  sessionRoot.innerHTML = renderSession(state);
});
const explore = new ExploreStore(api, (state) => {
  const textarea = exploreRoot.querySelector<HTMLTextAreaElement>("textarea");
  const hadFocus = document.activeElement === textarea;
  exploreRoot.innerHTML = renderExplorer(state);
  if (hadFocus) {
    const next = exploreRoot.querySelector<HTMLTextAreaElement>("textarea");
    next?.focus();
    next?.setSelectionRange(next.value.length, next.value.length);
  }
});

sessionRoot.innerHTML = renderSession(session.state);
exploreRoot.innerHTML = renderExplorer(explore.state);

sessionRoot.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  if (target.matches("button[data-answer]")) {
    void session.answer(target.dataset.answer as Answer);
  } else if (target.matches("button.start")) {
    void session.create();
  } else if (target.matches("button.retry")) {
    if (session.state.phase === "idle") void session.create();
  }
});

sessionRoot.addEventListener("submit", (event) => {
  const form = event.target as HTMLFormElement;
  if (!form.matches("form.teach-form")) return;
  event.preventDefault();
  const data = new FormData(form);
  const concept = String(data.get("concept") ?? "").trim();
  const feature = String(data.get("feature") ?? "").trim();
  const value = Number(data.get("value") ?? 1);
  if (concept && feature) {
    void session.teach(concept, [{ feature, value }]);
  }
});

// keyboard shortcuts: y / n / u answer the current question
document.addEventListener("keydown", (event) => {
  if (event.target instanceof HTMLInputElement || event.target instanceof HTMLTextAreaElement) {
    return;
  }
  const key = event.key.toLowerCase();
  const shortcut: Record<string, Answer> = { y: "yes", n: "no", u: "unknown" };
  if (key in shortcut && session.canAnswer()) {
    void session.answer(shortcut[key]);
  }
});

exploreRoot.addEventListener("submit", (event) => {
  const form = event.target as HTMLFormElement;
  if (!form.matches("form.explore-form")) return;
  event.preventDefault();
  void explore.submit();
});

exploreRoot.addEventListener("input", (event) => {
  const target = event.target as HTMLTextAreaElement;
  if (target.matches("textarea[name=text]")) {
    explore.state = { ...explore.state, text: target.value };
    // re-render only the submit button state to keep typing smooth
    const button = exploreRoot.querySelector<HTMLButtonElement>("form.explore-form button");
    if (button) button.disabled = !target.value.trim();
  }
});

document.querySelectorAll<HTMLButtonElement>("nav button").forEach((button) => {
  button.addEventListener("click", () => {
    document.querySelectorAll("nav button").forEach((b) => b.classList.remove("active"));
    button.classList.add("active");
    const view = button.dataset.view;
    sessionRoot.hidden = view !== "session";
    exploreRoot.hidden = view !== "explore";
  });
});
