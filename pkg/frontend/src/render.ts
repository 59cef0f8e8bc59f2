import type { SessionState } from "./session.js";
import type { ExploreState } from "./explore.js";
import type { GraphEdge, GraphNode, Mention, PosteriorEntry } from "./types.js";

// Everything here renders HTML strings from state. Numbers are printed
// verbatim (String(x)) so that every visible figure traces back to an API
// response byte-for-byte; bar widths are styling only.

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function renderPosteriorBars(entries: PosteriorEntry[]): string {
  if (!entries.length) return "<p class='empty'>no posterior yet</p>";
  const rows = entries.map((entry) => {
    const width = Math.max(0.5, entry.prob * 100);
    return `<div class="bar-row">
      <span class="bar-label">${escapeHtml(entry.concept)}</span>
      <span class="bar-track"><span class="bar-fill" style="width:${width}%"></span></span>
      <span class="bar-value">${String(entry.prob)}</span>
    </div>`;
  });
  return `<div class="posterior">${rows.join("\n")}</div>`;
}

export function renderTranscript(state: SessionState): string {
  if (!state.transcript.length) return "";
  const rows = state.transcript.map(
    (row) =>
      `<tr><td>${escapeHtml(row.question)}</td>` +
      `<td class="answer-${row.answer}">${row.answer}</td></tr>`,
  );
  return `<table class="transcript"><thead><tr><th>question</th><th>answer</th></tr></thead>
    <tbody>${rows.join("\n")}</tbody></table>`;
}

export function renderQuestionCard(state: SessionState): string {
  if (state.phase !== "asking" || !state.question) return "";
  const disabled = state.inFlight ? "disabled" : "";
  return `<div class="question-card">
    <h2>${escapeHtml(state.question.text)}</h2>
    <div class="answers">
      <button data-answer="yes" ${disabled}>yes (y)</button>
      <button data-answer="no" ${disabled}>no (n)</button>
      <button data-answer="unknown" ${disabled}>unknown (u)</button>
    </div>
    ${state.budget !== null ? `<p class="budget">questions left: ${String(state.budget)}</p>` : ""}
    ${state.contradiction ? `<p class="notice">answers contradicted the matrix; posterior reset</p>` : ""}
  </div>`;
}

export function renderGuessCard(state: SessionState): string {
  if ((state.phase !== "guessed" && state.phase !== "done") || !state.guess) return "";
  const teach =
    state.phase === "guessed"
      ? `<form class="teach-form">
          <h3>Teach me</h3>
          <input name="concept" placeholder="what was it?" required>
          <input name="feature" placeholder="a property (feature id)" required>
          <select name="value"><option value="1">yes</option><option value="0">no</option></select>
          <button type="submit" ${state.inFlight ? "disabled" : ""}>teach</button>
        </form>`
      : `<p class="done">knowledge updated${
          state.matrixVersion !== null ? ` (version ${String(state.matrixVersion)})` : ""
        }</p>`;
  return `<div class="guess-card">
    <h2>My guess: ${escapeHtml(state.guess.concept)}</h2>
    <p>confidence: <span class="guess-prob">${String(state.guess.prob)}</span></p>
    ${teach}
  </div>`;
}

export function renderBanner(state: { banner: string | null }): string {
  if (!state.banner) return "";
  return `<div class="banner" role="alert">${escapeHtml(state.banner)}
    <button class="retry">retry</button></div>`;
}

export function renderSession(state: SessionState): string {
  const start =
    state.phase === "idle"
      ? `<button class="start" ${state.inFlight ? "disabled" : ""}>start a session</button>`
      : `<button class="start" ${state.inFlight ? "disabled" : ""}>new session</button>`;
  return `${renderBanner(state)}
    ${renderQuestionCard(state)}
    ${renderGuessCard(state)}
    ${renderPosteriorBars(state.posterior)}
    ${renderTranscript(state)}
    <div class="controls">${start}</div>`;
}

function mentionFlags(mention: Mention): string {
  return mention.flags
    .map((flag) => `<span class="flag flag-${escapeHtml(flag)}" title="${escapeHtml(flag)}">&#9888; ${escapeHtml(flag)}</span>`)
    .join(" ");
}

export function renderMentionTable(mentions: Mention[]): string {
  if (!mentions.length) return "<p class='empty'>no concept mentions found</p>";
  const rows = mentions.map(
    (m) => `<tr>
      <td>${escapeHtml(m.surface)}</td>
      <td>${m.candidates.map(escapeHtml).join(", ")}</td>
      <td class="chosen">${escapeHtml(m.chosen)}</td>
      <td>${m.synset ? escapeHtml(m.synset) : ""}</td>
      <td>${mentionFlags(m)}</td>
    </tr>`,
  );
  return `<table class="mentions"><thead>
    <tr><th>surface</th><th>candidates</th><th>chosen</th><th>synset</th><th>flags</th></tr>
    </thead><tbody>${rows.join("\n")}</tbody></table>`;
}

export function renderActivationList(entries: { concept: string; value: number }[]): string {
  if (!entries.length) return "";
  const items = entries.map(
    (e) => `<li>${escapeHtml(e.concept)}: <span class="activation">${String(e.value)}</span></li>`,
  );
  return `<ol class="activations">${items.join("\n")}</ol>`;
}

export function renderGraphSvg(nodes: GraphNode[], edges: GraphEdge[]): string {
  // circular layout: positions are presentation only, every labeled number
  // (activations, weights) comes verbatim from the response
  const size = 420;
  const cx = size / 2;
  const cy = size / 2;
  const radius = size / 2 - 60;
  const pos = new Map<string, { x: number; y: number }>();
  nodes.forEach((node, i) => {
    const angle = (2 * Math.PI * i) / Math.max(1, nodes.length);
    pos.set(node.id, {
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
    });
  });
  const edgeParts = edges.flatMap((edge) => {
    const a = pos.get(edge.source);
    const b = pos.get(edge.target);
    if (!a || !b) return [];
    const mx = (a.x + b.x) / 2;
    const my = (a.y + b.y) / 2;
    return [
      `<line x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}" x2="${b.x.toFixed(1)}" y2="${b.y.toFixed(1)}" class="edge"/>`,
      `<text x="${mx.toFixed(1)}" y="${my.toFixed(1)}" class="edge-label">${escapeHtml(edge.relation_type)}</text>`,
    ];
  });
  const nodeParts = nodes.flatMap((node) => {
    const p = pos.get(node.id)!;
    return [
      `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="18" class="node"/>`,
      `<text x="${p.x.toFixed(1)}" y="${(p.y - 24).toFixed(1)}" class="node-label">${escapeHtml(node.id)}</text>`,
    ];
  });
  return `<svg viewBox="0 0 ${size} ${size}" class="concept-graph">
    ${edgeParts.join("\n")}
    ${nodeParts.join("\n")}
  </svg>`;
}

export function renderExplorer(state: ExploreState): string {
  const disabled = state.inFlight || !state.text.trim() ? "disabled" : "";
  const result = state.result
    ? `${renderMentionTable(state.result.mentions)}
       <h3>top activations</h3>
       ${renderActivationList(state.result.activation_top)}
       <h3>consistent-concept graph</h3>
       ${renderGraphSvg(state.result.graph.nodes, state.result.graph.edges)}
       ${state.result.converged ? "" : `<p class="notice">activation did not converge; result is best effort</p>`}`
    : "";
  return `${renderBanner(state)}
    <form class="explore-form">
      <textarea name="text" placeholder="type a sentence to disambiguate">${escapeHtml(state.text)}</textarea>
      <button type="submit" ${disabled}>analyze</button>
    </form>
    ${result}`;
}
