/** Pure HTML renderers: every view is a function of service responses and
 * nothing else, so the whole surface is unit-testable without a browser. */

import type {
  EvidenceRow,
  KnowledgeRow,
  ScenarioDoc,
  Suggestion,
  TurnDoc,
  VehicleDoc,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function formatValue(row: EvidenceRow): string {
  const v = row.value;
  switch (row.kind) {
    case "minutes":
      return `${fmtNumber(v as number)} min`;
    case "count":
      return String(v);
    case "ratio":
      return `${fmtNumber((v as number) * 100)}%`;
    case "boolean":
      return v ? "yes" : "no";
    case "reward":
      return (v as number).toFixed(4);
    case "vehicle_id":
      return v === "rejected" ? "rejected" : `vehicle ${v}`;
    case "pair": {
      const [pickup, dropoff] = v as [number, number];
      return `pickup ${fmtNumber(pickup)} / drop-off ${fmtNumber(dropoff)}`;
    }
    case "error":
      return `unavailable (${String(v)})`;
    default:
      return String(v);
  }
}

function fmtNumber(value: number): string {
  return Number.isInteger(value) ? String(value) : String(Math.round(value * 100) / 100);
}

const VEHICLE_COLORS = ["#2563eb", "#059669", "#d97706", "#db2777", "#7c3aed", "#0891b2"];

export function vehicleColor(vehicleId: number): string {
  return VEHICLE_COLORS[vehicleId % VEHICLE_COLORS.length];
}

/** SVG grid map: vehicles with their routes, plus the pending request's
 * origin/destination markers. */
export function renderScenario(scenario: ScenarioDoc): string {
  const { width, height } = scenario.travel;
  const cell = 24;
  const pad = cell;
  const w = width * cell + 2 * pad;
  const h = height * cell + 2 * pad;
  const x = (gx: number) => pad + gx * cell + cell / 2;
  const y = (gy: number) => pad + gy * cell + cell / 2;

  const parts: string[] = [];
  parts.push(
    `<svg class="map" viewBox="0 0 ${w} ${h}" role="img" aria-label="fleet map">`,
  );
  for (let gx = 0; gx < width; gx += 1) {
    parts.push(
      `<line x1="${x(gx)}" y1="${y(0)}" x2="${x(gx)}" y2="${y(height - 1)}" class="grid"/>`,
    );
  }
  for (let gy = 0; gy < height; gy += 1) {
    parts.push(
      `<line x1="${x(0)}" y1="${y(gy)}" x2="${x(width - 1)}" y2="${y(gy)}" class="grid"/>`,
    );
  }

  for (const vehicle of scenario.world.vehicles) {
    parts.push(renderVehicle(vehicle, x, y));
  }

  for (const request of scenario.world.requests) {
    if (request.status !== "pending") continue;
    const [ox, oy] = request.origin;
    const [dx, dy] = request.destination;
    parts.push(
      `<circle class="marker origin" data-request="${request.id}" cx="${x(ox)}" cy="${y(oy)}" r="7"/>`,
      `<text x="${x(ox) + 9}" y="${y(oy) - 6}" class="label">R${request.id} origin</text>`,
      `<rect class="marker destination" data-request="${request.id}" x="${x(dx) - 6}" y="${y(dy) - 6}" width="12" height="12"/>`,
      `<text x="${x(dx) + 9}" y="${y(dy) - 6}" class="label">R${request.id} dest</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

function renderVehicle(
  vehicle: VehicleDoc,
  x: (gx: number) => number,
  y: (gy: number) => number,
): string {
  const color = vehicle.operable ? vehicleColor(vehicle.id) : "#9ca3af";
  const [vx, vy] = vehicle.location;
  const points = [
    `${x(vx)},${y(vy)}`,
    ...vehicle.route.map((stop) => `${x(stop.location[0])},${y(stop.location[1])}`),
  ].join(" ");
  const route =
    vehicle.route.length > 0
      ? `<polyline class="route" points="${points}" style="stroke:${color}"/>`
      : "";
  return (
    route +
    `<circle class="vehicle" data-vehicle="${vehicle.id}" cx="${x(vx)}" cy="${y(vy)}" r="9" style="fill:${color}"/>` +
    `<text x="${x(vx)}" y="${y(vy) + 4}" class="vehicle-id">${vehicle.id}</text>`
  );
}

export function renderPendingPanel(scenario: ScenarioDoc, decision: string | null): string {
  const pending = scenario.world.requests.filter((r) => r.status === "pending");
  if (pending.length === 0) {
    return `<div class="panel pending-panel">No pending request.</div>`;
  }
  const r = pending[0];
  return (
    `<div class="panel pending-panel">` +
    `<h3>Pending request ${r.id}</h3>` +
    `<dl>` +
    `<dt>Origin</dt><dd>(${r.origin[0]}, ${r.origin[1]})</dd>` +
    `<dt>Destination</dt><dd>(${r.destination[0]}, ${r.destination[1]})</dd>` +
    `<dt>Pickup by</dt><dd>minute ${r.t_p}</dd>` +
    `<dt>Drop-off by</dt><dd>minute ${r.t_d}</dd>` +
    `<dt>Passengers</dt><dd>${r.passengers}</dd>` +
    (decision ? `<dt>Plan</dt><dd class="decision">${escapeHtml(decision)}</dd>` : "") +
    `</dl></div>`
  );
}

export function renderSuggestions(suggestions: Suggestion[]): string {
  const items = suggestions
    .map(
      (s) =>
        `<li><button class="suggestion" data-suggestion-id="${s.type_id}" ` +
        `data-suggestion-text="${escapeHtml(s.text)}">${escapeHtml(s.text)}</button></li>`,
    )
    .join("");
  return `<ul class="suggestions">${items}</ul>`;
}

export function renderEvidenceTable(evidence: EvidenceRow[]): string {
  if (evidence.length === 0) return "";
  const rows = evidence
    .map(
      (row) =>
        `<tr data-formula="${escapeHtml(row.formula)}">` +
        `<td class="formula">${escapeHtml(row.formula)}</td>` +
        `<td class="value">${escapeHtml(formatValue(row))}</td>` +
        `<td class="provenance">${row.provenance.join(", ")}</td>` +
        `<td class="basis">${row.basis}</td>` +
        `</tr>`,
    )
    .join("");
  return (
    `<details class="evidence"><summary>Evidence (${evidence.length})</summary>` +
    `<table><thead><tr><th>Formula</th><th>Value</th><th>Nodes</th><th>Visits</th></tr></thead>` +
    `<tbody>${rows}</tbody></table></details>`
  );
}

export function renderKnowledge(knowledge: KnowledgeRow[]): string {
  if (knowledge.length === 0) return "";
  const items = knowledge
    .map(
      (row) =>
        `<li data-chunk="${row.chunk_id}"><span class="relatedness">` +
        `${row.relatedness.toFixed(2)}</span> ${escapeHtml(row.text)}</li>`,
    )
    .join("");
  return (
    `<details class="knowledge"><summary>Knowledge (${knowledge.length})</summary>` +
    `<ul>${items}</ul></details>`
  );
}

export function renderStars(turn: TurnDoc): string {
  const stars = [1, 2, 3, 4, 5]
    .map(
      (n) =>
        `<button class="star${turn.rating !== null && n <= turn.rating ? " lit" : ""}" ` +
        `data-rate="${n}" data-turn="${turn.index}" aria-label="rate ${n}">★</button>`,
    )
    .join("");
  return `<span class="stars" data-turn="${turn.index}">${stars}</span>`;
}

export function renderClassificationBadge(turn: TurnDoc): string {
  const c = turn.classification;
  const label = c.type_id === null ? c.category : `${c.category} / type ${c.type_id}`;
  return `<span class="badge ${escapeHtml(c.category)}">${escapeHtml(label)}</span>`;
}

export function renderTurn(turn: TurnDoc): string {
  const klass = turn.error ? "turn error-turn" : "turn";
  return (
    `<article class="${klass}" data-turn="${turn.index}">` +
    `<div class="query"><strong>You:</strong> ${escapeHtml(turn.query)} ` +
    renderClassificationBadge(turn) +
    `</div>` +
    (turn.formulas
      ? `<div class="formulas"><code>${escapeHtml(turn.formulas)}</code></div>`
      : "") +
    `<div class="explanation">${escapeHtml(turn.explanation).replace(/\n/g, "<br>")}</div>` +
    renderEvidenceTable(turn.evidence) +
    renderKnowledge(turn.knowledge) +
    (turn.error ? `<div class="inline-error">${escapeHtml(turn.error)}</div>` : "") +
    `<div class="turn-footer">Rate this answer: ${renderStars(turn)}</div>` +
    `</article>`
  );
}

export function renderTranscript(turns: TurnDoc[]): string {
  if (turns.length === 0) {
    return `<div class="empty-transcript">Ask a question or pick a suggestion.</div>`;
  }
  return turns.map(renderTurn).join("");
}

export function renderBanner(message: string): string {
  return (
    `<div class="banner" role="alert">${escapeHtml(message)} ` +
    `<button data-retry="1">Retry</button></div>`
  );
}

export interface ViewState {
  scenario: ScenarioDoc | null;
  decision: string | null;
  suggestions: Suggestion[];
  turns: TurnDoc[];
  pending: boolean;
  banner: string | null;
}

export function renderApp(state: ViewState): string {
  const left =
    (state.scenario ? renderScenario(state.scenario) : "") +
    (state.scenario ? renderPendingPanel(state.scenario, state.decision) : "") +
    `<button class="replan" data-replan="1"${state.pending ? " disabled" : ""}>Re-plan</button>`;
  const chat =
    `<div class="transcript" id="transcript">${renderTranscript(state.turns)}</div>` +
    (state.pending ? `<div class="pending-indicator">Working on it…</div>` : "") +
    `<form id="query-form" class="query-form">` +
    `<input id="query-input" type="text" placeholder="Ask about the plan…" autocomplete="off"` +
    `${state.pending ? " disabled" : ""}/>` +
    `<button type="submit"${state.pending ? " disabled" : ""}>Send</button>` +
    `</form>`;
  return (
    (state.banner ? renderBanner(state.banner) : "") +
    `<div class="columns">` +
    `<section class="left">${left}</section>` +
    `<section class="chat">${chat}</section>` +
    `<section class="right"><h3>Suggested questions</h3>${renderSuggestions(state.suggestions)}</section>` +
    `</div>`
  );
}
