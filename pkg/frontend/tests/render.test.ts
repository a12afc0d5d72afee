import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  formatValue,
  renderApp,
  renderEvidenceTable,
  renderPendingPanel,
  renderScenario,
  renderStars,
  renderSuggestions,
  renderTranscript,
  renderTurn,
  type ViewState,
} from "../src/render.js";
import type { EvidenceRow, ScenarioDoc, TurnDoc } from "../src/types.js";

function scenarioDoc(vehicles: number): ScenarioDoc {
  const positions: [number, number][] = [
    [2, 2],
    [6, 5],
    [14, 14],
    [10, 2],
  ];
  return {
    schema: "scenario/v1",
    travel: { width: 20, height: 20, speed: 1, congestion_factor: 1 },
    world: {
      time: 240,
      congestion_factor: 1,
      vehicles: Array.from({ length: vehicles }, (_, id) => ({
        id,
        capacity: 3,
        occupancy: 0,
        location: positions[id % positions.length],
        operable: true,
        route: [],
      })),
      requests: [
        {
          id: 0,
          origin: [4, 4],
          destination: [15, 11],
          t_p: 255,
          t_d: 300,
          passengers: 1,
          status: "pending",
          t_ap: null,
          t_ad: null,
        },
      ],
      assignments: {},
    },
  };
}

function turnDoc(overrides: Partial<TurnDoc> = {}): TurnDoc {
  return {
    index: 0,
    query: "Which vehicle is scheduled to pick up the passenger?",
    classification: { category: "post_hoc", type_id: 25, confidence: 1 },
    formulas: "car(1)",
    evidence: [
      {
        formula: "car(1)",
        kind: "vehicle_id",
        value: 2,
        provenance: [0],
        basis: 240,
        detail: null,
      },
    ],
    knowledge: [],
    explanation: "The committed plan is vehicle 2.",
    error: null,
    rating: null,
    ...overrides,
  };
}

describe("renderScenario", () => {
  it("draws one marker per vehicle at its configured position", () => {
    const html = renderScenario(scenarioDoc(4));
    expect(html.match(/class="vehicle"/g)).toHaveLength(4);
    for (const id of [0, 1, 2, 3]) {
      expect(html).toContain(`data-vehicle="${id}"`);
    }
  });

  it("renders request markers even with an empty fleet", () => {
    const html = renderScenario(scenarioDoc(0));
    expect(html).not.toContain('class="vehicle"');
    expect(html).toContain('class="marker origin"');
    expect(html).toContain('class="marker destination"');
  });

  it("draws routes for scheduled stops", () => {
    const doc = scenarioDoc(1);
    doc.world.vehicles[0].route = [
      { kind: "dropoff", request_id: 9, location: [9, 8], eta: 246 },
    ];
    expect(renderScenario(doc)).toContain('class="route"');
  });
});

describe("renderPendingPanel", () => {
  it("shows the request window and the plan decision", () => {
    const html = renderPendingPanel(scenarioDoc(2), "assign(vehicle 2)");
    expect(html).toContain("Pending request 0");
    expect(html).toContain("minute 255");
    expect(html).toContain("assign(vehicle 2)");
  });

  it("handles no pending request", () => {
    const doc = scenarioDoc(2);
    doc.world.requests = [];
    expect(renderPendingPanel(doc, null)).toContain("No pending request");
  });
});

describe("formatValue", () => {
  const row = (kind: string, value: unknown): EvidenceRow => ({
    formula: "x",
    kind,
    value,
    provenance: [],
    basis: 0,
    detail: null,
  });

  it("covers every evidence kind", () => {
    expect(formatValue(row("minutes", 255))).toBe("255 min");
    expect(formatValue(row("count", 3))).toBe("3");
    expect(formatValue(row("ratio", 0.5))).toBe("50%");
    expect(formatValue(row("boolean", true))).toBe("yes");
    expect(formatValue(row("reward", 0.57361))).toBe("0.5736");
    expect(formatValue(row("vehicle_id", 2))).toBe("vehicle 2");
    expect(formatValue(row("vehicle_id", "rejected"))).toBe("rejected");
    expect(formatValue(row("pair", [259, 277]))).toBe("pickup 259 / drop-off 277");
    expect(formatValue(row("error", "not explored"))).toBe("unavailable (not explored)");
  });
});

describe("renderEvidenceTable", () => {
  it("renders one row per result inside a collapsible", () => {
    const html = renderEvidenceTable(turnDoc().evidence);
    expect(html).toContain("<details");
    expect(html).toContain('data-formula="car(1)"');
    expect(html).toContain("vehicle 2");
  });

  it("is empty without evidence", () => {
    expect(renderEvidenceTable([])).toBe("");
  });
});

describe("renderTurn", () => {
  it("shows badge, formulas, explanation, and rating controls", () => {
    const html = renderTurn(turnDoc());
    expect(html).toContain("post_hoc / type 25");
    expect(html).toContain("<code>car(1)</code>");
    expect(html).toContain("The committed plan is vehicle 2.");
    expect(html.match(/data-rate="\d"/g)).toHaveLength(5);
  });

  it("escapes query text", () => {
    const html = renderTurn(turnDoc({ query: "<script>alert(1)</script>" }));
    expect(html).not.toContain("<script>alert");
    expect(html).toContain("&lt;script&gt;");
  });

  it("marks error turns inline", () => {
    const html = renderTurn(turnDoc({ error: "backend_failure: boom" }));
    expect(html).toContain("error-turn");
    expect(html).toContain("backend_failure: boom");
  });
});

describe("renderStars", () => {
  it("lights exactly the rated stars", () => {
    const html = renderStars(turnDoc({ rating: 3 }));
    expect(html.match(/star lit/g)).toHaveLength(3);
  });

  it("attaches ratings to the turn index only", () => {
    const html = renderStars(turnDoc({ index: 7 }));
    expect(html.match(/data-turn="7"/g)!.length).toBeGreaterThanOrEqual(5);
  });
});

describe("renderApp", () => {
  const state: ViewState = {
    scenario: scenarioDoc(4),
    decision: "assign(vehicle 2)",
    suggestions: [{ type_id: 1, category: "post_hoc", text: "Q1?" }],
    turns: [turnDoc()],
    pending: false,
    banner: null,
  };

  it("lays out map, transcript, and suggestions", () => {
    const html = renderApp(state);
    expect(html).toContain('class="map"');
    expect(html).toContain('id="transcript"');
    expect(html).toContain('data-suggestion-id="1"');
  });

  it("disables input while a query is in flight", () => {
    const busy = { ...state, pending: true };
    const html = renderApp(busy);
    expect(html).toContain("Working on it");
    expect(html).toMatch(/<input[^>]*disabled/);
  });

  it("shows a retry banner when the service is unreachable", () => {
    const broken = { ...state, banner: "unreachable: service unreachable" };
    const html = renderApp(broken);
    expect(html).toContain('role="alert"');
    expect(html).toContain("data-retry");
  });

  it("shows the empty state before any turn", () => {
    const fresh = { ...state, turns: [] };
    expect(renderApp(fresh)).toContain("Ask a question or pick a suggestion.");
  });
});

describe("renderTranscript and suggestions", () => {
  it("renders every turn in order", () => {
    const turns = [turnDoc(), turnDoc({ index: 1, query: "second" })];
    const html = renderTranscript(turns);
    expect(html.indexOf('data-turn="0"')).toBeLessThan(html.indexOf('data-turn="1"'));
  });

  it("buttons carry the canonical query text", () => {
    const html = renderSuggestions([
      { type_id: 29, category: "background", text: "What happens if vehicle 1 breaks down?" },
    ]);
    expect(html).toContain('data-suggestion-text="What happens if vehicle 1 breaks down?"');
  });
});

describe("escapeHtml", () => {
  it("escapes the five specials", () => {
    expect(escapeHtml(`<a href="x">&'`)).toBe("&lt;a href=&quot;x&quot;&gt;&amp;&#39;");
  });
});
