/** Imperative shell: owns the session, keeps at most one query in flight,
 * and re-renders the pure views after every service response. */

import { ApiError, ServiceClient } from "./api.js";
import { renderApp, type ViewState } from "./render.js";
import type { TurnDoc } from "./types.js";

export class App {
  state: ViewState = {
    scenario: null,
    decision: null,
    suggestions: [],
    turns: [],
    pending: false,
    banner: null,
  };
  sessionId: string | null = null;

  constructor(
    private readonly root: { innerHTML: string },
    private readonly client: ServiceClient,
  ) {}

  render(): void {
    this.root.innerHTML = renderApp(this.state);
  }

  async boot(): Promise<void> {
    this.state.banner = null;
    try {
      const plan = await this.client.plan();
      this.state.decision = describeDecision(plan.decision.kind, plan.decision.vehicle_id);
      this.sessionId = await this.client.createSession(plan.tree_id);
      this.state.scenario = await this.client.getScenario();
      this.state.suggestions = await this.client.suggestions();
      this.state.turns = [];
    } catch (err) {
      this.state.banner = message(err);
    }
    this.render();
  }

  async refreshScenario(): Promise<void> {
    if (!this.sessionId) return;
    try {
      this.state.scenario = await this.client.getScenario();
      this.state.banner = null;
    } catch (err) {
      this.state.banner = message(err);
    }
    this.render();
  }

  async replan(): Promise<void> {
    if (this.state.pending) return;
    await this.boot();
  }

  async submitQuery(text: string): Promise<TurnDoc | null> {
    const trimmed = text.trim();
    if (!trimmed || this.state.pending || !this.sessionId) return null;
    this.state.pending = true;
    this.render();
    let turn: TurnDoc | null = null;
    try {
      turn = await this.client.query(this.sessionId, trimmed);
      this.state.turns = [...this.state.turns, turn];
      this.state.banner = null;
    } catch (err) {
      // 4xx/5xx become inline error turns so they are never lost
      const fallback: TurnDoc = {
        index: this.state.turns.length,
        query: trimmed,
        classification: { category: "background", type_id: null, confidence: 0 },
        formulas: null,
        evidence: [],
        knowledge: [],
        explanation: "",
        error: message(err),
        rating: null,
      };
      this.state.turns = [...this.state.turns, fallback];
    }
    this.state.pending = false;
    this.render();
    return turn;
  }

  async rateTurn(turnIndex: number, stars: number): Promise<void> {
    if (!this.sessionId) return;
    try {
      await this.client.rate(this.sessionId, turnIndex, stars);
      const transcript = await this.client.transcript(this.sessionId);
      this.state.turns = transcript.turns;
      this.state.banner = null;
    } catch (err) {
      this.state.banner = message(err);
    }
    this.render();
  }
}

function describeDecision(kind: string, vehicleId?: number): string {
  return kind === "assign" ? `assign(vehicle ${vehicleId})` : kind;
}

function message(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  return String(err);
}

/** Browser entry point: event delegation keeps handlers alive across
 * innerHTML re-renders. */
export function mount(root: HTMLElement, baseUrl = ""): App {
  const app = new App(root, new ServiceClient(baseUrl));

  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const suggestion = target.closest<HTMLElement>("[data-suggestion-text]");
    if (suggestion) {
      void app.submitQuery(suggestion.dataset.suggestionText ?? "");
      return;
    }
    const star = target.closest<HTMLElement>("[data-rate]");
    if (star) {
      void app.rateTurn(Number(star.dataset.turn), Number(star.dataset.rate));
      return;
    }
    if (target.closest("[data-retry]")) {
      void app.boot();
      return;
    }
    if (target.closest("[data-replan]")) {
      void app.replan();
    }
  });

  root.addEventListener("submit", (event) => {
    event.preventDefault();
    const input = root.querySelector<HTMLInputElement>("#query-input");
    if (input) {
      const text = input.value;
      input.value = "";
      void app.submitQuery(text);
    }
  });

  window.addEventListener("focus", () => void app.refreshScenario());

  void app.boot();
  return app;
}
