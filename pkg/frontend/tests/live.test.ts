/** Contract test against a live service (mock LLM backend). Skipped unless
 * SERVICE_URL points at a running instance:
 *
 *   treexplain serve &          # or: python3 -m treexplain.cli serve
 *   SERVICE_URL=http://127.0.0.1:8000 npm run test:live
 */

import { beforeAll, describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api.js";
import { App } from "../src/app.js";
import { renderEvidenceTable, renderTurn } from "../src/render.js";

const SERVICE_URL = process.env.SERVICE_URL ?? "";

describe.skipIf(!SERVICE_URL)("live service contract", () => {
  const client = new ServiceClient(SERVICE_URL);
  const root = { innerHTML: "" };
  let app: App;

  beforeAll(async () => {
    app = new App(root, client);
    await app.boot();
    expect(app.sessionId).toBeTruthy();
    expect(app.state.scenario).not.toBeNull();
    expect(app.state.suggestions).toHaveLength(31);
  }, 120_000);

  it(
    "each suggestion click yields a turn whose evidence table matches the transcript",
    async () => {
      for (const suggestion of app.state.suggestions) {
        const turn = await app.submitQuery(suggestion.text);
        expect(turn, suggestion.text).not.toBeNull();
        expect(turn!.error, suggestion.text).toBeNull();
      }
      const transcript = await client.transcript(app.sessionId!);
      expect(transcript.turns).toHaveLength(31);
      for (let i = 0; i < 31; i += 1) {
        const rendered = renderEvidenceTable(app.state.turns[i].evidence);
        const fromTranscript = renderEvidenceTable(transcript.turns[i].evidence);
        expect(rendered).toBe(fromTranscript);
        expect(renderTurn({ ...app.state.turns[i] })).toBe(
          renderTurn({ ...transcript.turns[i] }),
        );
      }
      // the UI view is exactly the service transcript
      expect(app.state.turns.map((t) => t.query)).toEqual(
        transcript.turns.map((t) => t.query),
      );
    },
    300_000,
  );

  it(
    "a breakdown what-if query renders the re-plan decision",
    async () => {
      const turn = await app.submitQuery("What happens if vehicle 1 breaks down?");
      expect(turn).not.toBeNull();
      expect(turn!.formulas).toBe("exclude(1)");
      const row = turn!.evidence[0];
      expect(row.kind).toBe("vehicle_id");
      const html = renderTurn(turn!);
      expect(html).toContain("Re-planning under the requested scenario");
      // the evidence cell names the fallback vehicle (or the rejection)
      expect(html).toMatch(/vehicle \d+|rejected/);
    },
    120_000,
  );

  it("ratings round-trip through the service", async () => {
    await app.rateTurn(0, 5);
    await app.rateTurn(0, 3);
    const transcript = await client.transcript(app.sessionId!);
    expect(transcript.turns[0].rating).toBe(3);
    expect(app.state.turns[0].rating).toBe(3);
  });

  it("rejects out-of-range ratings without breaking the session", async () => {
    await app.rateTurn(0, 3);
    const before = app.state.turns[0].rating;
    await app.rateTurn(0, 9 as number);
    expect(app.state.banner).toContain("invalid_rating");
    const transcript = await client.transcript(app.sessionId!);
    expect(transcript.turns[0].rating).toBe(before);
  });
});
