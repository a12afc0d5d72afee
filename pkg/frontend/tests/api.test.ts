import { describe, expect, it } from "vitest";

import { ApiError, ServiceClient } from "../src/api.js";

interface Call {
  url: string;
  init?: RequestInit;
}

function stubClient(responses: Record<string, { status?: number; body: unknown }>) {
  const calls: Call[] = [];
  const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    const found = responses[url.replace(/^http:\/\/svc/, "")];
    if (!found) throw new Error(`no stub for ${url}`);
    return new Response(JSON.stringify(found.body), {
      status: found.status ?? 200,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { client: new ServiceClient("http://svc", fetchFn), calls };
}

describe("ServiceClient", () => {
  it("fetches and unwraps documented endpoints", async () => {
    const { client, calls } = stubClient({
      "/suggestions": { body: { suggestions: [{ type_id: 1, category: "post_hoc", text: "q" }] } },
      "/session": { body: { session_id: "abc123" } },
      "/session/abc123/query": {
        body: { index: 0, query: "q", classification: { category: "post_hoc", type_id: 1, confidence: 1 },
                formulas: "tp(0)", evidence: [], knowledge: [], explanation: "x", error: null, rating: null },
      },
    });
    const suggestions = await client.suggestions();
    expect(suggestions[0].type_id).toBe(1);
    const sessionId = await client.createSession("tree1");
    expect(sessionId).toBe("abc123");
    const turn = await client.query(sessionId, "q");
    expect(turn.formulas).toBe("tp(0)");

    expect(calls.map((c) => c.url)).toEqual([
      "http://svc/suggestions",
      "http://svc/session",
      "http://svc/session/abc123/query",
    ]);
    expect(JSON.parse(calls[1].init!.body as string)).toEqual({ tree_id: "tree1" });
    expect(JSON.parse(calls[2].init!.body as string)).toEqual({ text: "q" });
  });

  it("turns service error bodies into ApiError", async () => {
    const { client } = stubClient({
      "/evidence": {
        status: 400,
        body: { error: { code: "malformed_formula", message: "expected ')'", position: 3 } },
      },
    });
    await expect(
      client["request"]("/evidence", { method: "POST" }),
    ).rejects.toMatchObject({ status: 400, code: "malformed_formula" });
  });

  it("maps network failures to an unreachable ApiError", async () => {
    const failing = new ServiceClient("http://svc", async () => {
      throw new Error("ECONNREFUSED");
    });
    try {
      await failing.getScenario();
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).code).toBe("unreachable");
    }
  });

  it("sends ratings to the rating endpoint", async () => {
    const { client, calls } = stubClient({
      "/session/s/turns/2/rating": { body: { ok: true, turn: 2, rating: 4 } },
    });
    await client.rate("s", 2, 4);
    expect(calls[0].url).toBe("http://svc/session/s/turns/2/rating");
    expect(JSON.parse(calls[0].init!.body as string)).toEqual({ stars: 4 });
  });
});
