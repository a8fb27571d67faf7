import { strict as assert } from "node:assert";
import { readFileSync } from "node:fs";
import { test } from "node:test";

import { ApiError, Client, FetchLike } from "../src/api.js";

const fixture = JSON.parse(
  readFileSync(new URL("../../tests/fixtures/cp2-session.json", import.meta.url), "utf8"),
);

function stub(routes: Record<string, { status: number; body: unknown }>): FetchLike {
  return async (input, init) => {
    const key = `${init?.method ?? "GET"} ${input}`;
    const route = routes[key];
    if (!route) {
      throw new Error(`unexpected request ${key}`);
    }
    return {
      ok: route.status < 400,
      status: route.status,
      statusText: String(route.status),
      json: async () => route.body,
    } as Response;
  };
}

test("createSession posts the preset and returns the state", async () => {
  const client = new Client(
    "",
    stub({ "POST /sessions": { status: 201, body: fixture.initial } }),
  );
  const state = await client.createSession("cp2");
  assert.equal(state.preset, "cp2");
  assert.equal(state.frozen, 0);
});

test("illegal mutations surface the service error payload", async () => {
  const client = new Client(
    "",
    stub({
      "POST /sessions/x/mutate": {
        status: 422,
        body: { error: "the frozen vertex is never mutated", kind: "illegal-mutation" },
      },
    }),
  );
  await assert.rejects(
    () => client.mutate("x", 0, 1),
    (err: unknown) => {
      assert.ok(err instanceof ApiError);
      assert.equal(err.status, 422);
      assert.match(err.message, /frozen/);
      return true;
    },
  );
});

test("unknown sessions map to 404 errors", async () => {
  const client = new Client(
    "",
    stub({
      "GET /sessions/nope": {
        status: 404,
        body: { error: "no session 'nope'", kind: "not-found" },
      },
    }),
  );
  await assert.rejects(
    () => client.getSession("nope"),
    (err: unknown) => err instanceof ApiError && err.status === 404,
  );
});

test("network failures become reachability errors", async () => {
  const client = new Client("", async () => {
    throw new Error("connection refused");
  });
  await assert.rejects(
    () => client.presets(),
    (err: unknown) => err instanceof ApiError && err.kind === "network",
  );
});
