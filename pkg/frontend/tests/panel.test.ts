import { strict as assert } from "node:assert";
import { readFileSync } from "node:fs";
import { test } from "node:test";

import { staircaseView } from "../src/staircasePanel.js";
import { exactText } from "../src/rational.js";
import type { StaircasePayload } from "../src/types.js";

const fixture = JSON.parse(
  readFileSync(new URL("../../tests/fixtures/cp2-session.json", import.meta.url), "utf8"),
);
const payload: StaircasePayload = fixture.staircase;

test("four alternating mutations display the expected sharp points", () => {
  const view = staircaseView(payload);
  assert.deepEqual(
    view.rows.map((r) => r.label),
    ["1", "4", "25/4", "169/25", "1156/169"],
  );
});

test("every displayed label is the verbatim payload string", () => {
  const view = staircaseView(payload);
  view.rows.forEach((row, i) => {
    const pair = payload.points[i].sharp;
    assert.equal(row.label, exactText(pair));
    // string identity with the wire values, no numeric round trip
    assert.equal(row.label, pair[1] === "1" ? pair[0] : `${pair[0]}/${pair[1]}`);
    assert.equal(row.value, payload.points[i].sharp_float);
    assert.equal(row.bound, payload.points[i].bound);
  });
});

test("the asymptote is the service accumulation value", () => {
  const view = staircaseView(payload);
  assert.equal(view.asymptote, payload.accumulation);
  assert.equal(view.asymptoteLabel, "6.854102");
});
