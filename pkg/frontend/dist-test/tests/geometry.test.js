import { strict as assert } from "node:assert";
import { readFileSync } from "node:fs";
import { test } from "node:test";
import { fitViewport, hitVertex, project } from "../src/geometry.js";
const fixture = JSON.parse(readFileSync(new URL("../../tests/fixtures/cp2-session.json", import.meta.url), "utf8"));
const initial = fixture.initial;
test("projection keeps all vertices inside the frame", () => {
    const view = fitViewport(initial.base, 480, 480);
    for (const v of initial.base.vertices) {
        const [x, y] = project(view, v);
        assert.ok(x >= view.margin - 1e-9 && x <= 480 - view.margin + 1e-9);
        assert.ok(y >= view.margin - 1e-9 && y <= 480 - view.margin + 1e-9);
    }
});
test("hit testing finds the clicked vertex and nothing far away", () => {
    const view = fitViewport(initial.base, 480, 480);
    initial.base.vertices.forEach((v, i) => {
        const [x, y] = project(view, v);
        assert.equal(hitVertex(initial.base, view, x + 3, y - 3), i);
    });
    assert.equal(hitVertex(initial.base, view, 240, 240), null);
});
