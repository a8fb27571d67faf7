import { ApiError, Client } from "./api.js";
import { initialViewState, isFrozen, legalOrders, withBanner, withMutation, withSession, withUndo, } from "./state.js";
import { renderDiagram } from "./view.js";
import { staircaseView } from "./staircasePanel.js";
import { renderStaircaseChart } from "./staircaseChart.js";
const client = new Client("");
let state = initialViewState();
function byId(id) {
    const node = document.getElementById(id);
    if (!node) {
        throw new Error(`missing element #${id}`);
    }
    return node;
}
async function refreshStaircase() {
    if (!state.session) {
        return;
    }
    const payload = await client.staircase(state.session.id);
    const view = staircaseView(payload);
    renderStaircaseChart(byId("staircase-chart"), view);
    const list = byId("sharp-list");
    list.replaceChildren();
    for (const row of view.rows) {
        const item = document.createElement("li");
        item.textContent = `s${row.n} = ${row.label}`;
        list.appendChild(item);
    }
}
function renderHistory() {
    const strip = byId("history-strip");
    strip.replaceChildren();
    state.strip.forEach((s, i) => {
        const chip = document.createElement("span");
        chip.className = i === state.cursor ? "chip current" : "chip";
        chip.textContent = i === 0 ? "start" : `#${i}`;
        strip.appendChild(chip);
    });
}
function renderBanner() {
    const banner = byId("banner");
    banner.textContent = state.banner ?? "";
    banner.hidden = state.banner === null;
    const retry = byId("retry");
    retry.hidden = state.banner === null;
}
async function redraw() {
    renderBanner();
    renderHistory();
    const session = state.session;
    if (!session) {
        return;
    }
    byId("triple").textContent = session.triple
        ? `(${session.triple.join(", ")})`
        : "-";
    byId("determinants").textContent = session.corner_determinants.join(", ");
    renderDiagram(byId("diagram"), session, state.overlays, {
        onVertexClick: (vertex) => void mutateAt(vertex),
    });
    await refreshStaircase();
}
async function mutateAt(vertex) {
    const session = state.session;
    if (!session || isFrozen(session, vertex)) {
        return;
    }
    const orders = legalOrders(session, vertex);
    if (orders.length === 0) {
        state = withBanner(state, `vertex ${vertex} has no nodes to trade`);
        renderBanner();
        return;
    }
    const order = orders[orders.length - 1]; // full mutation by default
    try {
        const next = await client.mutate(session.id, vertex, order);
        state = withMutation(state, next);
        await redraw();
    }
    catch (err) {
        const message = err instanceof ApiError ? err.message : String(err);
        state = withBanner(state, message);
        renderBanner();
    }
}
async function start(preset) {
    try {
        const session = await client.createSession(preset);
        state = withSession(state, session);
        await redraw();
    }
    catch (err) {
        const message = err instanceof ApiError ? err.message : String(err);
        state = withBanner(state, `service unreachable: ${message}`);
        renderBanner();
    }
}
async function setupPicker() {
    const picker = byId("preset-picker");
    const presets = await client.presets();
    picker.replaceChildren();
    for (const p of presets) {
        const option = document.createElement("option");
        option.value = p.name;
        option.textContent = `${p.name}: ${p.label}`;
        picker.appendChild(option);
    }
}
export function wire() {
    byId("create").addEventListener("click", () => {
        const picker = byId("preset-picker");
        void start(picker.value);
    });
    byId("undo").addEventListener("click", async () => {
        if (!state.session) {
            return;
        }
        const session = await client.undo(state.session.id);
        state = withUndo(state, session);
        await redraw();
    });
    byId("retry").addEventListener("click", () => {
        state = withBanner(state, null);
        void setupPicker().then(() => renderBanner());
    });
    void setupPicker();
}
if (typeof document !== "undefined" && document.readyState !== "loading") {
    wire();
}
else if (typeof document !== "undefined") {
    document.addEventListener("DOMContentLoaded", wire);
}
