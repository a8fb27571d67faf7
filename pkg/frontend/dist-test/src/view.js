import { fitViewport, pointXY, project } from "./geometry.js";
import { exactText, toNumber } from "./rational.js";
import { isFrozen, legalOrders } from "./state.js";
const SVG_NS = "http://www.w3.org/2000/svg";
function el(name, attrs) {
    const node = document.createElementNS(SVG_NS, name);
    for (const [k, v] of Object.entries(attrs)) {
        node.setAttribute(k, v);
    }
    return node;
}
export function renderDiagram(svg, session, overlays, handlers) {
    svg.replaceChildren();
    const width = Number(svg.getAttribute("width") ?? 480);
    const height = Number(svg.getAttribute("height") ?? 480);
    const view = fitViewport(session.base, width, height);
    const points = session.base.vertices
        .map((v) => project(view, v).join(","))
        .join(" ");
    svg.appendChild(el("polygon", {
        points,
        fill: "#eef4ff",
        stroke: "#1f4e9c",
        "stroke-width": "2",
    }));
    if (overlays.cuts) {
        session.base.cuts.forEach((cut, i) => {
            if (cut.nodes === 0 || cut.positions.length === 0) {
                return;
            }
            const [vx, vy] = pointXY(session.base.vertices[i]);
            const reach = toNumber(cut.positions[0]);
            const end = [
                vx + cut.direction[0] * reach,
                vy + cut.direction[1] * reach,
            ];
            const [x1, y1] = project(view, session.base.vertices[i]);
            const x2 = view.margin + (end[0] - view.minX) * view.scale;
            const y2 = view.height - view.margin - (end[1] - view.minY) * view.scale;
            svg.appendChild(el("line", {
                x1: String(x1),
                y1: String(y1),
                x2: String(x2),
                y2: String(y2),
                stroke: "#c03434",
                "stroke-width": "1.5",
                "stroke-dasharray": "6 4",
            }));
            if (overlays.nodes) {
                cut.positions.forEach((pos) => {
                    const r = toNumber(pos);
                    const nx = view.margin + (vx + cut.direction[0] * r - view.minX) * view.scale;
                    const ny = view.height - view.margin - (vy + cut.direction[1] * r - view.minY) * view.scale;
                    svg.appendChild(el("path", {
                        d: `M ${nx - 4} ${ny - 4} L ${nx + 4} ${ny + 4} M ${nx - 4} ${ny + 4} L ${nx + 4} ${ny - 4}`,
                        stroke: "#c03434",
                        "stroke-width": "1.5",
                    }));
                });
            }
        });
    }
    session.base.vertices.forEach((v, i) => {
        const [x, y] = project(view, v);
        const frozen = isFrozen(session, i);
        const dot = el("circle", {
            cx: String(x),
            cy: String(y),
            r: "6",
            fill: frozen ? "#9aa4b0" : "#1f4e9c",
            cursor: frozen ? "not-allowed" : "pointer",
            "data-vertex": String(i),
            "data-frozen": frozen ? "true" : "false",
        });
        const tip = frozen
            ? "frozen vertex: never mutated"
            : `corner determinant ${session.corner_determinants[i]}; orders ${legalOrders(session, i).join(", ") || "none"}`;
        const title = document.createElementNS(SVG_NS, "title");
        title.textContent = tip;
        dot.appendChild(title);
        if (!frozen) {
            dot.addEventListener("click", () => handlers.onVertexClick(i));
        }
        svg.appendChild(dot);
        if (frozen) {
            svg.appendChild(el("circle", {
                cx: String(x),
                cy: String(y),
                r: "11",
                fill: "none",
                stroke: "#1f8a4c",
                "stroke-width": "2",
            }));
        }
        if (overlays.labels) {
            const label = el("text", {
                x: String(x + 9),
                y: String(y - 9),
                "font-size": "11",
                fill: "#333",
            });
            const [vx, vy] = session.base.vertices[i];
            label.textContent = `v${i} (${exactText(vx)}, ${exactText(vy)})`;
            svg.appendChild(label);
        }
    });
    return view;
}
