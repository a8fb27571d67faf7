import type { StaircaseView } from "./staircasePanel.js";

const SVG_NS = "http://www.w3.org/2000/svg";

// Chart of the sharp points with the accumulation asymptote dashed.

export function renderStaircaseChart(svg: SVGSVGElement, view: StaircaseView): void {
  svg.replaceChildren();
  const width = Number(svg.getAttribute("width") ?? 520);
  const height = Number(svg.getAttribute("height") ?? 300);
  const margin = 44;
  if (view.rows.length === 0) {
    return;
  }
  const maxN = Math.max(...view.rows.map((r) => r.n), 1);
  const top = Math.max(view.asymptote ?? 0, ...view.rows.map((r) => r.value)) * 1.06;
  const lo = Math.min(...view.rows.map((r) => r.value)) * 0.9;

  const at = (n: number, v: number): [number, number] => [
    margin + (n / maxN) * (width - 2 * margin),
    height - margin - ((v - lo) / Math.max(top - lo, 1e-9)) * (height - 2 * margin),
  ];

  const make = (name: string, attrs: Record<string, string>) => {
    const node = document.createElementNS(SVG_NS, name);
    for (const [k, v] of Object.entries(attrs)) {
      node.setAttribute(k, v);
    }
    svg.appendChild(node);
    return node;
  };

  if (view.asymptote !== null) {
    const y = at(0, view.asymptote)[1];
    make("line", {
      x1: String(margin),
      y1: String(y),
      x2: String(width - margin),
      y2: String(y),
      stroke: "#1f8a4c",
      "stroke-width": "1.5",
      "stroke-dasharray": "8 5",
      "data-role": "asymptote",
    });
    const label = make("text", {
      x: String(width - margin + 4),
      y: String(y + 4),
      "font-size": "11",
      fill: "#1f8a4c",
    });
    label.textContent = view.asymptoteLabel ?? "";
  }

  const polyline = view.rows
    .map((r) => at(r.n, r.value).join(","))
    .join(" ");
  make("polyline", {
    points: polyline,
    fill: "none",
    stroke: "#1f4e9c",
    "stroke-width": "1.2",
  });
  view.rows.forEach((r) => {
    const [x, y] = at(r.n, r.value);
    make("circle", { cx: String(x), cy: String(y), r: "3.5", fill: "#1f4e9c" });
    const label = make("text", {
      x: String(x),
      y: String(y - 8),
      "font-size": "10",
      "text-anchor": "middle",
      fill: "#333",
      "data-role": "sharp-label",
    });
    label.textContent = r.label;
  });
}
