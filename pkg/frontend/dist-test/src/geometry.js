import { toNumber } from "./rational.js";
export function pointXY(p) {
    return [toNumber(p[0]), toNumber(p[1])];
}
export function fitViewport(base, width, height, margin = 40) {
    const points = base.vertices.map(pointXY);
    const xs = points.map((p) => p[0]);
    const ys = points.map((p) => p[1]);
    const minX = Math.min(...xs);
    const minY = Math.min(...ys);
    const span = Math.max(Math.max(...xs) - minX, Math.max(...ys) - minY, 1e-9);
    const scale = (Math.min(width, height) - 2 * margin) / span;
    return { minX, minY, scale, width, height, margin };
}
export function project(view, p) {
    const [x, y] = pointXY(p);
    return [
        view.margin + (x - view.minX) * view.scale,
        view.height - view.margin - (y - view.minY) * view.scale,
    ];
}
export function hitVertex(base, view, screenX, screenY, radius = 12) {
    let best = null;
    let bestDist = radius * radius;
    base.vertices.forEach((v, i) => {
        const [x, y] = project(view, v);
        const d = (x - screenX) ** 2 + (y - screenY) ** 2;
        if (d <= bestDist) {
            best = i;
            bestDist = d;
        }
    });
    return best;
}
