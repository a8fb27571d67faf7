import type { BasePayload, PointPayload } from "./types.js";
import { toNumber } from "./rational.js";

// Client-side geometry exists only for hit-testing and viewport fitting;
// every displayed number still comes from the service payload.

export interface Viewport {
  minX: number;
  minY: number;
  scale: number;
  width: number;
  height: number;
  margin: number;
}

export function pointXY(p: PointPayload): [number, number] {
  return [toNumber(p[0]), toNumber(p[1])];
}

export function fitViewport(
  base: BasePayload,
  width: number,
  height: number,
  margin = 40,
): Viewport {
  const points = base.vertices.map(pointXY);
  const xs = points.map((p) => p[0]);
  const ys = points.map((p) => p[1]);
  const minX = Math.min(...xs);
  const minY = Math.min(...ys);
  const span = Math.max(Math.max(...xs) - minX, Math.max(...ys) - minY, 1e-9);
  const scale = (Math.min(width, height) - 2 * margin) / span;
  return { minX, minY, scale, width, height, margin };
}

export function project(view: Viewport, p: PointPayload): [number, number] {
  const [x, y] = pointXY(p);
  return [
    view.margin + (x - view.minX) * view.scale,
    view.height - view.margin - (y - view.minY) * view.scale,
  ];
}

export function hitVertex(
  base: BasePayload,
  view: Viewport,
  screenX: number,
  screenY: number,
  radius = 12,
): number | null {
  let best: number | null = null;
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
