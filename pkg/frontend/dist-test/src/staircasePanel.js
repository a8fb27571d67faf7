import { exactText } from "./rational.js";
export function staircaseView(payload) {
    const rows = payload.points.map((p) => ({
        n: p.n,
        label: exactText(p.sharp),
        value: p.sharp_float,
        bound: p.bound,
    }));
    return {
        rows,
        asymptote: payload.accumulation,
        asymptoteLabel: payload.accumulation === null ? null : payload.accumulation.toFixed(6),
    };
}
