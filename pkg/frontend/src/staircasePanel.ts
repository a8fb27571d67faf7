import type { StaircasePayload } from "./types.js";
import { exactText } from "./rational.js";

// Rows for the staircase side panel. Labels are the exact payload strings;
// float columns are displayed as sent by the service.

export interface StaircaseRow {
  n: number;
  label: string;        // exact rational, verbatim from the payload
  value: number;
  bound: number;
}

export interface StaircaseView {
  rows: StaircaseRow[];
  asymptote: number | null;
  asymptoteLabel: string | null;
}

export function staircaseView(payload: StaircasePayload): StaircaseView {
  const rows = payload.points.map((p) => ({
    n: p.n,
    label: exactText(p.sharp),
    value: p.sharp_float,
    bound: p.bound,
  }));
  return {
    rows,
    asymptote: payload.accumulation,
    asymptoteLabel:
      payload.accumulation === null ? null : payload.accumulation.toFixed(6),
  };
}
