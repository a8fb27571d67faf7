// Wire types of the session service. Rationals are [numerator, denominator]
// string pairs and are displayed verbatim; the client never recomputes them.

export type RationalPair = [string, string];
export type PointPayload = [RationalPair, RationalPair];

export interface CutPayload {
  direction: [number, number];
  nodes: number;
  positions: RationalPair[];
}

export interface BasePayload {
  vertices: PointPayload[];
  cuts: CutPayload[];
  marked_sides: number[];
  marked_cut_segments: [number, number][];
}

export interface HistoryEntry {
  vertex: number;
  order: number;
}

export interface SessionState {
  id: string;
  preset: string | null;
  base: BasePayload;
  history: HistoryEntry[];
  frozen: number | null;
  corner_determinants: number[];
  triple: number[] | null;
  sharp_points: RationalPair[];
  accumulation: number | null;
  valid: boolean;
}

export interface StaircasePoint {
  n: number;
  sharp: RationalPair;
  sharp_float: number;
  bound: number;
}

export interface StaircasePayload {
  points: StaircasePoint[];
  accumulation: number | null;
}

export interface PresetInfo {
  name: string;
  label: string;
  seed: number[];
  accumulation: number;
}

export interface ServiceError {
  error: string;
  kind: string;
}
