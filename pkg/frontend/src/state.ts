import type { SessionState } from "./types.js";

// View state is a pure function of the session states seen so far plus local
// toggles; every transition below is a plain reducer so undo/redo stay
// replayable from the history strip.

export interface OverlayToggles {
  cuts: boolean;
  nodes: boolean;
  labels: boolean;
  graph: boolean;
}

export interface ViewState {
  session: SessionState | null;
  strip: SessionState[];        // every state seen, oldest first
  cursor: number;               // index into strip
  selection: number | null;
  overlays: OverlayToggles;
  banner: string | null;
}

export function initialViewState(): ViewState {
  return {
    session: null,
    strip: [],
    cursor: -1,
    selection: null,
    overlays: { cuts: true, nodes: true, labels: true, graph: false },
    banner: null,
  };
}

export function withSession(state: ViewState, session: SessionState): ViewState {
  return {
    ...state,
    session,
    strip: [session],
    cursor: 0,
    selection: null,
    banner: null,
  };
}

export function withMutation(state: ViewState, session: SessionState): ViewState {
  const strip = state.strip.slice(0, state.cursor + 1);
  strip.push(session);
  return { ...state, session, strip, cursor: strip.length - 1, selection: null };
}

export function withUndo(state: ViewState, session: SessionState): ViewState {
  const cursor = Math.max(0, state.cursor - 1);
  return { ...state, session, cursor, selection: null };
}

export function withSelection(state: ViewState, vertex: number | null): ViewState {
  if (vertex !== null && state.session && vertex >= state.session.base.vertices.length) {
    return state;
  }
  return { ...state, selection: vertex };
}

export function withBanner(state: ViewState, banner: string | null): ViewState {
  return { ...state, banner };
}

export function toggleOverlay(state: ViewState, key: keyof OverlayToggles): ViewState {
  return { ...state, overlays: { ...state.overlays, [key]: !state.overlays[key] } };
}

export function isFrozen(session: SessionState, vertex: number): boolean {
  return session.frozen !== null && session.frozen === vertex;
}

export function legalOrders(session: SessionState, vertex: number): number[] {
  if (isFrozen(session, vertex)) {
    return [];
  }
  const cut = session.base.cuts[vertex];
  if (!cut) {
    return [];
  }
  return Array.from({ length: cut.nodes }, (_, i) => i + 1);
}

// the staircase walk always mutates the vertex after the frozen one
export function nextAlternatingTarget(session: SessionState): number | null {
  if (session.frozen === null) {
    return null;
  }
  return (session.frozen + 1) % session.base.vertices.length;
}
