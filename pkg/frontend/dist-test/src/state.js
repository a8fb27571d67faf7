export function initialViewState() {
    return {
        session: null,
        strip: [],
        cursor: -1,
        selection: null,
        overlays: { cuts: true, nodes: true, labels: true, graph: false },
        banner: null,
    };
}
export function withSession(state, session) {
    return {
        ...state,
        session,
        strip: [session],
        cursor: 0,
        selection: null,
        banner: null,
    };
}
export function withMutation(state, session) {
    const strip = state.strip.slice(0, state.cursor + 1);
    strip.push(session);
    return { ...state, session, strip, cursor: strip.length - 1, selection: null };
}
export function withUndo(state, session) {
    const cursor = Math.max(0, state.cursor - 1);
    return { ...state, session, cursor, selection: null };
}
export function withSelection(state, vertex) {
    if (vertex !== null && state.session && vertex >= state.session.base.vertices.length) {
        return state;
    }
    return { ...state, selection: vertex };
}
export function withBanner(state, banner) {
    return { ...state, banner };
}
export function toggleOverlay(state, key) {
    return { ...state, overlays: { ...state.overlays, [key]: !state.overlays[key] } };
}
export function isFrozen(session, vertex) {
    return session.frozen !== null && session.frozen === vertex;
}
export function legalOrders(session, vertex) {
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
export function nextAlternatingTarget(session) {
    if (session.frozen === null) {
        return null;
    }
    return (session.frozen + 1) % session.base.vertices.length;
}
