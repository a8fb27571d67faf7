"""FastAPI application: sessions, mutations, rendering, staircase data."""

from __future__ import annotations

import math
from fractions import Fraction

from fastapi import FastAPI, Query, Response
from fastapi.responses import JSONResponse

from ..atbd import MutationError, corner_determinants, validate
from ..diophantine import accumulation_point
from ..render import RenderSpec, render_base, render_graph
from ..serialize import FormatError, base_from_dict, base_to_dict, graph_from_dict, rational_to_json
from ..staircase import PRESETS, volume_lower_bound
from ..tropical import validate_stc
from . import schemas
from .sessions import SessionError, SessionStore, UnknownSession


def _error(status: int, kind: str, message: str, issues=()) -> JSONResponse:
    payload = schemas.ErrorPayload(
        error=message,
        kind=kind,
        issues=[
            schemas.ValidationIssue(vertex=i.vertex, condition=i.condition, message=i.message)
            for i in issues
        ],
    )
    return JSONResponse(status_code=status, content=payload.model_dump())


def _session_state(session) -> schemas.SessionState:
    base = session.current()
    preset = session.preset
    report = validate(base)
    sharp = session.sharp_points()
    accumulation = float(accumulation_point(preset.markov)[0]) if preset else None
    triple = None
    if preset is not None:
        from ..staircase import staircase_sequence

        try:
            steps = staircase_sequence(preset, len(session.history))
            if steps[-1].base == base:
                triple = list(steps[-1].triple)
        except Exception:
            triple = None
    return schemas.SessionState(
        id=session.id,
        preset=session.preset_name,
        base=schemas.BasePayload(**base_to_dict(base)),
        history=[schemas.HistoryEntry(vertex=v, order=k) for v, k in session.history],
        frozen=session.frozen_index(),
        corner_determinants=corner_determinants(base),
        triple=triple,
        sharp_points=[rational_to_json(s) for s in sharp],
        accumulation=accumulation,
        valid=report.valid,
    )


def create_app(store: SessionStore | None = None) -> FastAPI:
    app = FastAPI(title="atbench", version="0.1.0")
    app.state.store = store or SessionStore()

    def sessions() -> SessionStore:
        return app.state.store

    @app.get("/presets")
    def list_presets():
        out = []
        for name, preset in PRESETS.items():
            surd, acc = preset.accumulation()
            out.append(
                {
                    "name": name,
                    "label": preset.label,
                    "seed": list(preset.seed),
                    "equation": {
                        "coefficients": list(preset.markov.coefficients),
                        "factor": preset.markov.m,
                    },
                    "accumulation": acc,
                }
            )
        return out

    @app.post("/sessions", status_code=201)
    def create_session(req: schemas.CreateSessionRequest):
        try:
            base = None
            if req.base is not None:
                base = base_from_dict(req.base.model_dump())[0]
            session = sessions().create(req.preset, base)
        except (SessionError, FormatError, MutationError) as exc:
            return _error(422, "malformed", str(exc))
        return _session_state(session)

    @app.get("/sessions")
    def list_sessions():
        return {"sessions": sessions().ids()}

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        try:
            return _session_state(sessions().get(sid))
        except UnknownSession as exc:
            return _error(404, "not-found", str(exc))

    @app.post("/sessions/{sid}/mutate")
    def mutate_session(sid: str, req: schemas.MutationRequest):
        try:
            store = sessions()
            session = store.get(sid)
            base = session.current()
            if not 0 <= req.vertex < base.n():
                return _error(422, "illegal-mutation", f"vertex {req.vertex} out of range")
            report = validate(base)
            if not report.valid:
                return _error(422, "illegal-mutation", "current base is invalid", report.issues)
            preset = session.preset
            if preset is not None:
                frozen = session.frozen_index()
                if frozen is not None and req.vertex == frozen:
                    return _error(422, "illegal-mutation", "the frozen vertex is never mutated")
            if not 1 <= req.order <= base.cuts[req.vertex].node_count:
                return _error(
                    422,
                    "illegal-mutation",
                    f"order out of range 1..{base.cuts[req.vertex].node_count}",
                )
            session = store.mutate(sid, req.vertex, req.order)
        except UnknownSession as exc:
            return _error(404, "not-found", str(exc))
        except MutationError as exc:
            return _error(422, "illegal-mutation", str(exc))
        return _session_state(session)

    @app.post("/sessions/{sid}/undo")
    def undo_session(sid: str):
        try:
            return _session_state(sessions().undo(sid))
        except UnknownSession as exc:
            return _error(404, "not-found", str(exc))

    @app.get("/sessions/{sid}/render")
    def render_session(sid: str, what: str = Query("atbd")):
        try:
            session = sessions().get(sid)
        except UnknownSession as exc:
            return _error(404, "not-found", str(exc))
        if what == "atbd":
            spec = RenderSpec(frozen=session.frozen_index())
            svg = render_base(session.current(), spec)
        elif what == "staircase-chart":
            preset = session.preset
            if preset is None:
                return _error(422, "malformed", "chart rendering needs a preset session")
            from ..render import render_staircase_chart
            from ..staircase import staircase_table

            svg = render_staircase_chart(staircase_table(preset, len(session.history)))
        else:
            return _error(422, "malformed", f"unknown render target {what!r}")
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/sessions/{sid}/staircase")
    def staircase_session(sid: str):
        try:
            session = sessions().get(sid)
        except UnknownSession as exc:
            return _error(404, "not-found", str(exc))
        preset = session.preset
        accumulation = float(accumulation_point(preset.markov)[0]) if preset else None
        volume = math.pi ** 2 * float(session.initial.area())
        points = []
        for n, s in enumerate(session.sharp_points()):
            points.append(
                schemas.StaircasePoint(
                    n=n,
                    sharp=rational_to_json(s),
                    sharp_float=float(s),
                    bound=volume_lower_bound(float(s), volume),
                )
            )
        return schemas.StaircasePayload(points=points, accumulation=accumulation)

    @app.post("/sessions/{sid}/stc")
    def check_graph(sid: str, req: schemas.GraphCheckRequest):
        try:
            sessions().get(sid)
            graph = graph_from_dict(req.graph)
        except UnknownSession as exc:
            return _error(404, "not-found", str(exc))
        except FormatError as exc:
            return _error(422, "malformed", str(exc))
        report = validate_stc(graph)
        return schemas.ValidationPayload(
            valid=report.valid,
            issues=[
                schemas.ValidationIssue(vertex=i.vertex, condition=i.condition, message=i.message)
                for i in report.issues
            ],
        )

    return app
