"""In-process session store: one lock per session, optional disk persistence.

A session is a preset (or ad-hoc base) plus its mutation history; state is
always reproducible by replaying the history from the start, which is also
how persisted sessions are restored.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from fractions import Fraction

from ..atbd import (
    AlmostToricBase,
    MutationError,
    corner_determinants,
    frozen_corner_ellipsoid,
    mutate,
    redistribute_nodes,
    validate,
)
from ..diophantine import accumulation_point
from ..serialize import base_from_dict, base_to_dict
from ..staircase import PRESETS, ManifoldPreset


class SessionError(ValueError):
    pass


class UnknownSession(SessionError):
    pass


@dataclass
class Session:
    id: str
    preset_name: str | None
    initial: AlmostToricBase
    states: list[AlmostToricBase] = field(default_factory=list)
    history: list[tuple[int, int]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def current(self) -> AlmostToricBase:
        return self.states[-1]

    @property
    def preset(self) -> ManifoldPreset | None:
        return PRESETS.get(self.preset_name) if self.preset_name else None

    def frozen_index(self) -> int | None:
        preset = self.preset
        if preset is None:
            return None
        target = preset.base.vertices[preset.frozen]
        for i, v in enumerate(self.current().vertices):
            if v == target:
                return i
        return None

    def sharp_points(self) -> list[Fraction]:
        """Ellipsoid ratios of every triangular state with its smooth corner."""
        preset = self.preset
        if preset is None:
            return []
        anchor = preset.base.vertices[preset.frozen]
        out = []
        for state in self.states:
            if state.n() != 3:
                continue
            idx = next((i for i, v in enumerate(state.vertices) if v == anchor), None)
            if idx is None or corner_determinants(state)[idx] != 1:
                continue
            a, b = frozen_corner_ellipsoid(state, idx)
            out.append(b / a)
        return out


class SessionStore:
    def __init__(self, persist_dir: str | None = None):
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()
        self.persist_dir = persist_dir or os.environ.get("ATBENCH_SESSION_DIR")
        if self.persist_dir:
            os.makedirs(self.persist_dir, exist_ok=True)
            self._restore_all()

    def create(self, preset_name: str | None = None, base: AlmostToricBase | None = None) -> Session:
        if (preset_name is None) == (base is None):
            raise SessionError("provide exactly one of preset or inline base")
        if preset_name is not None:
            if preset_name not in PRESETS:
                raise SessionError(f"unknown preset {preset_name!r}")
            base = PRESETS[preset_name].base
        report = validate(base)
        if not report.valid:
            raise MutationError(f"initial base is invalid: {report.issues}")
        session = Session(
            id=uuid.uuid4().hex[:12],
            preset_name=preset_name,
            initial=base,
            states=[base],
        )
        with self._registry_lock:
            self._sessions[session.id] = session
        self._persist(session)
        return session

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no session {session_id!r}")
        return session

    def ids(self) -> list[str]:
        with self._registry_lock:
            return sorted(self._sessions)

    def mutate(self, session_id: str, vertex: int, order: int) -> Session:
        session = self.get(session_id)
        with session.lock:
            base = redistribute_nodes(session.current())
            new_base, _ = mutate(base, vertex, order)
            session.states.append(new_base)
            session.history.append((vertex, order))
            self._persist(session)
        return session

    def undo(self, session_id: str) -> Session:
        session = self.get(session_id)
        with session.lock:
            if len(session.states) > 1:
                session.states.pop()
                session.history.pop()
                self._persist(session)
        return session

    def replay_check(self, session_id: str) -> bool:
        """Replaying the history from the initial base reproduces the state."""
        session = self.get(session_id)
        with session.lock:
            base = session.initial
            for vertex, order in session.history:
                base, _ = mutate(redistribute_nodes(base), vertex, order)
            return base == session.current()

    def _persist(self, session: Session):
        if not self.persist_dir:
            return
        doc = {
            "id": session.id,
            "preset": session.preset_name,
            "initial": base_to_dict(session.initial),
            "history": [list(h) for h in session.history],
        }
        path = os.path.join(self.persist_dir, f"{session.id}.json")
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2)

    def _restore_all(self):
        for name in sorted(os.listdir(self.persist_dir)):
            if not name.endswith(".json"):
                continue
            with open(os.path.join(self.persist_dir, name)) as fh:
                doc = json.load(fh)
            base = base_from_dict(doc["initial"])[0]
            session = Session(
                id=doc["id"],
                preset_name=doc.get("preset"),
                initial=base,
                states=[base],
            )
            for vertex, order in doc.get("history", []):
                new_base, _ = mutate(redistribute_nodes(session.current()), vertex, order)
                session.states.append(new_base)
                session.history.append((vertex, order))
            self._sessions[session.id] = session
