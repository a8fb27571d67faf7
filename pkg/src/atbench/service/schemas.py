"""Pydantic request/response models for the session API.

Rationals cross the wire as [numerator, denominator] string pairs, matching
the file format; floats appear only in chart payloads.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

RationalPair = list[str]             # [numerator, denominator]
PointPayload = list[RationalPair]    # [x, y]


class CutPayload(BaseModel):
    direction: list[int]
    nodes: int
    positions: list[RationalPair]


class BasePayload(BaseModel):
    vertices: list[PointPayload]
    cuts: list[CutPayload]
    marked_sides: list[int] = Field(default_factory=list)
    marked_cut_segments: list[list[int]] = Field(default_factory=list)


class CreateSessionRequest(BaseModel):
    preset: str | None = None
    base: BasePayload | None = None


class MutationRequest(BaseModel):
    vertex: int
    order: int = 1


class HistoryEntry(BaseModel):
    vertex: int
    order: int


class SessionState(BaseModel):
    id: str
    preset: str | None
    base: BasePayload
    history: list[HistoryEntry]
    frozen: int | None
    corner_determinants: list[int]
    triple: list[int] | None
    sharp_points: list[RationalPair]
    accumulation: float | None
    valid: bool


class StaircasePoint(BaseModel):
    n: int
    sharp: RationalPair
    sharp_float: float
    bound: float


class StaircasePayload(BaseModel):
    points: list[StaircasePoint]
    accumulation: float | None


class ValidationIssue(BaseModel):
    vertex: int | None
    condition: str
    message: str


class ValidationPayload(BaseModel):
    valid: bool
    issues: list[ValidationIssue]


class GraphCheckRequest(BaseModel):
    graph: dict[str, Any]


class ErrorPayload(BaseModel):
    error: str
    kind: Literal["not-found", "illegal-mutation", "malformed", "conflict"]
    issues: list[ValidationIssue] = Field(default_factory=list)
