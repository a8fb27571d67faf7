"""Deterministic SVG rendering: base diagrams, graph overlays, staircase charts.

Conventions: cuts dashed, nodes drawn as crosses, the frozen vertex ringed,
edge multiplicities labeled unless 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .atbd import AlmostToricBase
from .lattice import Pt
from .staircase import StaircaseTable
from .tropical import TropicalGraph


@dataclass(frozen=True)
class RenderSpec:
    show_cuts: bool = True
    show_nodes: bool = True
    show_labels: bool = True
    frozen: int | None = None
    width: int = 480
    height: int = 480
    margin: float = 36.0


def _fmt(x: float) -> str:
    return f"{x:.4f}".rstrip("0").rstrip(".")


class _Frame:
    def __init__(self, points: list[Pt], spec: RenderSpec):
        xs = [float(p.x) for p in points]
        ys = [float(p.y) for p in points]
        self.min_x, self.max_x = min(xs), max(xs)
        self.min_y, self.max_y = min(ys), max(ys)
        span = max(self.max_x - self.min_x, self.max_y - self.min_y, 1e-9)
        self.scale = (min(spec.width, spec.height) - 2 * spec.margin) / span
        self.spec = spec

    def at(self, p: Pt) -> tuple[float, float]:
        x = self.spec.margin + (float(p.x) - self.min_x) * self.scale
        y = self.spec.height - self.spec.margin - (float(p.y) - self.min_y) * self.scale
        return x, y

    def xy(self, p: Pt) -> str:
        x, y = self.at(p)
        return f"{_fmt(x)},{_fmt(y)}"


def _svg(width: int, height: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _base_body(base: AlmostToricBase, frame: _Frame, spec: RenderSpec) -> list[str]:
    body = []
    pts = " ".join(frame.xy(v) for v in base.vertices)
    body.append(f'<polygon points="{pts}" fill="#eef4ff" stroke="#1f4e9c" stroke-width="2"/>')
    if spec.show_cuts:
        for i in range(base.n()):
            if base.cuts[i].node_count == 0:
                continue
            a, b = base.cut_segment(i)
            (x1, y1), (x2, y2) = frame.at(a), frame.at(b)
            body.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                'stroke="#c03434" stroke-width="1.5" stroke-dasharray="6 4"/>'
            )
    if spec.show_nodes:
        for i in range(base.n()):
            for p in base.node_points(i):
                x, y = frame.at(p)
                r = 4.0
                body.append(
                    f'<path d="M {_fmt(x - r)} {_fmt(y - r)} L {_fmt(x + r)} {_fmt(y + r)} '
                    f'M {_fmt(x - r)} {_fmt(y + r)} L {_fmt(x + r)} {_fmt(y - r)}" '
                    'stroke="#c03434" stroke-width="1.5"/>'
                )
    for i, v in enumerate(base.vertices):
        x, y = frame.at(v)
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.5" fill="#1f4e9c"/>')
        if spec.frozen == i:
            body.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="8" fill="none" '
                'stroke="#1f8a4c" stroke-width="2"/>'
            )
        if spec.show_labels:
            body.append(
                f'<text x="{_fmt(x + 8)}" y="{_fmt(y - 8)}" font-size="11" '
                f'fill="#333">v{i}</text>'
            )
    return body


def render_base(base: AlmostToricBase, spec: RenderSpec = RenderSpec()) -> str:
    frame = _Frame(list(base.vertices), spec)
    return _svg(spec.width, spec.height, _base_body(base, frame, spec))


def render_graph(graph: TropicalGraph, spec: RenderSpec = RenderSpec()) -> str:
    frame = _Frame(list(graph.host.vertices), spec)
    body = _base_body(graph.host, frame, spec)
    for e in graph.edges:
        pts = " ".join(frame.xy(p) for p in e.polyline)
        body.append(
            f'<polyline points="{pts}" fill="none" stroke="#7a2d8c" stroke-width="2"/>'
        )
        if spec.show_labels and e.multiplicity != 1:
            mid = e.polyline[len(e.polyline) // 2]
            x, y = frame.at(mid)
            body.append(
                f'<text x="{_fmt(x + 5)}" y="{_fmt(y - 5)}" font-size="12" '
                f'fill="#7a2d8c">{e.multiplicity}</text>'
            )
    for v in graph.vertices:
        x, y = frame.at(v.position)
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="#7a2d8c"/>')
    return _svg(spec.width, spec.height, body)


def render_staircase_chart(table: StaircaseTable, width: int = 560, height: int = 360) -> str:
    margin = 48.0
    points = [(0, float(table.seed_sharp))] + [
        (row.n, float(row.sharp_point)) for row in table.rows
    ]
    max_n = max(n for n, _ in points)
    top = max(table.accumulation_float, max(v for _, v in points)) * 1.06
    lo = min(v for _, v in points) * 0.9

    def at(n, v):
        x = margin + (n / max(max_n, 1)) * (width - 2 * margin)
        y = height - margin - (v - lo) / max(top - lo, 1e-9) * (height - 2 * margin)
        return x, y

    body = [
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        f'<line x1="{_fmt(margin)}" y1="{_fmt(height - margin)}" x2="{_fmt(width - margin)}" '
        f'y2="{_fmt(height - margin)}" stroke="#555" stroke-width="1"/>',
    ]
    ya = at(0, table.accumulation_float)[1]
    body.append(
        f'<line x1="{_fmt(margin)}" y1="{_fmt(ya)}" x2="{_fmt(width - margin)}" y2="{_fmt(ya)}" '
        'stroke="#1f8a4c" stroke-width="1.5" stroke-dasharray="8 5"/>'
    )
    body.append(
        f'<text x="{_fmt(width - margin + 4)}" y="{_fmt(ya + 4)}" font-size="11" '
        f'fill="#1f8a4c">{table.accumulation_float:.6f}</text>'
    )
    for n, v in points:
        x, y = at(n, v)
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.5" fill="#1f4e9c"/>')
        body.append(
            f'<text x="{_fmt(x)}" y="{_fmt(height - margin + 14)}" font-size="10" '
            f'text-anchor="middle" fill="#555">{n}</text>'
        )
    poly = " ".join(f"{_fmt(at(n, v)[0])},{_fmt(at(n, v)[1])}" for n, v in points)
    body.append(f'<polyline points="{poly}" fill="none" stroke="#1f4e9c" stroke-width="1.2"/>')
    return _svg(width, height, body)
