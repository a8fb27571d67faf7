"""Dimer models on the torus from three balanced families of straight cycles.

Given primitive classes w1, w2, w3 with m1 w1 + m2 w2 + m3 w3 = 0, straight
representatives can be chosen so every crossing is a triple point and the
complement is a union of 2*B*m1 triangles.  The dimer lives on this
triangulation: one vertex per triangle, one edge per arc between consecutive
crossings (the arc count equals the pairwise crossing count of the nudged
cycles, 3*B*m1).  The triangulation two-colors, the zigzag paths of the
resulting graph run along the original cycles, and everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .lattice import Mat2, Pt, Vec, basis_completion, primitive_of, wedge


class DimerError(ValueError):
    pass


BLACK = "black"
WHITE = "white"


@dataclass(frozen=True)
class StraightCycle:
    family: int
    klass: Vec
    offset: Pt            # a point of the cycle in [0,1)^2


@dataclass(frozen=True)
class DimerFace:
    corners: tuple[Pt, ...]    # lifted triangle, counter-clockwise
    color: str

    def centroid(self) -> Pt:
        xs = sum((c.x for c in self.corners), Fraction(0)) / len(self.corners)
        ys = sum((c.y for c in self.corners), Fraction(0)) / len(self.corners)
        return Pt(xs, ys)


@dataclass(frozen=True)
class DimerEdge:
    black: int
    white: int
    family: int                # the cycle family whose arc the edge crosses
    anchor: Pt                 # torus midpoint of that arc


@dataclass(frozen=True)
class DimerModel:
    classes: tuple[tuple[int, Vec], ...]      # input (multiplicity, class)
    change_of_basis: Mat2                     # sends input w1 to (1, 0)
    straight_cycles: tuple[StraightCycle, ...]
    vertices: tuple[tuple[Pt, str], ...]      # (position on torus, color)
    faces: tuple[DimerFace, ...]
    edges: tuple[DimerEdge, ...]
    zigzags: tuple[Vec, ...]                  # classes in the input basis

    def is_bipartite(self) -> bool:
        return all(
            self.faces[e.black].color == BLACK and self.faces[e.white].color == WHITE
            for e in self.edges
        )

    def zigzag_classes(self) -> list[Vec]:
        return list(self.zigzags)


def _mod1(x: Fraction) -> Fraction:
    return x - (x // 1)


def _torus(p: Pt) -> Pt:
    return Pt(_mod1(p.x), _mod1(p.y))


def _angle_cmp(a: Vec, b: Vec) -> int:
    def half(v: Vec) -> int:
        return 0 if (v.y > 0 or (v.y == 0 and v.x > 0)) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    w = wedge(a, b)
    if w > 0:
        return -1
    if w < 0:
        return 1
    return 0


def _int_dir(d) -> tuple[int, int]:
    den = d.x.denominator * d.y.denominator
    return (int(d.x * den), int(d.y * den))


def _shoelace(corners) -> Fraction:
    s = Fraction(0)
    n = len(corners)
    for i in range(n):
        a, b = corners[i], corners[(i + 1) % n]
        s += a.cross(b)
    return s / 2


class _Arrangement:
    """Exact arrangement of straight cycles on the unit torus."""

    def __init__(self, cycles):
        self.cycles = cycles
        self._crossings()
        self._split_arcs()
        self._trace()

    def _crossings(self):
        # two primitive cycles meet in |det| points; the parameters on the
        # first cycle form the progression ((d ^ w_j) + n) / det
        points = {}
        n = len(self.cycles)
        for i in range(n):
            for j in range(i + 1, n):
                ci, cj = self.cycles[i], self.cycles[j]
                det = wedge(ci.klass, cj.klass)
                if det == 0:
                    continue
                d = cj.offset - ci.offset
                base = d.cross(cj.klass.as_pt())
                for k in range(abs(det)):
                    s = _mod1((base + k) / det)
                    p = _torus(ci.offset + ci.klass.as_pt().scale(s))
                    points.setdefault(p, set()).update((i, j))
        self.crossing_ids = {}
        self.crossing_members = []
        for p in sorted(points, key=lambda q: (q.x, q.y)):
            self.crossing_ids[p] = len(self.crossing_ids)
            self.crossing_members.append(points[p])
        self.point_of = {v: p for p, v in self.crossing_ids.items()}

    def _parameter(self, c, p) -> Fraction:
        u = basis_completion(c.klass)
        d = u.apply_pt(p - c.offset)
        if d.y.denominator != 1:
            raise DimerError(f"point {p} is not on cycle {c}")
        return _mod1(d.x)

    def _split_arcs(self):
        self.arcs = {}
        aid = 0
        for i, c in enumerate(self.cycles):
            hits = []
            for p, v in self.crossing_ids.items():
                if i in self.crossing_members[v]:
                    hits.append((self._parameter(c, p), p))
            hits.sort()
            if not hits:
                raise DimerError("a cycle misses every crossing")
            w = c.klass.as_pt()
            k = len(hits)
            for idx in range(k):
                s0, p0 = hits[idx]
                s1, p1 = hits[(idx + 1) % k]
                if (idx + 1) % k == 0 or s1 <= s0:
                    s1 = s1 + 1
                self.arcs[aid] = (
                    c.family,
                    c.offset + w.scale(s0),
                    c.offset + w.scale(s1),
                    self.crossing_ids[p0],
                    self.crossing_ids[p1],
                )
                aid += 1

    def _trace(self):
        halfedges = {}
        leaving = {}
        for aid, (fam, start, end, v0, v1) in self.arcs.items():
            dvec, _ = primitive_of(Vec(*_int_dir(end - start)))
            halfedges[(aid, 1)] = (v0, v1, start, end, dvec, fam)
            halfedges[(aid, -1)] = (v1, v0, end, start, -dvec, fam)
            leaving.setdefault(v0, []).append((dvec, (aid, 1)))
            leaving.setdefault(v1, []).append((-dvec, (aid, -1)))
        for lst in leaving.values():
            lst.sort(key=cmp_to_key(lambda a, b: _angle_cmp(a[0], b[0])))

        next_he = {}
        for h, (v0, v1, start, end, dvec, fam) in halfedges.items():
            ring = leaving[v1]
            idx = next(i for i, (d, _) in enumerate(ring) if d == -dvec)
            next_he[h] = ring[(idx - 1) % len(ring)][1]

        self.faces = []
        self.side_of = {}
        self.side_lifts = {}
        visited = set()
        for h0 in halfedges:
            if h0 in visited:
                continue
            corners, fams, signs = [], [], []
            h = h0
            offset = Pt(Fraction(0), Fraction(0))
            guard = 0
            while True:
                visited.add(h)
                v0, v1, start, end, dvec, fam = halfedges[h]
                start = start + offset
                end = end + offset
                fid = len(self.faces)
                self.side_of[h] = (fid, len(corners))
                self.side_lifts[h] = (start, end)
                corners.append(start)
                fams.append(fam)
                signs.append(h[1])
                nxt = next_he[h]
                nstart = halfedges[nxt][2]
                delta = end - nstart
                if delta.x.denominator != 1 or delta.y.denominator != 1:
                    raise DimerError("face tracing lost the lift")
                offset = delta
                h = nxt
                guard += 1
                if guard > 100000:
                    raise DimerError("runaway face trace")
                if h == h0:
                    break
            area = _shoelace(corners)
            if area <= 0:
                raise DimerError("face traced with non-positive area")
            self.faces.append(
                {"corners": corners, "families": fams, "signs": signs, "area": area}
            )

    def total_area(self) -> Fraction:
        return sum(f["area"] for f in self.faces)


def build_dimer(m1: int, w1: Vec, m2: int, w2: Vec, m3: int, w3: Vec) -> DimerModel:
    """Dimer with zigzag paths m_j straight cycles in classes w_j."""
    ms = (m1, m2, m3)
    ws = (w1, w2, w3)
    for m in ms:
        if m < 1:
            raise DimerError("multiplicities must be positive")
    for w in ws:
        if not w.is_primitive():
            raise DimerError(f"class {w} is not primitive")
    if not (w1 * m1 + w2 * m2 + w3 * m3).is_zero():
        raise DimerError("classes are not balanced")
    for a, b in ((w1, w2), (w1, w3), (w2, w3)):
        if wedge(a, b) == 0:
            raise DimerError("parallel classes do not span a dimer")

    u = basis_completion(w1)
    v1, v2, v3 = u.apply(w1), u.apply(w2), u.apply(w3)
    b_count = abs(m2 * v2.y)
    if b_count != abs(m3 * v3.y):
        raise DimerError("balancing failed after the change of basis")

    cycles = []
    for k in range(m1):
        cycles.append(StraightCycle(0, v1, Pt(Fraction(0), Fraction(k, m1))))
    for t in range(m2):
        cycles.append(StraightCycle(1, v2, Pt(Fraction(t, b_count), Fraction(0))))
    for t in range(m3):
        cycles.append(StraightCycle(2, v3, Pt(Fraction(t, b_count), Fraction(0))))

    arr = _Arrangement(cycles)
    n_triple = b_count * m1
    if len(arr.crossing_ids) != n_triple:
        raise DimerError("arrangement does not close into triple points")
    if any(len(m) != 3 for m in arr.crossing_members):
        raise DimerError("a crossing is not a triple point")
    if len(arr.faces) != 2 * n_triple or any(len(f["corners"]) != 3 for f in arr.faces):
        raise DimerError("arrangement is not a triangulation")
    if arr.total_area() != 1:
        raise DimerError("faces do not tile the torus")

    raw_edges = []
    for aid in arr.arcs:
        f_pos, s_pos = arr.side_of[(aid, 1)]
        f_neg, s_neg = arr.side_of[(aid, -1)]
        if f_pos == f_neg:
            raise DimerError("an arc bounds the same face on both sides")
        raw_edges.append((aid, f_pos, s_pos, f_neg, s_neg))

    color = {}
    adj = {i: [] for i in range(len(arr.faces))}
    for aid, f1, s1, f2, s2 in raw_edges:
        adj[f1].append(f2)
        adj[f2].append(f1)
    for root in range(len(arr.faces)):
        if root in color:
            continue
        color[root] = BLACK
        stack = [root]
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                want = WHITE if color[cur] == BLACK else BLACK
                if nxt not in color:
                    color[nxt] = want
                    stack.append(nxt)
                elif color[nxt] != want:
                    raise DimerError("triangulation is not two-colorable")

    faces = tuple(
        DimerFace(tuple(f["corners"]), color[i]) for i, f in enumerate(arr.faces)
    )

    edges = []
    oriented = []
    for aid, f1, s1, f2, s2 in raw_edges:
        fam, start, end, _, _ = arr.arcs[aid]
        anchor = _torus(Pt((start.x + end.x) / 2, (start.y + end.y) / 2))
        if color[f1] == BLACK:
            oriented.append((aid, f1, s1, f2, s2))
            edges.append(DimerEdge(f1, f2, fam, anchor))
        else:
            oriented.append((aid, f2, s2, f1, s1))
            edges.append(DimerEdge(f2, f1, fam, anchor))

    zigzags = _zigzag_classes(arr, oriented, u)

    vertices = tuple((_torus(f.centroid()), f.color) for f in faces)
    model = DimerModel(
        classes=tuple(zip(ms, ws)),
        change_of_basis=u,
        straight_cycles=tuple(cycles),
        vertices=vertices,
        faces=faces,
        edges=tuple(edges),
        zigzags=tuple(zigzags),
    )
    if not model.is_bipartite():
        raise DimerError("constructed dimer is not bipartite")
    return model


def _zigzag_classes(arr: _Arrangement, oriented, u: Mat2):
    """Independent zigzag extraction: walk the graph, sum lifted glue steps."""

    def side_mid(aid, fid):
        sign = 1 if arr.side_of[(aid, 1)][0] == fid else -1
        a, b = arr.side_lifts[(aid, sign)]
        return Pt((a.x + b.x) / 2, (a.y + b.y) / 2)

    ring = {}
    for ei, (aid, bf, bs, wf, ws_) in enumerate(oriented):
        ring.setdefault(bf, []).append(ei)
        ring.setdefault(wf, []).append(ei)
    for fid, lst in ring.items():

        def key(ei):
            aid, bf, bs, wf, ws_ = oriented[ei]
            return bs if bf == fid else ws_

        lst.sort(key=key)

    black_of = {ei: e[1] for ei, e in enumerate(oriented)}
    white_of = {ei: e[3] for ei, e in enumerate(oriented)}

    def glue(ei) -> Pt:
        aid, bf, bs, wf, ws_ = oriented[ei]
        return side_mid(aid, bf) - side_mid(aid, wf)

    classes = []
    visited = set()
    for start in range(len(oriented)):
        for d0 in (1, -1):
            if (start, d0) in visited:
                continue
            total = Pt(Fraction(0), Fraction(0))
            e, d = start, d0
            while (e, d) not in visited:
                visited.add((e, d))
                total = total + (glue(e).scale(-1) if d == 1 else glue(e))
                arrive = white_of[e] if d == 1 else black_of[e]
                r = ring[arrive]
                idx = r.index(e)
                turn = -1 if arrive == white_of[e] else 1
                e = r[(idx + turn) % len(r)]
                d = 1 if black_of[e] == arrive else -1
            if total.x.denominator != 1 or total.y.denominator != 1:
                raise DimerError("zigzag class is not integral")
            cls = Vec(int(total.x), int(total.y))
            if not cls.is_zero():
                classes.append(u.inverse().apply(cls))
    return classes
