"""Almost-toric base diagrams: validation, mutation, canonical forms.

A base is a convex rational polygon with per-vertex cut content: a primitive
inward direction, a node count, and node positions along the cut ray.  The
corner condition ties the cut data to the polygon: the cut's shear, raised to
the node count, must rotate the incoming primitive edge direction onto the
outgoing one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    Mat2,
    Pt,
    Vec,
    affine_length,
    basis_completion,
    primitive_of,
    rational_direction,
    shear_matrix,
    wedge,
)

DEFAULT_CUT_FRACTION = Fraction(1, 4)


class MalformedBaseError(ValueError):
    pass


class MutationError(ValueError):
    pass


class IncompatibleCutError(MutationError):
    """Mutation ray exits through a vertex whose cut is not opposite to the ray."""


class CutCrossesRayError(MutationError):
    """A foreign cut segment meets the splitting ray; slide nodes first."""


@dataclass(frozen=True)
class CutContent:
    direction: Vec
    node_count: int
    positions: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.direction.is_primitive():
            raise MalformedBaseError(f"cut direction {self.direction} is not primitive")
        if self.node_count < 0:
            raise MalformedBaseError("negative node count")
        if len(self.positions) != self.node_count:
            raise MalformedBaseError("node positions do not match node count")
        for r in self.positions:
            if r < 0:
                raise MalformedBaseError("negative node position")
        for a, b in zip(self.positions, self.positions[1:]):
            if not a > b:
                raise MalformedBaseError("node positions must be strictly decreasing")

    @property
    def reach(self) -> Fraction:
        """Ray parameter of the outermost node (0 for empty content)."""
        return self.positions[0] if self.positions else Fraction(0)


@dataclass(frozen=True)
class Issue:
    vertex: int | None
    condition: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    issues: tuple[Issue, ...] = ()

    def conditions_failed(self) -> set[str]:
        return {i.condition for i in self.issues}


@dataclass(frozen=True)
class MutationRecord:
    vertex_index: int
    order: int
    sheared_half: str               # always "next": the half containing v_{i+1}
    ray_endpoint: Pt
    shear_center: Pt
    shear_power: Mat2               # linear part applied to the sheared half

    def map_sheared(self, p: Pt) -> Pt:
        return self.shear_center + self.shear_power.apply_pt(p - self.shear_center)


class AlmostToricBase:
    """Convex polygon (counter-clockwise) with one cut content per vertex."""

    def __init__(self, vertices, cuts):
        vertices = tuple(vertices)
        cuts = tuple(cuts)
        if len(vertices) < 3:
            raise MalformedBaseError("a base needs at least 3 vertices")
        if len(cuts) != len(vertices):
            raise MalformedBaseError("one cut content per vertex required")
        self.vertices: tuple[Pt, ...] = vertices
        self.cuts: tuple[CutContent, ...] = cuts

    @classmethod
    def build(cls, vertices, raw_cuts, cut_fraction: Fraction = DEFAULT_CUT_FRACTION):
        """Construct a base, materializing default node positions where absent.

        raw_cuts entries are (direction, node_count) or (direction, node_count,
        positions-or-None).  Defaults put the j-th of n nodes at
        (n - j + 1)/(n + 1) * lambda * cut_fraction, lambda being the exit
        parameter of the cut ray, so nodes hug the vertex and stay disjoint.
        """
        vertices = tuple(vertices)
        if len(vertices) < 3:
            raise MalformedBaseError("a base needs at least 3 vertices")
        out = []
        for i, raw in enumerate(raw_cuts):
            if len(raw) == 2:
                direction, count = raw
                positions = None
            else:
                direction, count, positions = raw
            if positions is None:
                lam, _, _ = ray_exit(vertices, vertices[i], direction)
                positions = tuple(
                    Fraction(count - j + 1, count + 1) * lam * cut_fraction
                    for j in range(1, count + 1)
                )
            else:
                positions = tuple(Fraction(p) for p in positions)
            out.append(CutContent(direction, count, positions))
        return cls(vertices, tuple(out))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlmostToricBase)
            and self.vertices == other.vertices
            and self.cuts == other.cuts
        )

    def __hash__(self):
        return hash((self.vertices, self.cuts))

    def __repr__(self) -> str:
        return f"AlmostToricBase({list(self.vertices)})"

    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[Pt, Pt]:
        return self.vertices[i], self.vertices[(i + 1) % self.n()]

    def area(self) -> Fraction:
        return polygon_area(self.vertices)

    def cut_segment(self, i: int) -> tuple[Pt, Pt]:
        c = self.cuts[i]
        end = self.vertices[i] + c.direction.as_pt().scale(c.reach)
        return self.vertices[i], end

    def node_points(self, i: int) -> tuple[Pt, ...]:
        v = self.vertices[i]
        d = self.cuts[i].direction.as_pt()
        return tuple(v + d.scale(r) for r in self.cuts[i].positions)

    def contains(self, p: Pt, strict: bool = False) -> bool:
        for i in range(self.n()):
            a, b = self.edge(i)
            s = (b - a).cross(p - a)
            if s < 0 or (strict and s == 0):
                return False
        return True


@dataclass(frozen=True)
class RelativeBase:
    """Base plus marked sides and marked cut segments.

    Segment j of a cut runs between its nodes j and j+1, so marking one needs
    at least two nodes on that cut.
    """

    base: AlmostToricBase
    marked_sides: frozenset[int] = frozenset()
    marked_cut_segments: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        n = self.base.n()
        for s in self.marked_sides:
            if not 0 <= s < n:
                raise MalformedBaseError(f"marked side {s} out of range")
        for vertex, segment in self.marked_cut_segments:
            if not 0 <= vertex < n:
                raise MalformedBaseError(f"marked cut at vertex {vertex} out of range")
            if segment < 0 or segment > self.base.cuts[vertex].node_count - 2:
                raise MalformedBaseError(
                    f"cut segment {segment} needs at least {segment + 2} nodes at vertex {vertex}"
                )


def polygon_area(vertices) -> Fraction:
    s = Fraction(0)
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        s += a.cross(b)
    return s / 2


def is_convex_ccw(vertices) -> bool:
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        c = vertices[(i + 2) % n]
        if (b - a).cross(c - b) <= 0:
            return False
    return True


def ray_exit(vertices, origin: Pt, direction: Vec) -> tuple[Fraction, int, Fraction]:
    """Exit of the ray origin + t*direction (t > 0) through the polygon boundary.

    Returns (t, edge_index, s) with the hit at parameter s in [0, 1] along
    edge (v_j, v_{j+1}).  Assumes the ray points into the interior.
    """
    d = direction.as_pt()
    best = None
    n = len(vertices)
    for j in range(n):
        a, b = vertices[j], vertices[(j + 1) % n]
        e = b - a
        den = d.cross(e)
        if den == 0:
            continue
        w = a - origin
        t = w.cross(e) / den
        s = w.cross(d) / den
        if t > 0 and 0 <= s <= 1:
            if best is None or t < best[0]:
                best = (t, j, s)
    if best is None:
        raise MutationError(f"ray from {origin} along {direction} does not exit the polygon")
    return best


def segments_intersect(p1: Pt, p2: Pt, q1: Pt, q2: Pt) -> bool:
    """Closed-segment intersection test, exact; degenerate segments allowed."""
    d1 = p2 - p1
    d2 = q2 - q1
    den = d1.cross(d2)
    if den != 0:
        t = (q1 - p1).cross(d2) / den
        s = (q1 - p1).cross(d1) / den
        return 0 <= t <= 1 and 0 <= s <= 1
    if d1.cross(q1 - p1) != 0 and not d1.is_zero():
        return False
    if d1.is_zero() and d2.is_zero():
        return p1 == q1
    axis = d1 if not d1.is_zero() else d2
    if axis.cross(q1 - p1) != 0:
        return False
    lo1, hi1 = sorted((axis.x * p.x + axis.y * p.y for p in (p1, p2)))
    lo2, hi2 = sorted((axis.x * p.x + axis.y * p.y for p in (q1, q2)))
    return max(lo1, lo2) <= min(hi1, hi2)


def point_on_segment(p: Pt, a: Pt, b: Pt) -> bool:
    if (b - a).cross(p - a) != 0:
        return False
    d = b - a
    if d.is_zero():
        return p == a
    t = (p.x - a.x) / d.x if d.x != 0 else (p.y - a.y) / d.y
    return 0 <= t <= 1


def edge_primitives_at(vertices, i: int) -> tuple[Vec, Vec]:
    """Primitive directions of the two edges leaving vertex i (to next, to prev)."""
    n = len(vertices)
    to_next, _ = rational_direction(vertices[(i + 1) % n] - vertices[i])
    to_prev, _ = rational_direction(vertices[(i - 1) % n] - vertices[i])
    return to_next, to_prev


def validate(base: AlmostToricBase) -> ValidationReport:
    """Check convexity, the corner condition, and cut containment/disjointness.

    The corner condition is checked on primitive edge directions: with M the
    shear of cut i, M^{n_i} must send the incoming primitive direction to the
    outgoing one.  (After a mutation the two incident affine lengths differ,
    so the raw edge vectors cannot be compared.)
    """
    issues: list[Issue] = []
    verts = base.vertices
    n = base.n()

    if not is_convex_ccw(verts):
        issues.append(Issue(None, "convexity", "vertices are not in strictly convex CCW position"))
        return ValidationReport(False, tuple(issues))

    for i in range(n):
        v = verts[i]
        cut = base.cuts[i]
        to_next, to_prev = edge_primitives_at(verts, i)
        # cut points strictly into the corner cone
        if not (wedge(to_next, cut.direction) > 0 and wedge(cut.direction, to_prev) > 0):
            issues.append(Issue(i, "cut-direction", f"cut {cut.direction} does not point into the corner"))
        # corner condition
        incoming, _ = rational_direction(verts[i] - verts[(i - 1) % n])
        m = shear_matrix(cut.direction) ** cut.node_count
        if m.apply(incoming) != to_next:
            issues.append(
                Issue(i, "consistency", f"shear^{cut.node_count} does not rotate edge {incoming} onto {to_next}")
            )
        # containment: nodes strictly inside; outermost node before the ray exits
        if cut.node_count > 0:
            try:
                lam, _, _ = ray_exit(verts, v, cut.direction)
            except MutationError:
                issues.append(Issue(i, "containment", "cut ray does not enter the polygon"))
                continue
            if cut.reach >= lam:
                issues.append(Issue(i, "containment", "cut segment reaches the boundary"))
            for p in base.node_points(i):
                if p != v and not base.contains(p, strict=True):
                    issues.append(Issue(i, "containment", f"node at {p} is not interior"))

    # pairwise disjointness of cut segments
    for i in range(n):
        if base.cuts[i].node_count == 0:
            continue
        a1, a2 = base.cut_segment(i)
        for j in range(i + 1, n):
            if base.cuts[j].node_count == 0:
                continue
            b1, b2 = base.cut_segment(j)
            if segments_intersect(a1, a2, b1, b2):
                issues.append(Issue(i, "disjointness", f"cut segments at vertices {i} and {j} meet"))

    return ValidationReport(not issues, tuple(issues))


def corner_determinants(base: AlmostToricBase) -> list[int]:
    """|det| of the primitive outgoing edge pairs, one entry per vertex."""
    out = []
    for i in range(base.n()):
        to_next, to_prev = edge_primitives_at(base.vertices, i)
        out.append(abs(wedge(to_next, to_prev)))
    return out


def mutate(base: AlmostToricBase, i: int, k: int) -> tuple[AlmostToricBase, MutationRecord]:
    """Mutate at vertex i with order k: split along the cut ray, shear one half.

    The half containing v_{i+1} receives the inverse shear power; node
    positions along the ray are preserved, with the k outermost nodes handed
    to the new vertex at the far end of the ray.
    """
    n = base.n()
    if not 0 <= i < n:
        raise MutationError(f"vertex index {i} out of range")
    cut = base.cuts[i]
    if not 1 <= k <= cut.node_count:
        raise MutationError(f"order {k} out of range 1..{cut.node_count}")

    verts = base.vertices
    v = verts[i]
    c = cut.direction
    lam, j_edge, s = ray_exit(verts, v, c)
    tilde = v + c.as_pt().scale(lam)

    hits_vertex = None
    if s == 0:
        hits_vertex = j_edge
    elif s == 1:
        hits_vertex = (j_edge + 1) % n
    if hits_vertex == i:
        raise MutationError("cut ray exits at its own vertex")
    if hits_vertex is not None and base.cuts[hits_vertex].direction != -c:
        raise IncompatibleCutError(
            f"ray lands on vertex {hits_vertex} whose cut {base.cuts[hits_vertex].direction} is not {-c}"
        )

    # no other cut segment may cross the splitting segment
    for t in range(n):
        if t == i or t == hits_vertex or base.cuts[t].node_count == 0:
            continue
        s1, s2 = base.cut_segment(t)
        if segments_intersect(v, tilde, s1, s2):
            raise CutCrossesRayError(f"cut segment at vertex {t} crosses the mutation ray")

    m_inv = shear_matrix(c) ** (-k)

    def shear_pt(p: Pt) -> Pt:
        return v + m_inv.apply_pt(p - v)

    # walk the sheared half: i, i+1, ..., up to the landing edge/vertex
    stop = hits_vertex if hits_vertex is not None else j_edge
    sheared_idx = []
    t = i
    while True:
        sheared_idx.append(t)
        if t == stop:
            break
        t = (t + 1) % n

    new_vertices: list[Pt] = []
    new_cuts: list[CutContent] = []

    keep_r = cut.positions[k:]               # n_i - k nodes nearest the vertex
    moved_r = tuple(sorted((lam - r for r in cut.positions[:k]), reverse=True))

    def push(p: Pt, cc: CutContent):
        new_vertices.append(p)
        new_cuts.append(cc)

    # vertex i survives only with positive residual content
    if k < cut.node_count:
        push(v, CutContent(c, cut.node_count - k, keep_r))

    for t in sheared_idx[1:]:
        p = shear_pt(verts[t])
        old = base.cuts[t]
        if t == hits_vertex:
            merged = moved_r + old.positions
            push(p, CutContent(old.direction, old.node_count + k, merged))
        else:
            push(p, CutContent(m_inv.apply(old.direction), old.node_count, old.positions))

    if hits_vertex is None:
        push(tilde, CutContent(-c, k, moved_r))

    # untouched half: from the landing edge back around to v_{i-1}
    t = (stop + 1) % n
    while t != i:
        push(verts[t], base.cuts[t])
        t = (t + 1) % n

    # drop straightened corners (full mutation flattens vertex i)
    final_v: list[Pt] = []
    final_c: list[CutContent] = []
    m = len(new_vertices)
    for idx in range(m):
        a = new_vertices[(idx - 1) % m]
        b = new_vertices[idx]
        d = new_vertices[(idx + 1) % m]
        if (b - a).cross(d - b) == 0:
            if new_cuts[idx].node_count > 0:
                raise MutationError("mutation flattens a vertex that still carries nodes")
            continue
        final_v.append(b)
        final_c.append(new_cuts[idx])

    result = AlmostToricBase(tuple(final_v), tuple(final_c))
    record = MutationRecord(
        vertex_index=i,
        order=k,
        sheared_half="next",
        ray_endpoint=tilde,
        shear_center=v,
        shear_power=m_inv,
    )
    return result, record


def redistribute_nodes(base: AlmostToricBase, cut_fraction: Fraction = DEFAULT_CUT_FRACTION) -> AlmostToricBase:
    """Slide every node to the default near-vertex position (a nodal slide)."""
    return AlmostToricBase.build(
        base.vertices,
        [(c.direction, c.node_count, None) for c in base.cuts],
        cut_fraction=cut_fraction,
    )


def canonical_form(base: AlmostToricBase) -> AlmostToricBase:
    """Distinguished representative modulo integer translations and SL(2, Z).

    For every starting vertex, rotate its outgoing edge to (1, 0), fix the
    residual horizontal shear by pinning the topmost vertex's x-coordinate
    into [0, y_max), translate the start into [0, 1)^2, then take the
    lexicographically smallest serialized candidate.
    """
    n = base.n()
    best_key = None
    best = None
    for start in range(n):
        e, _ = rational_direction(base.vertices[(start + 1) % n] - base.vertices[start])
        u0 = basis_completion(e)
        verts = [u0.apply_pt(base.vertices[(start + t) % n]) for t in range(n)]
        rel = [p - verts[0] for p in verts]
        y_max = max(p.y for p in rel)
        if y_max > 0:
            x_top = next(p.x for p in rel if p.y == y_max)
            m = -(x_top // y_max)          # unique m with x + m*y_max in [0, y_max)
        else:
            m = 0
        sh = Mat2(1, int(m), 0, 1)
        u = sh @ u0
        verts = [u.apply_pt(base.vertices[(start + t) % n]) for t in range(n)]
        shift = Pt(Fraction(-(verts[0].x // 1)), Fraction(-(verts[0].y // 1)))
        verts = [p + shift for p in verts]
        cuts = []
        for t in range(n):
            old = base.cuts[(start + t) % n]
            d, g = primitive_of(u.apply(old.direction))
            cuts.append(CutContent(d, old.node_count, old.positions))
        candidate = AlmostToricBase(tuple(verts), tuple(cuts))
        key = _canonical_key(candidate)
        if best_key is None or key < best_key:
            best_key = key
            best = candidate
    return best


def _canonical_key(base: AlmostToricBase):
    return (
        tuple((p.x, p.y) for p in base.vertices),
        tuple((c.direction.x, c.direction.y, c.node_count, c.positions) for c in base.cuts),
    )


def frozen_corner_ellipsoid(base: AlmostToricBase, v_f: int) -> tuple[Fraction, Fraction]:
    """Affine lengths (a, b), a <= b, of the two sides at a smooth triangle corner."""
    if base.n() != 3:
        raise MalformedBaseError("ellipsoid extraction needs a triangle")
    dets = corner_determinants(base)
    if dets[v_f] != 1:
        raise MalformedBaseError(f"corner {v_f} has determinant {dets[v_f]}, not 1")
    v = base.vertices[v_f]
    a = affine_length(v, base.vertices[(v_f + 1) % 3])
    b = affine_length(v, base.vertices[(v_f - 1) % 3])
    return (a, b) if a <= b else (b, a)
