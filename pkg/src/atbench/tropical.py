"""Tropical curve diagrams on almost-toric bases.

A diagram is an embedded decorated graph: univalent leaves end on the
boundary or on nodes, bivalent vertices bend across cuts picking up the cut
monodromy, trivalent interior vertices balance the weighted classes.  The
module also carries the slope bookkeeping of the edge-neighborhood tripods
and the integer certificates for chains of curves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .atbd import (
    AlmostToricBase,
    CutContent,
    Issue,
    ValidationReport,
    corner_determinants,
    point_on_segment,
    ray_exit,
    segments_intersect,
    validate as validate_base,
)
from .diophantine import MarkovConfig, Triple, is_solution
from .lattice import Mat2, Pt, Vec, basis_completion, dot, primitive_of, pt, rational_direction, shear_matrix, wedge


class TropicalError(ValueError):
    pass


BOUNDARY = "boundary"
BENDING = "bending"
INTERIOR = "interior"


@dataclass(frozen=True)
class SideAttachment:
    side: int


@dataclass(frozen=True)
class NodeAttachment:
    vertex: int
    node: int


@dataclass(frozen=True)
class CutAttachment:
    vertex: int


@dataclass(frozen=True)
class TropicalVertex:
    kind: str
    position: Pt
    attachment: SideAttachment | NodeAttachment | CutAttachment | None = None


@dataclass(frozen=True)
class TropicalEdge:
    tail: int
    head: int
    polyline: tuple[Pt, ...]
    klass: Vec
    multiplicity: int


@dataclass(frozen=True)
class TropicalGraph:
    host: AlmostToricBase
    vertices: tuple[TropicalVertex, ...]
    edges: tuple[TropicalEdge, ...]

    def incident(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in (e.tail, e.head)]


def _seg_interior_hit(a: Pt, b: Pt, c: Pt, d: Pt) -> Pt | None:
    """Intersection point of segments [a,b], [c,d] if it is a single point."""
    d1 = b - a
    d2 = d - c
    den = d1.cross(d2)
    if den == 0:
        return None
    t = (c - a).cross(d2) / den
    s = (c - a).cross(d1) / den
    if 0 <= t <= 1 and 0 <= s <= 1:
        return a + d1.scale(t)
    return None


def _transpose_inverse(m: Mat2) -> Mat2:
    return Mat2(m.a, m.c, m.b, m.d).inverse()


def bending_monodromy(host: AlmostToricBase, cut_index: int, position: Pt) -> Mat2:
    """Monodromy picked up crossing the cut at the given point, CCW convention.

    Crossing at ray parameter t passes the branch cuts of every node strictly
    farther out than t.
    """
    v = host.vertices[cut_index]
    cut = host.cuts[cut_index]
    d = cut.direction.as_pt()
    rel = position - v
    t = rel.x / d.x if d.x != 0 else rel.y / d.y
    nu = sum(1 for r in cut.positions if r > t)
    return shear_matrix(cut.direction) ** nu


def validate_stc(graph: TropicalGraph) -> ValidationReport:
    """Check the nine diagram conditions; malformed graphs are reported apart."""
    issues: list[Issue] = []
    host = graph.host
    base_report = validate_base(host)
    if not base_report.valid:
        return ValidationReport(False, (Issue(None, "host", "host base is invalid"),) + base_report.issues)

    nverts = len(graph.vertices)
    for ei, e in enumerate(graph.edges):
        if not (0 <= e.tail < nverts and 0 <= e.head < nverts):
            issues.append(Issue(ei, "malformed", "edge endpoint out of range"))
            continue
        if len(e.polyline) < 2:
            issues.append(Issue(ei, "malformed", "polyline needs two points"))
            continue
        if e.polyline[0] != graph.vertices[e.tail].position or e.polyline[-1] != graph.vertices[e.head].position:
            issues.append(Issue(ei, "malformed", "polyline does not join its endpoints"))
        if any(a == b for a, b in zip(e.polyline, e.polyline[1:])):
            issues.append(Issue(ei, "malformed", "degenerate polyline segment"))
        if e.multiplicity < 1:
            issues.append(Issue(ei, "malformed", "multiplicity must be positive"))
        if not e.klass.is_primitive():
            issues.append(Issue(ei, "malformed", "edge class must be primitive"))
    if issues:
        return ValidationReport(False, tuple(issues))

    cut_segments = [host.cut_segment(i) for i in range(host.n())]
    node_pts = [host.node_points(i) for i in range(host.n())]

    def on_boundary(p: Pt) -> int | None:
        for i in range(host.n()):
            a, b = host.edge(i)
            if point_on_segment(p, a, b):
                return i
        return None

    def on_cut(p: Pt) -> int | None:
        for i in range(host.n()):
            if host.cuts[i].node_count and point_on_segment(p, *cut_segments[i]):
                return i
        return None

    def is_node(p: Pt) -> bool:
        return any(p in pts for pts in node_pts)

    # (i) valence by kind
    for vi, v in enumerate(graph.vertices):
        deg = len(graph.incident(vi))
        want = {BOUNDARY: 1, BENDING: 2, INTERIOR: 3}.get(v.kind)
        if want is None:
            issues.append(Issue(vi, "i", f"unknown vertex kind {v.kind}"))
        elif deg != want:
            issues.append(Issue(vi, "i", f"{v.kind} vertex has valence {deg}, wants {want}"))

    # (ii) boundary vertices are negative (tails of their leaf)
    for vi, v in enumerate(graph.vertices):
        if v.kind != BOUNDARY:
            continue
        for ei in graph.incident(vi):
            if graph.edges[ei].head == vi:
                issues.append(Issue(vi, "ii", "boundary vertex must be the tail of its leaf"))

    # (iii) positions by kind
    for vi, v in enumerate(graph.vertices):
        p = v.position
        if v.kind == BOUNDARY:
            if isinstance(v.attachment, NodeAttachment):
                att = v.attachment
                if not (0 <= att.vertex < host.n()) or att.node >= host.cuts[att.vertex].node_count:
                    issues.append(Issue(vi, "iii", "node attachment out of range"))
                elif p != node_pts[att.vertex][att.node]:
                    issues.append(Issue(vi, "iii", f"vertex not at its node: {p}"))
            elif isinstance(v.attachment, SideAttachment):
                a, b = host.edge(v.attachment.side)
                if not point_on_segment(p, a, b) or p == a or p == b:
                    issues.append(Issue(vi, "iii", "vertex not interior to its side"))
            else:
                issues.append(Issue(vi, "iii", "boundary vertex needs a side or node attachment"))
        elif v.kind == BENDING:
            if not isinstance(v.attachment, CutAttachment):
                issues.append(Issue(vi, "iii", "bending vertex needs a cut attachment"))
                continue
            ci = v.attachment.vertex
            a, b = cut_segments[ci]
            if not point_on_segment(p, a, b) or p == a:
                issues.append(Issue(vi, "iii", "bending vertex not on its cut"))
            if p in node_pts[ci]:
                issues.append(Issue(vi, "iii", "bending vertex sits on a node"))
        else:
            if not host.contains(p, strict=True):
                issues.append(Issue(vi, "iii", "interior vertex not interior"))
            if on_cut(p) is not None or is_node(p):
                issues.append(Issue(vi, "iii", "interior vertex meets a cut"))

    # (iv) embeddedness: pairwise segment checks and no stray vertex hits
    segs: list[tuple[int, int, Pt, Pt]] = []   # (edge, seg index, a, b)
    for ei, e in enumerate(graph.edges):
        for si, (a, b) in enumerate(zip(e.polyline, e.polyline[1:])):
            segs.append((ei, si, a, b))
    for x in range(len(segs)):
        e1, s1, a1, b1 = segs[x]
        for y in range(x + 1, len(segs)):
            e2, s2, a2, b2 = segs[y]
            if e1 == e2 and abs(s1 - s2) == 1:
                shared = b1 if s2 == s1 + 1 else a1
                hit = _seg_interior_hit(a1, b1, a2, b2)
                if hit is not None and hit != shared:
                    issues.append(Issue(e1, "iv", "polyline self-intersects"))
                continue
            if not segments_intersect(a1, b1, a2, b2):
                continue
            hit = _seg_interior_hit(a1, b1, a2, b2)
            if hit is None:
                issues.append(Issue(e1, "iv", f"edges {e1} and {e2} overlap along a segment"))
                continue
            endpoints = {a1, b1} & {a2, b2}
            vertex_positions = {graph.vertices[t].position for t in
                                (graph.edges[e1].tail, graph.edges[e1].head,
                                 graph.edges[e2].tail, graph.edges[e2].head)}
            if hit not in endpoints or hit not in vertex_positions:
                issues.append(Issue(e1, "iv", f"edges {e1} and {e2} cross at {hit}"))
    # polylines through foreign graph vertices, nodes, cuts, boundary
    vertex_pos = [v.position for v in graph.vertices]
    for ei, si, a, b in segs:
        e = graph.edges[ei]
        own = {graph.vertices[e.tail].position, graph.vertices[e.head].position}
        for vp in vertex_pos:
            if vp not in own and point_on_segment(vp, a, b):
                issues.append(Issue(ei, "iv", f"edge passes through a vertex at {vp}"))
        for ci in range(host.n()):
            if host.cuts[ci].node_count == 0:
                continue
            c1, c2 = cut_segments[ci]
            if not segments_intersect(a, b, c1, c2):
                continue
            hit = _seg_interior_hit(a, b, c1, c2)
            if hit is None:
                issues.append(Issue(ei, "iv", f"edge runs along cut {ci}"))
                continue
            anchored = False
            for vt in (e.tail, e.head):
                v = graph.vertices[vt]
                if v.position != hit:
                    continue
                if isinstance(v.attachment, NodeAttachment) and v.attachment.vertex == ci:
                    anchored = True
                if isinstance(v.attachment, CutAttachment) and v.attachment.vertex == ci:
                    anchored = True
            if not anchored:
                issues.append(Issue(ei, "iv", f"edge crosses cut {ci} without bending"))
        # interior of segments may not touch the polytope boundary
        for t in (Fraction(1, 2),):
            mid = a + (b - a).scale(t)
            if on_boundary(mid) is not None and not host.contains(mid, strict=False):
                issues.append(Issue(ei, "iv", "edge leaves the polytope"))
        if not (host.contains(a) and host.contains(b)):
            issues.append(Issue(ei, "iv", "edge leaves the polytope"))

    # (v) every traversed segment pairs positively with the class
    for ei, e in enumerate(graph.edges):
        for a, b in zip(e.polyline, e.polyline[1:]):
            if (b - a).dot_vec(e.klass) <= 0:
                issues.append(Issue(ei, "v", f"segment {a}->{b} not positive against {e.klass}"))

    # (vi)/(vii) leaf classes
    for vi, v in enumerate(graph.vertices):
        if v.kind != BOUNDARY:
            continue
        for ei in graph.incident(vi):
            e = graph.edges[ei]
            if isinstance(v.attachment, SideAttachment):
                a, b = host.edge(v.attachment.side)
                side_dir, _ = rational_direction(b - a)
                inward = Vec(-side_dir.y, side_dir.x)   # CCW polygon: left normal points in
                if e.klass != inward:
                    issues.append(Issue(vi, "vi", f"leaf class {e.klass} is not the inward normal {inward}"))
            elif isinstance(v.attachment, NodeAttachment):
                c = host.cuts[v.attachment.vertex].direction
                if dot(e.klass, c) != 0:
                    issues.append(Issue(vi, "vii", f"leaf class {e.klass} not orthogonal to cut {c}"))

    # (viii) bending vertices
    for vi, v in enumerate(graph.vertices):
        if v.kind != BENDING:
            continue
        inc = graph.incident(vi)
        if len(inc) != 2 or not isinstance(v.attachment, CutAttachment):
            continue
        e_in = next((graph.edges[i] for i in inc if graph.edges[i].head == vi), None)
        e_out = next((graph.edges[i] for i in inc if graph.edges[i].tail == vi), None)
        if e_in is None or e_out is None:
            issues.append(Issue(vi, "viii", "bending vertex must have one incoming and one outgoing edge"))
            continue
        if e_in.multiplicity != e_out.multiplicity:
            issues.append(Issue(vi, "viii", "multiplicity changes across the bend"))
        u_in, _ = rational_direction(e_in.polyline[-1] - e_in.polyline[-2])
        u_out, _ = rational_direction(e_out.polyline[1] - e_out.polyline[0])
        c = host.cuts[v.attachment.vertex].direction
        m = bending_monodromy(host, v.attachment.vertex, v.position)
        if wedge(c, u_in) >= 0:
            m = m.inverse()
        moved, _ = primitive_of(m.apply(u_in))
        if moved != u_out:
            issues.append(Issue(vi, "viii", f"tangent {u_in} does not bend onto {u_out}"))
        expected = _transpose_inverse(m).apply(e_in.klass)
        if expected != e_out.klass:
            issues.append(Issue(vi, "viii", f"class {e_in.klass} should bend to {expected}, found {e_out.klass}"))

    # (ix) balancing at interior vertices
    for vi, v in enumerate(graph.vertices):
        if v.kind != INTERIOR:
            continue
        total = Vec(0, 0)
        for ei in graph.incident(vi):
            e = graph.edges[ei]
            sign = 1 if e.head == vi else -1
            total = total + e.klass * (sign * e.multiplicity)
        if not total.is_zero():
            issues.append(Issue(vi, "ix", f"balancing residual {total}"))

    return ValidationReport(not issues, tuple(issues))


def balancing_residual(graph: TropicalGraph, vertex: int) -> Vec:
    total = Vec(0, 0)
    for ei in graph.incident(vertex):
        e = graph.edges[ei]
        sign = 1 if e.head == vertex else -1
        total = total + e.klass * (sign * e.multiplicity)
    return total


def anticanonical_intersection(graph: TropicalGraph) -> int:
    """Sum of multiplicities of leaves ending on the polytope boundary."""
    report = validate_stc(graph)
    if not report.valid:
        raise TropicalError(f"graph is not a valid diagram: {report.issues[:3]}")
    total = 0
    for vi, v in enumerate(graph.vertices):
        if v.kind == BOUNDARY and isinstance(v.attachment, SideAttachment):
            for ei in graph.incident(vi):
                total += graph.edges[ei].multiplicity
    return total


def node_distribution(m: int, n: int) -> tuple[int, int]:
    """Unique (k, d) with m = k*n + d and 0 <= d < n."""
    if n <= 0:
        raise TropicalError("node count must be positive")
    if m < 0:
        raise TropicalError("multiplicity must be non-negative")
    return divmod(m, n)


def linking_budget(m1: int, m2: int, w1: Vec, w2: Vec) -> int:
    """d = m1 * m2 * |w1 ^ w2|: total linking spent between the two leaf bundles."""
    return m1 * m2 * abs(wedge(w1, w2))


def linking_partitions(d: int) -> list[tuple[int, int]]:
    return [(d1, d - d1) for d1 in range(d + 1)]


@dataclass(frozen=True)
class CutSlopeData:
    """Slope package of the edge-neighborhood: directions and collapse classes.

    Solves right_mult * l - left_mult * m = K with 0 <= m < right_mult, for
    the corner pair (left slot value, right slot value); the cut directions
    in the bottom-edge frame are (l, left) and (m, right).
    """

    cfg: MarkovConfig
    left: int                 # slot value at the left corner of the bottom edge
    right: int                # slot value at the right corner
    left_weight: int          # coefficient of the left slot in the equation
    right_weight: int
    l: int
    m: int
    k: int                    # bottom leaf multiplicity m*p / (n2*n3)
    cut_left: Vec
    cut_right: Vec
    collapse_left: Vec
    collapse_right: Vec
    edge_left: Vec            # primitive up the left side
    edge_right: Vec           # primitive up the right side

    def det_identity(self) -> int:
        """The determinant of the edge primitives at the apex corner."""
        return abs(wedge(self.edge_left, self.edge_right))


def cut_slope_data(cfg: MarkovConfig, triple: Triple, swap: bool = False) -> CutSlopeData:
    """Slope data for the tripod; `swap` puts the r-corner on the left."""
    p, q, r = triple
    if p != 1:
        raise TropicalError("slope data needs the first slot frozen at 1")
    if not is_solution(cfg, triple):
        raise TropicalError(f"{triple} does not solve the configured equation")
    from math import gcd

    if gcd(q, r) != 1:
        raise TropicalError("q and r must be coprime")
    if (cfg.m * p) % (cfg.c1 * cfg.c2):
        raise TropicalError("bottom multiplicity is not integral for this configuration")
    k = cfg.m * p // (cfg.c1 * cfg.c2)

    if swap:
        left, right = r, q
        lw, rw = cfg.c2, cfg.c1
    else:
        left, right = q, r
        lw, rw = cfg.c1, cfg.c2

    # solve right*l - left*m = k, normalized 0 <= m < right
    x, y = _bezout(right, left)
    l0, m0 = k * x, -k * y
    m = m0 % right
    l = (k + left * m) // right
    assert right * l - left * m == k

    return CutSlopeData(
        cfg=cfg,
        left=left,
        right=right,
        left_weight=lw,
        right_weight=rw,
        l=l,
        m=m,
        k=k,
        cut_left=Vec(l, left),
        cut_right=Vec(m, right),
        collapse_left=Vec(left, -l),
        collapse_right=Vec(-right, m),
        edge_left=Vec(lw * left * l - 1, lw * left * left),
        edge_right=Vec(rw * right * m + 1, rw * right * right),
    )


def _bezout(a: int, b: int) -> tuple[int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


@dataclass(frozen=True)
class EdgeTripod:
    graph: TropicalGraph
    host: AlmostToricBase            # normalized frame host
    slopes: CutSlopeData
    q_mult: int                      # multiplicity of the leaf into the q-slot cut
    r_mult: int
    bottom_mult: int

    def weights(self) -> tuple[int, int, int]:
        return (self.q_mult, self.r_mult, self.bottom_mult)


def normalize_to_edge_frame(
    base: AlmostToricBase, frozen: int, q_corner: int, r_corner: int
) -> tuple[AlmostToricBase, CutSlopeData | None, bool]:
    """Map the triangle so the edge opposite the frozen corner is the bottom.

    Returns (host, None, swapped) where `swapped` says the r-corner landed on
    the left.  The horizontal shear is fixed later against the slope data.
    """
    if base.n() != 3:
        raise TropicalError("edge frame needs a triangle")
    left = (frozen + 1) % 3
    swapped = left == r_corner
    e, _ = rational_direction(base.vertices[(left + 1) % 3] - base.vertices[left])
    u = basis_completion(e)
    verts = [u.apply_pt(v) for v in base.vertices]
    shift = -verts[left]
    verts = [v + shift for v in verts]
    cuts = [
        CutContent(u.apply(c.direction), c.node_count, c.positions) for c in base.cuts
    ]
    host = AlmostToricBase(tuple(verts), tuple(cuts))
    return host, None, swapped


def build_edge_tripod(
    cfg: MarkovConfig,
    triple: Triple,
    base: AlmostToricBase,
    frozen: int,
    q_corner: int,
    r_corner: int,
) -> EdgeTripod:
    """One interior vertex, two leaves into the outermost nodes of the bottom
    cuts, one leaf into the bottom edge."""
    host0, _, swapped = normalize_to_edge_frame(base, frozen, q_corner, r_corner)
    sd = cut_slope_data(cfg, triple, swap=swapped)

    left_idx = (frozen + 1) % 3
    right_idx = (frozen + 2) % 3
    # indices moved with the frame: find them by position ordering on the bottom
    order = sorted(range(3), key=lambda i: (host0.vertices[i].y, host0.vertices[i].x))
    lo0, lo1 = order[0], order[1]
    L = lo0 if host0.vertices[lo0].x < host0.vertices[lo1].x else lo1
    R = lo1 if L == lo0 else lo0
    F = order[2]

    # pin the residual horizontal shear against the normalized slope data
    m_geo = host0.cuts[R].direction
    if m_geo.y != sd.right:
        raise TropicalError("right cut does not match the slope data")
    t = (sd.m - m_geo.x) // sd.right
    if m_geo.x + t * sd.right != sd.m:
        raise TropicalError("cut slope normalization failed")
    sh = Mat2(1, t, 0, 1)
    verts = tuple(sh.apply_pt(v) for v in host0.vertices)
    cuts = tuple(CutContent(sh.apply(c.direction), c.node_count, c.positions) for c in host0.cuts)
    host = AlmostToricBase(verts, cuts)

    if host.cuts[L].direction != sd.cut_left or host.cuts[R].direction != sd.cut_right:
        raise TropicalError("normalized cuts disagree with the slope data")
    el, _ = rational_direction(host.vertices[F] - host.vertices[L])
    er, _ = rational_direction(host.vertices[F] - host.vertices[R])
    if el != sd.edge_left or er != sd.edge_right:
        raise TropicalError("side primitives disagree with the slope data")

    node_l = host.node_points(L)[0]
    node_r = host.node_points(R)[0]
    w_l, w_r = sd.collapse_left, sd.collapse_right
    mult_l, mult_r = sd.right, sd.left

    # interior vertex: a point of the open wedge where both leaf pairings win
    nl, nr = node_l, node_r
    den = Fraction(wedge(w_l, w_r))
    cl = nl.dot_vec(w_l)
    cr = nr.dot_vec(w_r)
    # solve z . w_l = cl, z . w_r = cr
    zx = (cl * w_r.y - cr * w_l.y) / den
    zy = (w_l.x * cr - w_r.x * cl) / den
    z_star = Pt(zx, zy)
    # direction pairing +1 with both leaf classes: strictly inside the wedge
    step = Pt((w_r.y - w_l.y) / den, (w_l.x - w_r.x) / den)

    bottom_side = L  # edge (L, R)
    lx, rx = host.vertices[L].x, host.vertices[R].x

    t = Fraction(1, 2)
    for _ in range(40):
        b = z_star + step.scale(t)
        if host.contains(b, strict=True) and b.y > 0:
            p3x = b.x if lx < b.x < rx else (lx + rx) / 2
            p3 = Pt(p3x, Fraction(0))
            graph = TropicalGraph(
                host=host,
                vertices=(
                    TropicalVertex(BOUNDARY, node_l, NodeAttachment(L, 0)),
                    TropicalVertex(BOUNDARY, node_r, NodeAttachment(R, 0)),
                    TropicalVertex(BOUNDARY, p3, SideAttachment(bottom_side)),
                    TropicalVertex(INTERIOR, b, None),
                ),
                edges=(
                    TropicalEdge(0, 3, (node_l, b), w_l, mult_l),
                    TropicalEdge(1, 3, (node_r, b), w_r, mult_r),
                    TropicalEdge(2, 3, (p3, b), Vec(0, 1), sd.k),
                ),
            )
            if validate_stc(graph).valid:
                q_mult = mult_l if not swapped else mult_r
                r_mult = mult_r if not swapped else mult_l
                return EdgeTripod(graph, host, sd, q_mult, r_mult, sd.k)
        t /= 2
    raise TropicalError(f"could not place the tripod vertex for {triple}")


# --- chain certificates ----------------------------------------------------

_FORM_BASIS = ("H", "E1", "E2", "E3", "E4")


def _cls(h=0, e1=0, e2=0, e3=0, e4=0) -> tuple[int, ...]:
    return (h, e1, e2, e3, e4)


def intersection_number(x: tuple[int, ...], y: tuple[int, ...]) -> int:
    return x[0] * y[0] - sum(a * b for a, b in zip(x[1:], y[1:]))


CHAIN_CLASSES: dict[str, list[tuple[str, tuple[int, ...]]]] = {
    # ordered so consecutive members meet once and distant members are disjoint
    "pxp": [("H2", (0, 1)), ("H1", (1, 0))],
    "bl3": [
        ("E2", _cls(e2=1)),
        ("B3", _cls(h=1, e1=-1, e2=-1)),
        ("E1", _cls(e1=1)),
        ("B2", _cls(h=1, e1=-1, e3=-1)),
    ],
    "bl4": [
        ("A2", _cls(e4=1)),
        ("A1", _cls(h=1, e1=-1, e4=-1)),
        ("A5", _cls(e1=1)),
    ],
}

CHAIN_CONFIGS: dict[str, MarkovConfig] = {
    "pxp": MarkovConfig(1, 1, 2, 4),
    "bl3": MarkovConfig(1, 2, 3, 6),
    "bl4": MarkovConfig(1, 1, 5, 5),
}


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: object
    rhs: object

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class ChainCertificate:
    case: str
    q: int
    r: int
    a: int
    b: int | None
    u: Vec | None
    delta_epsilon: tuple[tuple[int, int], ...]
    identities: tuple[Identity, ...]
    chain: tuple[str, ...]
    intersection_count: int

    @property
    def passed(self) -> bool:
        return all(i.ok for i in self.identities)


def _pxp_intersection(x, y):
    # basis (H1, H2), form [[0,1],[1,0]]
    return x[0] * y[1] + x[1] * y[0]


def _chain_identities(case: str) -> list[Identity]:
    classes = CHAIN_CLASSES[case]
    inter = _pxp_intersection if case == "pxp" else intersection_number
    out = []
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            want = 1 if j == i + 1 else 0
            got = inter(classes[i][1], classes[j][1])
            out.append(Identity(f"{classes[i][0]}.{classes[j][0]}", got, want))
    return out


def verify_chain(case: str, q: int, r: int) -> ChainCertificate:
    """Exact integer certificate that the case's curve chain closes up.

    Checks the slope-package determinants, the per-case linking identity, and
    the homological intersection pattern of the chain classes.
    """
    case = case.lower()
    if case not in CHAIN_CONFIGS:
        raise TropicalError(f"unknown chain case {case!r}")
    cfg = CHAIN_CONFIGS[case]
    triple = (1, q, r)
    if not is_solution(cfg, triple):
        raise TropicalError(f"(1, {q}, {r}) does not solve the {case} equation")
    sd = cut_slope_data(cfg, triple)
    v = sd.collapse_right           # (-r, m)
    w = sd.collapse_left            # (q, -l)
    identities: list[Identity] = [Identity("v^w", wedge(v, w), sd.k)]
    delta_eps: tuple[tuple[int, int], ...] = ()
    u: Vec | None = None
    b: int | None = None

    if case == "pxp":
        if q % 2 != 1 or r % 2 != 1:
            raise TropicalError("pxp chain solutions have odd q and r")
        a = (q - 1) // 2
        b = (r - 1) // 2
        u = v * a + w * b + Vec(0, 1)
        identities += [
            Identity("w^u", wedge(w, u), 1),
            Identity("u^v", wedge(u, v), 1),
            Identity("u^(0,1)", wedge(u, Vec(0, 1)), (r - q) // 2),
            Identity("chain-count", r * r + a + 1 + a * q, (2 * r * r + q * q + 1) // 2),
            Identity("markov", (2 * r * r + q * q + 1) % 2, 0),
            Identity("chain-count=2qr", r * r + a + 1 + a * q, 2 * q * r),
        ]
        if q > r:
            identities.append(Identity("sign-branch", wedge(v * 2 - u, Vec(0, 1)) < 0, True))
        elif r > q:
            identities.append(Identity("sign-branch", wedge(v * 2 + u, Vec(0, 1)) < 0, True))
    elif case == "bl3":
        if r % 2 != 1:
            raise TropicalError("bl3 chain solutions have odd r")
        b = (r - 1) // 2
        res = q % 3
        if res == 1:
            a = (q - 1) // 3
            candidates = [(d, e) for d in (0, 1) for e in (0, 1) if d + e == 1]
            coeff = 1
        elif res == 2:
            a = (q - 2) // 3
            candidates = [(d, e) for d in (1, 2) for e in (0, 1) if d + e == 2]
            coeff = 2
        else:
            raise TropicalError("bl3 residue must be 1 or 2 mod 3")
        delta_eps = tuple(
            (d, e) for d, e in candidates if q * r == b + e + b * r + coeff * a + d + a * q
        )
        identities.append(Identity("linking-pairs-exist", bool(delta_eps), True))
        for d, e in delta_eps:
            identities.append(
                Identity(f"chain-count(d={d},e={e})", b + e + b * r + coeff * a + d + a * q, q * r)
            )
    else:  # bl4
        res = q % 5
        if res == 2:
            a = (q - 2) // 5
            identities.append(Identity("chain-count", r * r + 2 * a + 1 + a * q, q * r))
        elif res == 3:
            a = (q - 3) // 5
            identities.append(Identity("chain-count", r * r + 3 * a + 2 + a * q, q * r))
        else:
            raise TropicalError("bl4 residue must be 2 or 3 mod 5")

    identities += _chain_identities(case)
    names = tuple(name for name, _ in CHAIN_CLASSES[case])
    cert = ChainCertificate(
        case=case,
        q=q,
        r=r,
        a=a,
        b=b,
        u=u,
        delta_epsilon=delta_eps,
        identities=tuple(identities),
        chain=names,
        intersection_count=len(names) - 1,
    )
    if not cert.passed:
        raise TropicalError(
            f"chain certificate failed: {[i.name for i in cert.identities if not i.ok]}"
        )
    return cert
