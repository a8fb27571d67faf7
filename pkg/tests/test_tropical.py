import random
from fractions import Fraction

import pytest

from atbench.diophantine import BL3, BL4, CP2, CP1XCP1, DEFAULT_SEEDS, vieta_jump
from atbench.lattice import Vec, pt, wedge
from atbench.staircase import PRESETS, staircase_sequence
from atbench.tropical import (
    BENDING,
    BOUNDARY,
    INTERIOR,
    CutAttachment,
    NodeAttachment,
    SideAttachment,
    TropicalEdge,
    TropicalError,
    TropicalGraph,
    TropicalVertex,
    anticanonical_intersection,
    balancing_residual,
    bending_monodromy,
    build_edge_tripod,
    cut_slope_data,
    linking_budget,
    linking_partitions,
    node_distribution,
    validate_stc,
    verify_chain,
)

F = Fraction

PRESET_CFGS = {
    "cp2": CP2,
    "cp1xcp1": CP1XCP1,
    "bl3": BL3,
    "bl4": BL4,
}


def chain_steps(name, bound=100):
    preset = PRESETS[name]
    steps = []
    for s in staircase_sequence(preset, 12):
        if max(s.triple) > bound:
            break
        steps.append(s)
    return steps


def make_tripod(name, step):
    preset = PRESETS[name]
    return build_edge_tripod(
        preset.markov, step.triple, step.base, step.frozen, step.q_corner, step.r_corner
    )


def test_tripods_validate_along_all_chains():
    for name in PRESET_CFGS:
        for step in chain_steps(name):
            tripod = make_tripod(name, step)
            report = validate_stc(tripod.graph)
            assert report.valid, (name, step.triple, report.issues)
            assert balancing_residual(tripod.graph, 3) == Vec(0, 0)


def test_cp2_tripod_weights_match_fibonacci_figures():
    want = [(1, 1, 3), (1, 2, 3), (5, 2, 3), (13, 5, 3), (34, 13, 3)]
    got = []
    for step in chain_steps("cp2")[:5]:
        tripod = make_tripod("cp2", step)
        got.append(sorted(tripod.weights()))
    assert got == [sorted(w) for w in want]


def test_anticanonical_degrees():
    degrees = {"cp2": 3, "cp1xcp1": 2, "bl3": 1, "bl4": 1}
    for name, degree in degrees.items():
        step = chain_steps(name)[1]
        tripod = make_tripod(name, step)
        assert anticanonical_intersection(tripod.graph) == degree
        assert tripod.bottom_mult == degree


def test_multiplicity_break_fails_only_balancing():
    step = chain_steps("cp2")[1]
    tripod = make_tripod("cp2", step)
    g = tripod.graph
    edges = list(g.edges)
    edges[0] = TropicalEdge(
        edges[0].tail, edges[0].head, edges[0].polyline, edges[0].klass, edges[0].multiplicity + 1
    )
    bad = TropicalGraph(g.host, g.vertices, tuple(edges))
    report = validate_stc(bad)
    assert not report.valid
    assert report.conditions_failed() == {"ix"}


def test_rotated_leaf_fails_orthogonality():
    step = chain_steps("cp2")[1]
    tripod = make_tripod("cp2", step)
    g = tripod.graph
    edges = list(g.edges)
    bottom = next(i for i, e in enumerate(edges) if e.klass == Vec(0, 1))
    edges[bottom] = TropicalEdge(
        edges[bottom].tail, edges[bottom].head, edges[bottom].polyline, Vec(1, 1), edges[bottom].multiplicity
    )
    bad = TropicalGraph(g.host, g.vertices, tuple(edges))
    report = validate_stc(bad)
    assert not report.valid
    assert "vi" in report.conditions_failed()


def test_boundary_vertex_must_sit_on_its_node():
    step = chain_steps("cp2")[1]
    tripod = make_tripod("cp2", step)
    g = tripod.graph
    verts = list(g.vertices)
    v0 = verts[0]
    assert isinstance(v0.attachment, NodeAttachment)
    moved = v0.position + pt(0, F(1, 97))
    verts[0] = TropicalVertex(v0.kind, moved, v0.attachment)
    edges = list(g.edges)
    e0 = edges[0]
    edges[0] = TropicalEdge(e0.tail, e0.head, (moved,) + e0.polyline[1:], e0.klass, e0.multiplicity)
    bad = TropicalGraph(g.host, tuple(verts), tuple(edges))
    report = validate_stc(bad)
    assert not report.valid
    assert "iii" in report.conditions_failed()


def _bent_fixture(with_bends=True):
    """Two interior vertices joined across the apex cut of the cp2 seed frame.

    Built constructively: tangents refract by the cut monodromy at the two
    bending vertices, classes follow the dual transform, leaves are shot
    backwards from the interior vertices along their classes; the grid search
    picks the first geometry the validator accepts.
    """
    from math import gcd

    from atbench.lattice import primitive_of, rational_direction, shear_matrix
    from atbench.tropical import _transpose_inverse

    preset = PRESETS["cp2"]
    step = staircase_sequence(preset, 0)[0]
    tripod = make_tripod("cp2", step)
    host = tripod.host
    assert set(host.vertices) == {pt(0, 0), pt(3, 0), pt(6, 3)}

    apex = host.vertices.index(pt(6, 3))
    apex_v = pt(6, 3)
    c = host.cuts[apex].direction
    assert c == Vec(-3, -2)
    shear = shear_matrix(c)

    def side_index(a, b):
        return next(
            i for i in range(3)
            if host.vertices[i] == a and host.vertices[(i + 1) % 3] == b
        )

    side_s0 = side_index(pt(6, 3), pt(0, 0))       # inward normal (1, -2)
    side_bottom = side_index(pt(0, 0), pt(3, 0))   # inward normal (0, 1)
    side_s2 = side_index(pt(3, 0), pt(6, 3))       # inward normal (-1, 1)

    def transpose(m):
        from atbench.lattice import Mat2

        return Mat2(m.a, m.c, m.b, m.d)

    def shoot_to_s0(b):
        # ray b - t*(1,-2) meets y = x/2 at t = (x - 2y)/5
        t = (b.x - 2 * b.y) / 5
        if t <= 0:
            return None
        return b - pt(1, -2).scale(t)

    anchor_s2 = pt(4, 1)
    w2 = Vec(-1, 1)

    for t_a_num in (3, 4, 5):
        t_a = F(t_a_num, 32)
        bend_a = apex_v + c.as_pt().scale(t_a)
        u_a, _ = rational_direction(bend_a - anchor_s2)
        if (bend_a - anchor_s2).dot_vec(w2) <= 0:
            continue
        m_a = shear if wedge(c, u_a) < 0 else shear.inverse()
        d_a, _ = primitive_of(m_a.apply(u_a))
        w2p = _transpose_inverse(m_a).apply(w2)
        for s_a in (F(1, 4), F(1, 8), F(1, 2)):
            b1 = bend_a + d_a.as_pt().scale(s_a / max(abs(d_a.x), abs(d_a.y)))
            if not host.contains(b1, strict=True):
                continue
            anchor_s0 = shoot_to_s0(b1)
            if anchor_s0 is None:
                continue
            total = w2p + Vec(1, -2)
            if total.is_zero():
                continue
            w3p, m3 = primitive_of(-total.x * Vec(1, 0) + -total.y * Vec(0, 1))
            # connector arrives at b1 with class w3p and multiplicity m3
            for t_b_num in (2, 3, 4, 5, 6):
                t_b = F(t_b_num, 32)
                if t_b == t_a:
                    continue
                bend_b = apex_v + c.as_pt().scale(t_b)
                diff = b1 - bend_b
                if diff.is_zero():
                    continue
                d_b, _ = rational_direction(diff)
                if d_b.as_pt().dot_vec(w3p) <= 0:
                    continue
                m_b = None
                for cand in (shear, shear.inverse()):
                    u_cand, _ = primitive_of(cand.inverse().apply(d_b))
                    expected = shear if wedge(c, u_cand) < 0 else shear.inverse()
                    if expected == cand:
                        m_b, u_b = cand, u_cand
                        break
                if m_b is None:
                    continue
                w3 = transpose(m_b).apply(w3p)
                if u_b.as_pt().dot_vec(w3) <= 0:
                    continue
                for s_b in (F(1, 4), F(1, 2), F(1, 8)):
                    b2 = bend_b - u_b.as_pt().scale(s_b / max(abs(u_b.x), abs(u_b.y)))
                    if not host.contains(b2, strict=True):
                        continue
                    # two leaves at b2 with side-normal classes summing m3*w3
                    target = w3 * m3
                    normals = {
                        side_s0: Vec(1, -2),
                        side_bottom: Vec(0, 1),
                        side_s2: Vec(-1, 1),
                    }
                    combo = None
                    items = list(normals.items())
                    for i in range(3):
                        for j in range(3):
                            if i == j:
                                continue
                            si, ni = items[i]
                            sj, nj = items[j]
                            det = wedge(ni, nj)
                            if det == 0:
                                continue
                            alpha = wedge(target, nj)
                            beta = wedge(ni, target)
                            if alpha % det or beta % det:
                                continue
                            alpha //= det
                            beta //= det
                            if alpha >= 1 and beta >= 1:
                                combo = ((si, ni, alpha), (sj, nj, beta))
                                break
                        if combo:
                            break
                    if combo is None:
                        continue
                    leaves = []
                    ok = True
                    for side, normal, mult in combo:
                        if side == side_s0:
                            anchor = shoot_to_s0(b2)
                            if anchor is None:
                                ok = False
                                break
                            leaves.append((anchor, side, normal, mult, (anchor, b2)))
                        elif side == side_bottom:
                            if b2.x <= 3:
                                anchor = pt(b2.x, 0)
                                leaves.append((anchor, side, normal, mult, (anchor, b2)))
                            else:
                                anchor = pt(F(29, 10), 0)
                                elbow = pt(F(61, 20), F(1, 2))
                                leaves.append((anchor, side, normal, mult, (anchor, elbow, b2)))
                        else:
                            # ray b - t*(-1,1) meets y = x - 3 at t = (x - y - 3)/(-2)
                            t = (b2.x - b2.y - 3) / (-2)
                            if t <= 0:
                                ok = False
                                break
                            anchor = b2 - pt(-1, 1).scale(t)
                            leaves.append((anchor, side, normal, mult, (anchor, b2)))
                    if not ok:
                        continue

                    vertices = [
                        TropicalVertex(BOUNDARY, anchor_s0, SideAttachment(side_s0)),
                        TropicalVertex(BOUNDARY, anchor_s2, SideAttachment(side_s2)),
                        TropicalVertex(INTERIOR, b1, None),
                        TropicalVertex(INTERIOR, b2, None),
                        TropicalVertex(BENDING, bend_a, CutAttachment(apex)),
                        TropicalVertex(BENDING, bend_b, CutAttachment(apex)),
                    ]
                    edges = [
                        TropicalEdge(0, 2, (anchor_s0, b1), Vec(1, -2), 1),
                        TropicalEdge(1, 4, (anchor_s2, bend_a), w2, 1),
                        TropicalEdge(4, 2, (bend_a, b1), w2p, 1),
                        TropicalEdge(3, 5, (b2, bend_b), w3, m3),
                        TropicalEdge(5, 2, (bend_b, b1), w3p, m3),
                    ]
                    for anchor, side, normal, mult, polyline in leaves:
                        vertices.append(TropicalVertex(BOUNDARY, anchor, SideAttachment(side)))
                        edges.append(TropicalEdge(len(vertices) - 1, 3, polyline, normal, mult))

                    graph = TropicalGraph(host, tuple(vertices), tuple(edges))
                    if validate_stc(graph).valid:
                        return graph if with_bends else _flatten_bends(graph)
    raise AssertionError("no valid bent fixture found in the search grid")


def _flatten_bends(graph):
    """Merge the edge pairs at every bending vertex into straight-through
    edges, dropping the bends; the result crosses cuts without bending."""
    keep = [i for i, v in enumerate(graph.vertices) if v.kind != BENDING]
    remap = {old: new for new, old in enumerate(keep)}
    edges = list(graph.edges)
    merged = []
    used = set()
    for vi, v in enumerate(graph.vertices):
        if v.kind != BENDING:
            continue
        e_in = next(i for i, e in enumerate(edges) if e.head == vi)
        e_out = next(i for i, e in enumerate(edges) if e.tail == vi)
        used.update((e_in, e_out))
        merged.append(
            TropicalEdge(
                edges[e_in].tail,
                edges[e_out].head,
                edges[e_in].polyline + edges[e_out].polyline[1:],
                edges[e_in].klass,
                edges[e_in].multiplicity,
            )
        )
    out_edges = [e for i, e in enumerate(edges) if i not in used] + merged
    final = [
        TropicalEdge(remap[e.tail], remap[e.head], e.polyline, e.klass, e.multiplicity)
        for e in out_edges
    ]
    return TropicalGraph(graph.host, tuple(graph.vertices[i] for i in keep), tuple(final))


def test_bent_curve_validates():
    graph = _bent_fixture(with_bends=True)
    report = validate_stc(graph)
    assert report.valid, report.issues
    interiors = [i for i, v in enumerate(graph.vertices) if v.kind == INTERIOR]
    bends = [i for i, v in enumerate(graph.vertices) if v.kind == BENDING]
    assert len(interiors) == 2 and len(bends) == 2
    for vi in interiors:
        assert balancing_residual(graph, vi) == Vec(0, 0)
    assert anticanonical_intersection(graph) > 0


def test_unbent_crossings_fail_embedding():
    graph = _bent_fixture(with_bends=False)
    report = validate_stc(graph)
    assert not report.valid
    assert "iv" in report.conditions_failed()


def test_wrong_class_after_bend_fails():
    graph = _bent_fixture(with_bends=True)
    edges = list(graph.edges)
    bend = next(i for i, v in enumerate(graph.vertices) if v.kind == BENDING)
    ei = next(i for i, e in enumerate(edges) if e.tail == bend)
    e = edges[ei]
    bad_class = Vec(e.klass.x + 5, e.klass.y + 7)
    if not bad_class.is_primitive():
        bad_class = Vec(e.klass.x + 5, e.klass.y + 8)
    edges[ei] = TropicalEdge(e.tail, e.head, e.polyline, bad_class, e.multiplicity)
    report = validate_stc(TropicalGraph(graph.host, graph.vertices, tuple(edges)))
    assert not report.valid
    assert "viii" in report.conditions_failed()


def test_multiplicity_change_across_bend_fails():
    graph = _bent_fixture(with_bends=True)
    edges = list(graph.edges)
    bend = next(i for i, v in enumerate(graph.vertices) if v.kind == BENDING)
    ei = next(i for i, e in enumerate(edges) if e.tail == bend)
    e = edges[ei]
    edges[ei] = TropicalEdge(e.tail, e.head, e.polyline, e.klass, e.multiplicity + 2)
    report = validate_stc(TropicalGraph(graph.host, graph.vertices, tuple(edges)))
    assert not report.valid
    assert "viii" in report.conditions_failed()


def test_bending_monodromy_counts_outer_nodes():
    graph = _bent_fixture(with_bends=True)
    host = graph.host
    apex = host.vertices.index(pt(6, 3))
    m_inner = bending_monodromy(host, apex, pt(6, 3) + pt(-3, -2).scale(F(1, 16)))
    from atbench.lattice import shear_matrix

    assert m_inner == shear_matrix(Vec(-3, -2))
    outer = pt(6, 3) + pt(-3, -2).scale(host.cuts[apex].reach)
    m_outer = bending_monodromy(host, apex, outer)
    assert m_outer == shear_matrix(Vec(-3, -2)) ** 0


def test_cut_slope_data_examples():
    sd = cut_slope_data(CP2, (1, 1, 2))
    assert (sd.l, sd.m) == (2, 1)
    assert sd.right * sd.l - sd.left * sd.m == 3
    assert sd.det_identity() == 1

    sd = cut_slope_data(BL3, (1, 2, 3))
    assert (sd.l, sd.m) == (1, 1)
    assert sd.det_identity() == 1

    with pytest.raises(TropicalError):
        cut_slope_data(CP2, (2, 5, 29))


def test_slope_identities_all_solutions_up_to_100():
    for name, cfg in PRESET_CFGS.items():
        seed = DEFAULT_SEEDS[cfg]
        triples = {seed}
        frontier = [seed]
        while frontier:
            t = frontier.pop()
            for slot in range(3):
                nxt = vieta_jump(cfg, t, slot)
                if min(nxt) > 0 and max(nxt) <= 100 and nxt not in triples:
                    triples.add(nxt)
                    frontier.append(nxt)
        checked = 0
        for t in triples:
            if t[0] != 1:
                continue
            for swap in (False, True):
                sd = cut_slope_data(cfg, t, swap=swap)
                k = cfg.m // (cfg.c1 * cfg.c2)
                assert sd.right * sd.l - sd.left * sd.m == k
                assert 0 <= sd.m < sd.right
                # balancing of the tripod classes
                total = (
                    sd.collapse_left * sd.right
                    + sd.collapse_right * sd.left
                    + Vec(0, 1) * sd.k
                )
                assert total == Vec(0, 0)
                assert sd.det_identity() == cfg.c0
                checked += 1
        assert checked >= 6


def test_node_distribution():
    assert node_distribution(11, 4) == (2, 3)
    assert node_distribution(7, 7) == (1, 0)
    assert node_distribution(0, 3) == (0, 0)
    with pytest.raises(TropicalError):
        node_distribution(4, 0)
    rng = random.Random(2)
    for _ in range(500):
        m = rng.randint(0, 10 ** 4)
        n = rng.randint(1, 100)
        k, d = node_distribution(m, n)
        assert m == k * n + d
        assert 0 <= d < n
        assert (m - d) % n == 0


def test_linking_budget():
    assert linking_budget(1, 1, Vec(1, 0), Vec(0, 1)) == 1
    assert linking_partitions(1) == [(0, 1), (1, 0)]
    assert linking_budget(3, 2, Vec(1, 0), Vec(2, 2)) == 12
    assert linking_budget(2, 5, Vec(1, 2), Vec(2, 4)) == 0
    sd = cut_slope_data(CP1XCP1, (1, 1, 1))
    assert linking_budget(1, 2, sd.collapse_right, sd.collapse_left) == 4


def test_verify_chain_worked_instances():
    cert = verify_chain("bl4", 7, 2)
    assert cert.passed
    assert cert.a == 1
    chain_count = next(i for i in cert.identities if i.name == "chain-count")
    assert chain_count.lhs == 14 and chain_count.rhs == 14

    cert = verify_chain("bl3", 2, 3)
    assert cert.passed
    assert (cert.a, cert.b) == (0, 1)
    assert set(cert.delta_epsilon) == {(1, 1), (2, 0)}

    cert = verify_chain("pxp", 1, 1)
    assert cert.passed
    assert cert.u == Vec(0, 1)
    assert cert.intersection_count == 1


def test_verify_chain_first_six_solutions():
    chains = {
        "pxp": [(1, 1), (3, 1), (3, 5), (17, 5), (17, 29), (99, 29)],
        "bl3": [(1, 1), (2, 1), (2, 3), (7, 3), (7, 11), (26, 11)],
        "bl4": [(2, 1), (3, 1), (3, 2), (7, 2), (7, 5), (18, 5)],
    }
    for case, pairs in chains.items():
        for q, r in pairs:
            cert = verify_chain(case, q, r)
            assert cert.passed, (case, q, r)


def test_verify_chain_rejects_non_solutions():
    with pytest.raises(TropicalError):
        verify_chain("pxp", 2, 2)
    with pytest.raises(TropicalError):
        verify_chain("bl4", 4, 3)
