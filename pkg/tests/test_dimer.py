import random
from collections import Counter
from math import gcd

import pytest

from atbench.dimer import BLACK, WHITE, DimerError, build_dimer
from atbench.lattice import Vec, wedge


def classes_counter(model):
    return Counter((v.x, v.y) for v in model.zigzag_classes())


def test_three_line_balanced_model():
    model = build_dimer(1, Vec(1, -1), 3, Vec(0, 1), 1, Vec(-1, -2))
    assert len(model.faces) == 6
    assert len(model.edges) == 9
    assert model.is_bipartite()
    colors = Counter(color for _, color in model.vertices)
    assert colors[BLACK] == 3 and colors[WHITE] == 3
    assert all(len(f.corners) == 3 for f in model.faces)
    assert classes_counter(model) == Counter({(1, -1): 1, (0, 1): 3, (-1, -2): 1})


def test_four_horizontal_model():
    model = build_dimer(4, Vec(1, 0), 1, Vec(1, 3), 1, Vec(-5, -3))
    assert len(model.faces) == 24
    assert len(model.edges) == 36
    assert model.is_bipartite()
    assert all(len(f.corners) == 3 for f in model.faces)
    assert classes_counter(model) == Counter({(1, 0): 4, (1, 3): 1, (-5, -3): 1})


def test_rejects_unbalanced_and_parallel():
    with pytest.raises(DimerError):
        build_dimer(1, Vec(1, 0), 1, Vec(0, 1), 1, Vec(0, -1))
    with pytest.raises(DimerError):
        build_dimer(1, Vec(1, 0), 2, Vec(-1, 0), 1, Vec(1, 0))
    with pytest.raises(DimerError):
        build_dimer(1, Vec(2, 0), 1, Vec(0, 1), 1, Vec(-2, -1))


def random_balanced(rng):
    while True:
        w1 = Vec(rng.randint(-5, 5), rng.randint(-5, 5))
        w2 = Vec(rng.randint(-5, 5), rng.randint(-5, 5))
        m1, m2 = rng.randint(1, 6), rng.randint(1, 6)
        if w1.is_zero() or w2.is_zero():
            continue
        if not (w1.is_primitive() and w2.is_primitive()):
            continue
        s = -(w1 * m1 + w2 * m2)
        if s.is_zero():
            continue
        g = gcd(abs(s.x), abs(s.y))
        w3 = Vec(s.x // g, s.y // g)
        m3 = g
        if m3 > 6:
            continue
        if wedge(w1, w2) == 0 or wedge(w1, w3) == 0 or wedge(w2, w3) == 0:
            continue
        return (m1, w1, m2, w2, m3, w3)


def test_random_balanced_inputs():
    rng = random.Random(7)
    for _ in range(200):
        m1, w1, m2, w2, m3, w3 = random_balanced(rng)
        model = build_dimer(m1, w1, m2, w2, m3, w3)
        assert model.is_bipartite()
        assert all(len(f.corners) == 3 for f in model.faces)
        want = Counter()
        want[(w1.x, w1.y)] += m1
        want[(w2.x, w2.y)] += m2
        want[(w3.x, w3.y)] += m3
        assert classes_counter(model) == want
