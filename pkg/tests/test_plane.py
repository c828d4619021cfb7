import itertools
import random

import pytest

from kmarc.gf2tower import make_tower
from kmarc.plane import (Collineation, Line, ProjPoint, all_lines,
                         apply_collineation, bilinear, coords, from_homogeneous,
                         identity_collineation, incident, line_points,
                         line_through, scaling_collineation, to_homogeneous)


@pytest.fixture(scope="module")
def t2():
    return make_tower(2, 1)


@pytest.fixture(scope="module")
def t3():
    return make_tower(3, 1)


def test_bilinear_alternating_symmetric(t2):
    for a in range(t2.order):
        assert bilinear(t2, a, a) == 0
    rng = random.Random(0)
    for _ in range(100):
        a, b = rng.randrange(t2.order), rng.randrange(t2.order)
        assert bilinear(t2, a, b) == bilinear(t2, b, a)
        assert t2.in_F(bilinear(t2, a, b))


def test_bilinear_extracts_coordinates(t2):
    for x in t2.field_F():
        for y in t2.field_F():
            z = t2.from_coords(x, y)
            assert bilinear(t2, t2.i_elem, z) == x
            assert bilinear(t2, 1, z) == y
            assert coords(t2, z) == (x, y)


def test_bilinear_f_linearity(t3):
    rng = random.Random(3)
    for _ in range(100):
        a, b = rng.randrange(t3.order), rng.randrange(t3.order)
        lam = rng.choice(t3.field_F())
        assert bilinear(t3, t3.mul(lam, a), b) \
            == t3.mul(lam, bilinear(t3, a, b))


def test_bilinear_nondegenerate(t3):
    for a in range(1, t3.order):
        assert any(bilinear(t3, a, x) for x in range(t3.order))


def test_line_points(t2):
    for u in t2.unit_circle():
        pts = line_points(t2, Line.polar(u, 0))
        assert ProjPoint.affine(0) in pts
        for mu in t2.field_F():
            line = Line.polar(u, mu)
            pts = line_points(t2, line)
            assert len(pts) == t2.q
            assert all(incident(t2, line, p) for p in pts)
    with pytest.raises(ValueError):
        line_points(t2, Line.at_infinity())


def test_rays_meet_only_at_zero(t2):
    rays = [set(p.value for p in line_points(t2, Line.polar(u, 0)))
            for u in t2.unit_circle()]
    for r1, r2 in itertools.combinations(rays, 2):
        assert r1 & r2 == {0}


def test_line_through_exhaustive(t2):
    points = [ProjPoint.affine(x) for x in range(t2.order)] \
        + [ProjPoint.infinite(u) for u in t2.unit_circle()]
    for p, s in itertools.combinations(points, 2):
        line = line_through(t2, p, s)
        assert incident(t2, line, p) and incident(t2, line, s)
    with pytest.raises(ValueError):
        line_through(t2, points[0], points[0])


def test_line_through_special_cases(t2):
    # through 0 and x: the polar ray of x
    x = t2.generator
    line = line_through(t2, ProjPoint.affine(0), ProjPoint.affine(x))
    assert line.mu == 0 and line.u == t2.polar_direction(x)
    u, v = t2.unit_circle()[:2]
    assert line_through(t2, ProjPoint.infinite(u),
                        ProjPoint.infinite(v)).infinity


def test_line_count_and_pairwise_meet(t2):
    lines = list(all_lines(t2))
    assert len(lines) == t2.q ** 2 + t2.q + 1
    points = [ProjPoint.affine(x) for x in range(t2.order)] \
        + [ProjPoint.infinite(u) for u in t2.unit_circle()]
    rng = random.Random(4)
    for l1, l2 in rng.sample(list(itertools.combinations(lines, 2)), 60):
        common = [p for p in points
                  if incident(t2, l1, p) and incident(t2, l2, p)]
        assert len(common) == 1


def test_homogeneous_roundtrip(t2):
    assert to_homogeneous(t2, ProjPoint.affine(0)) == (0, 0, 1)
    assert to_homogeneous(t2, ProjPoint.affine(t2.i_elem)) == (0, 1, 1)
    points = [ProjPoint.affine(x) for x in range(t2.order)] \
        + [ProjPoint.infinite(u) for u in t2.unit_circle()]
    for p in points:
        assert from_homogeneous(t2, to_homogeneous(t2, p)) == p
    with pytest.raises(ValueError):
        from_homogeneous(t2, (0, 0, 0))


def test_homogeneous_preserves_collinearity(t2):
    def det3(rows):
        (a, b, c), (d, e, f), (g, h, i) = rows
        return (t2.mul(a, t2.mul(e, i)) ^ t2.mul(a, t2.mul(f, h))
                ^ t2.mul(b, t2.mul(d, i)) ^ t2.mul(b, t2.mul(f, g))
                ^ t2.mul(c, t2.mul(d, h)) ^ t2.mul(c, t2.mul(e, g)))

    for line in all_lines(t2):
        if line.infinity:
            continue
        pts = line_points(t2, line)
        rows = [to_homogeneous(t2, p) for p in pts[:3]]
        assert det3(rows) == 0


def test_collineation_identity_and_composition(t2):
    ident = identity_collineation(t2)
    points = [ProjPoint.affine(x) for x in range(t2.order)]
    assert all(apply_collineation(ident, p) == p for p in points)
    rng = random.Random(5)
    for _ in range(10):
        mats = []
        while len(mats) < 2:
            rows = tuple(tuple(rng.choice(t2.field_F()) for _ in range(3))
                         for _ in range(3))
            try:
                mats.append(Collineation(t2, rows, rng.randrange(t2.m)))
            except ValueError:
                pass
        c1, c2 = mats
        comp = c1.compose(c2)
        inv = c1.inverse()
        for p in points[:6]:
            assert apply_collineation(comp, p) \
                == apply_collineation(c1, apply_collineation(c2, p))
            assert apply_collineation(inv, apply_collineation(c1, p)) == p


def test_singular_matrix_rejected(t2):
    with pytest.raises(ValueError, match="singular"):
        Collineation(t2, ((1, 0, 0), (1, 0, 0), (0, 0, 1)), 0)


def test_elation_fixes_zero(t2):
    e = Collineation(t2, ((1, 0, 0), (0, 1, 0), (1, t2.field_F()[2], 1)), 0)
    assert apply_collineation(e, ProjPoint.affine(0)) == ProjPoint.affine(0)


def test_theta_cycles_small_u(t2):
    # theta with b = 1 permutes {1, i, 1+i} cyclically
    theta = Collineation(t2, ((0, 1, 0), (1, 1, 0), (0, 0, 1)), 0)
    i = t2.i_elem
    cycle = {1: i, i: 1 ^ i, 1 ^ i: 1}
    for src, dst in cycle.items():
        assert apply_collineation(theta, ProjPoint.affine(src)) \
            == ProjPoint.affine(dst)


def test_scaling_collineation(t2):
    rng = random.Random(6)
    for _ in range(20):
        c = rng.randrange(1, t2.order)
        coll = scaling_collineation(t2, c)
        x = rng.randrange(t2.order)
        assert apply_collineation(coll, ProjPoint.affine(x)) \
            == ProjPoint.affine(t2.mul(c, x))
    with pytest.raises(ValueError):
        scaling_collineation(t2, 0)


def test_collineation_preserves_histograms(t2):
    from collections import Counter

    from kmarc.arcs import line_census, point_set
    from kmarc.constructions import build_hr

    H = build_hr(t2)
    base = Counter(line_census(H).values())
    for c in (t2.generator, t2.i_elem):
        coll = scaling_collineation(t2, c)
        img = point_set(t2, (
            apply_collineation(coll, ProjPoint.affine(p)).value
            for p in H.points))
        assert Counter(line_census(img).values()) == base


def test_serialization(t2):
    line = Line.polar(t2.unit_circle()[1], t2.field_F()[2])
    assert Line.from_json(line.to_json(t2), t2) == line
    assert Line.from_json(Line.at_infinity().to_json(t2), t2).infinity
    coll = Collineation(t2, ((0, 1, 0), (1, 1, 0), (0, 0, 1)), 1)
    again = Collineation.from_json(coll.to_json(), t2)
    assert again.matrix == coll.matrix and again.frob == coll.frob
