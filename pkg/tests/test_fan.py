import itertools
from fractions import Fraction

import pytest

from fanih import errors
from fanih.fan import (
    Fan,
    boundary_projection,
    cone_over_polytope,
    incidence_sign,
    is_complete,
    is_simplicial,
    parse_fan,
    subdivision_map,
    subposet,
)


def test_line_fan_has_three_cones(get_fan):
    f = get_fan("line")
    assert len(f) == 3
    assert f.origin.dim == 0 and not f.origin.rays


def test_cube_face_fan_counts(get_fan):
    f = get_fan("cube_face_fan")
    counts = [sum(1 for c in f.cones if c.dim == k) for k in range(4)]
    assert counts == [1, 8, 12, 6]
    assert is_complete(f)
    assert not is_simplicial(f)


def test_overlapping_cones_rejected():
    with pytest.raises(errors.NotAFan):
        Fan(2, [(1, 0), (0, 1), (1, 2)], [[0, 1], [0, 2]])


def test_cone_with_line_rejected():
    with pytest.raises(errors.NotPointed):
        Fan(2, [(1, 0), (-1, 0), (0, 1)], [[0, 1, 2]])


@pytest.mark.parametrize("rays", [[(0, 0)], [(1, 0, 0)], [(1, 0), (2, 0)]])
def test_bad_rays(rays):
    with pytest.raises(errors.BadRay):
        Fan(2, rays, [[0]])


def test_rays_are_primitive():
    f = parse_fan({"dim": 2, "rays": [["2/3", "4/3"], ["-3", "0"]], "max_cones": [[0], [1]]})
    assert f.rays == ((1, 2), (-1, 0))


def test_completeness_and_simpliciality(get_fan):
    assert is_complete(get_fan("quadrant"))
    assert is_simplicial(get_fan("quadrant"))
    assert not is_complete(get_fan("square"))
    assert is_simplicial(get_fan("triangle"))


def test_subposets(get_fan):
    f = get_fan("quadrant")
    first = f.cone_by_rays([0, 1])
    assert {tuple(sorted(f.cones[c].rays)) for c in f.boundary(first)} == {(), (0,), (1,)}
    ray = f.cone_by_rays([0])
    assert {tuple(sorted(f.cones[c].rays)) for c in f.star(ray)} == {(0,), (0, 1), (0, 3)}
    assert len(f.boundary(f.origin)) == 0
    assert subposet(f, ("le_dim", 1)).ids == frozenset(c.id for c in f.cones if c.dim <= 1)
    with pytest.raises(errors.UnknownCone):
        f.cone_by_rays([0, 2])


def test_star_misses_cones_not_above(get_fan):
    f = get_fan("square")
    for t in f.cones:
        for s in f.cones:
            if not f.le(t, s):
                assert s.id not in f.star(t)


def _dd_zero(f):
    for s in f.cones:
        for t in f.facet_ids(s):
            for u in f.facet_ids(t):
                mids = [m for m in f.facet_ids(s) if f.le(u, m)]
                assert len(mids) == 2
                assert sum(incidence_sign(f, u, m) * incidence_sign(f, m, s) for m in mids) == 0


@pytest.mark.parametrize("name", ["quadrant", "cube_face_fan", "orthant3", "hexagon", "cube", "cube_triangulated"])
def test_incidence_signs_square_to_zero(get_fan, name):
    _dd_zero(get_fan(name))


def test_flipping_orientation_flips_sign(get_fan):
    f = get_fan("quadrant")
    ray = f.cone_by_rays([0])
    g = f.reoriented([ray])
    assert incidence_sign(g, g.origin, ray.id) == -incidence_sign(f, f.origin, ray.id)
    _dd_zero(g)


def test_incidence_requires_covering_pair(get_fan):
    f = get_fan("quadrant")
    with pytest.raises(errors.NotCoveringPair):
        incidence_sign(f, f.origin, f.cone_by_rays([0, 1]))


def test_diagonal_subdivision_map(get_fan):
    fine, coarse = get_fan("quadrant_diagonal"), get_fan("quadrant")
    m = subdivision_map(fine, coarse)
    first = coarse.cone_by_rays([0, 1])
    for rays in ([4], [0, 4], [1, 4]):
        assert m(fine.cone_by_rays(rays)).id == first.id
    assert m(fine.cone_by_rays([1, 2])).rays == frozenset({1, 2})
    ident = subdivision_map(coarse, coarse)
    assert all(ident(c).id == c.id for c in coarse.cones)


def test_half_line_is_not_a_subdivision(get_fan):
    half = Fan(1, [(1,)], [[0]])
    with pytest.raises(errors.NotASubdivision):
        subdivision_map(half, get_fan("line"))


def test_boundary_projection_of_square_cone(get_fan):
    f = get_fan("square")
    bp = boundary_projection(f, f.maximal_cones()[0])
    assert sorted(bp.fan.rays) == sorted([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    assert bp.function.ray_values() == [1, 1, 1, 1]
    assert bp.direction == (0, 0, 1)
    assert is_complete(bp.fan)


def test_boundary_projection_small_cases(get_fan):
    q = get_fan("quadrant")
    bp = boundary_projection(q, q.cone_by_rays([0, 1]))
    assert bp.fan.ambient_dim == 1 and len(bp.fan.rays) == 2
    t = get_fan("triangle")
    bp = boundary_projection(t, t.maximal_cones()[0])
    assert is_complete(bp.fan) and is_simplicial(bp.fan) and len(bp.fan.maximal_cones()) == 3
    with pytest.raises(errors.DimensionTooSmall):
        boundary_projection(q, q.cone_by_rays([0]))


@pytest.mark.parametrize("name", ["square", "pentagon", "hexagon", "octagon", "cube"])
def test_boundary_projection_always_complete(get_fan, name):
    f = get_fan(name)
    for c in f.cones:
        if c.dim >= 2:
            assert is_complete(boundary_projection(f, c).fan)


def test_cone_over_polytopes(get_fan):
    assert len(get_fan("square")) == 10
    seg = cone_over_polytope({"dim": 1, "vertices": [["-1"], ["1"]]})
    assert len(seg) == 4  # origin, two rays, the cone itself
    with pytest.raises(errors.DegeneratePolytope):
        cone_over_polytope({"dim": 2, "vertices": [[0, 0], [1, 1], [2, 2]]})


def test_face_order_is_geometric(get_fan):
    f = get_fan("cube_face_fan")
    for a, b in itertools.product(f.cones, repeat=2):
        if f.le(a, b):
            g = f.geometry(b)
            assert all(g.contains(f.rays[i]) for i in a.rays)


def test_document_round_trip(get_fan):
    f = get_fan("cube_face_fan")
    g = Fan.from_doc(f.to_doc())
    assert g.rays == f.rays and len(g) == len(f)
    assert all(isinstance(x, str) for r in f.to_doc()["rays"] for x in r)


def test_piecewise_linear_function_values(get_fan):
    from fanih.fan import PiecewiseLinearFunction
    f = get_fan("quadrant")
    l = PiecewiseLinearFunction.from_ray_values(f, [1, 1, 1, 1])
    assert l.value((3, -2)) == 5
    assert l.value((Fraction(-1, 2), Fraction(1, 3))) == Fraction(5, 6)
    with pytest.raises(ValueError):
        PiecewiseLinearFunction(f, {c.id: (1, 0) if i else (0, 1) for i, c in enumerate(f.maximal_cones())})
