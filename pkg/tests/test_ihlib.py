import pytest

from fanih.corpus import COMPLETE_FANS, POLYTOPES
from fanih.errors import NotStrictlyConvex
from fanih.fan import PiecewiseLinearFunction, is_simplicial
from fanih.graded import Polynomial
from fanih.ihlib import (
    convexity,
    duality_check,
    global_local_check,
    hard_lefschetz_prediction,
    ih_local,
    ip,
    ip_quotient_check,
    ip_table,
    lefschetz_ranks,
    support_function,
)
from oracles import global_local_expansion, h_from_f, to_q2


def _fvec(f):
    n = f.ambient_dim
    return [sum(1 for c in f.cones if c.dim == k + 1) for k in range(n)]


@pytest.mark.parametrize("name,expected", [
    ("line", {0: 1, 2: 1}),
    ("quadrant", {0: 1, 2: 2, 4: 1}),
    ("three_ray", {0: 1, 2: 1, 4: 1}),
    ("orthant3", {0: 1, 2: 3, 4: 3, 6: 1}),
    ("cube_face_fan", {0: 1, 2: 5, 4: 5, 6: 1}),
    ("quadrant_diagonal", {0: 1, 2: 3, 4: 1}),
    ("cube_triangulated", {0: 1, 2: 5, 4: 5, 6: 1}),
])
def test_ih_of_complete_fans(get_fan, get_ih, name, expected):
    f = get_fan(name)
    if is_simplicial(f):
        assert to_q2(h_from_f(_fvec(f))) == expected
    assert get_ih(name).ih == expected


def test_ih_of_a_single_cone_fan_is_its_top_stalk(get_fan):
    from fanih.ihlib import ih
    sq = get_fan("square")
    assert ih(sq).ih == {0: 1, 2: 1} == ip(sq, sq.maximal_cones()[0])


def test_ip_values(get_fan):
    sq = get_fan("square")
    top = sq.maximal_cones()[0]
    assert ip(sq, top) == {0: 1, 2: 1}
    assert ip(sq, sq.origin) == {0: 1}
    assert ip(sq, sq.cone_by_rays([0])) == {0: 1}
    for m, name in enumerate(["triangle", "square", "pentagon", "hexagon", "heptagon", "octagon"], start=3):
        f = get_fan(name)
        assert ip(f, f.maximal_cones()[0]) == Polynomial({0: 1, 2: m - 3})
    t = get_fan("cube_triangulated")
    assert all(v == {0: 1} for v in ip_table(t).values())


def test_ip_does_not_depend_on_the_ambient_fan(get_fan, get_ih):
    f = get_fan("cube_face_fan")
    L = get_ih("cube_face_fan").sheaf
    for c in f.cones:
        assert ip(f, c) == Polynomial(L.generators[c.id].coeffs)


def test_parallel_ip_table_matches_serial(get_fan):
    f = get_fan("hexagon")
    assert ip_table(f, jobs=4) == ip_table(f, jobs=1)


def test_ih_local(get_fan):
    sq = get_fan("square")
    assert ih_local(sq, sq.maximal_cones()[0]) == {0: 1, 2: 2, 4: 1}
    tri = get_fan("triangle")
    assert ih_local(tri, tri.maximal_cones()[0]) == {0: 1, 2: 1, 4: 1}
    assert ih_local(sq, sq.cone_by_rays([0])) == {0: 1}


@pytest.mark.parametrize("name", POLYTOPES + ("cube_face_fan",))
def test_ip_quotient_identity(get_fan, name):
    f = get_fan(name)
    for c in f.cones:
        if c.dim >= 2:
            rep = ip_quotient_check(f, c)
            assert all(ch["pass"] for ch in rep["checks"]), rep


def test_square_quotient_details(get_fan):
    sq = get_fan("square")
    rep = ip_quotient_check(sq, sq.maximal_cones()[0])
    assert rep["boundary_ih"] == {"0": 1, "2": 2, "4": 1}
    assert rep["quotient"] == {"0": 1, "2": 1}


def test_global_local_expansions(get_ih, get_fan):
    # hand expansions from the oracle: counts of cones per dimension with their ip
    assert global_local_expansion(1, {1: [[1], [1]], 0: [[1]]}) == {0: 1, 2: 1}
    assert global_local_expansion(2, {0: [[1]], 1: [[1]] * 4, 2: [[1]] * 4}) == {0: 1, 2: 2, 4: 1}
    cube = global_local_expansion(3, {0: [[1]], 1: [[1]] * 8, 2: [[1]] * 12, 3: [[1, 1]] * 6})
    assert cube == {0: 1, 2: 5, 4: 5, 6: 1}
    for name in COMPLETE_FANS:
        rep = global_local_check(get_fan(name), res=get_ih(name))
        assert rep["checks"][0]["pass"], rep


@pytest.mark.parametrize("name", COMPLETE_FANS)
def test_duality_on_complete_fans(get_fan, get_ih, name):
    rep = duality_check(get_fan(name), res=get_ih(name))
    assert all(c["pass"] for c in rep["checks"]), [c for c in rep["checks"] if not c["pass"]]


@pytest.mark.parametrize("name", POLYTOPES)
def test_costalk_symmetry_on_cones(get_fan, name):
    rep = duality_check(get_fan(name))
    assert all(c["pass"] for c in rep["checks"])


def test_convexity_classes(get_fan):
    q = get_fan("quadrant")
    assert convexity(support_function(q)) == "strictly_convex"
    assert convexity(PiecewiseLinearFunction.linear(q, (1, 0))) == "convex"
    assert convexity(-support_function(q)) == "neither"


def test_lefschetz_tables(get_fan, get_ih):
    q = get_fan("quadrant")
    rep = lefschetz_ranks(q, support_function(q), res=get_ih("quadrant"))
    top = next(r for r in rep["powers"] if r["i"] == 2)
    assert top["rank"] == 1 and top["bijective"]
    line = get_fan("line")
    rep = lefschetz_ranks(line, support_function(line), res=get_ih("line"))
    assert rep["powers"][0]["rank"] == 1
    cube = get_fan("cube_face_fan")
    rep = lefschetz_ranks(cube, support_function(cube), res=get_ih("cube_face_fan"))
    mid = next(r for r in rep["powers"] if r["i"] == 1)
    assert mid["rank"] == 5 and rep["hard_lefschetz"]
    with pytest.raises(NotStrictlyConvex):
        lefschetz_ranks(q, PiecewiseLinearFunction.linear(q, (1, 0)))


@pytest.mark.parametrize("name,form", [("quadrant", (1, 2)), ("cube_face_fan", (1, -1, 3)),
                                       ("three_ray", (-2, 1))])
def test_lefschetz_invariant_under_linear_shift(get_fan, get_ih, name, form):
    f = get_fan(name)
    l = support_function(f)
    shifted = l + PiecewiseLinearFunction.linear(f, form)
    a = lefschetz_ranks(f, l, res=get_ih(name))
    b = lefschetz_ranks(f, shifted, res=get_ih(name))
    assert a["powers"] == b["powers"] and a["steps"] == b["steps"]


@pytest.mark.parametrize("name", POLYTOPES)
def test_ip_from_boundary_ih_finding(get_fan, name):
    f = get_fan(name)
    rep = hard_lefschetz_prediction(f, f.maximal_cones()[0])
    assert rep["agrees"]


@pytest.mark.parametrize("name", COMPLETE_FANS)
def test_ih_coefficients_even_nonnegative(get_ih, name):
    h = get_ih(name).ih
    assert h[0] == 1
    assert all(j >= 0 and j % 2 == 0 and v > 0 for j, v in h.coeffs.items())
