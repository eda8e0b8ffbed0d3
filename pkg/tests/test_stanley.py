import pytest

from fanih.corpus import POLYGONS, document
from fanih.errors import DegeneratePolytope
from fanih.stanley import compare_ih_h, face_lattice, gh_vectors, h_from_f, lattice_from_doc
import oracles

SIMPLEX3 = {"dim": 3, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]}
OCTAHEDRON = {"dim": 3, "vertices": [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]}
PYRAMID = {"dim": 3, "vertices": [[0, 0, 0], [2, 0, 0], [0, 2, 0], [2, 2, 0], [1, 1, 1]]}


def test_lattice_sizes():
    assert len(face_lattice(document("square")).dims) == 10
    assert len(face_lattice(document("cube")).dims) == 28
    assert face_lattice(document("cube")).f_vector() == [8, 12, 6]


def test_simplex():
    L = face_lattice(SIMPLEX3)
    assert len(L.dims) == 16 and L.is_eulerian()
    gh = gh_vectors(L)
    assert gh.h.vector() == [1, 1, 1, 1]
    assert gh.g.vector() == [1]


@pytest.mark.parametrize("m,name", list(enumerate(POLYGONS, start=3)))
def test_polygons(m, name):
    gh = gh_vectors(face_lattice(document(name)))
    assert gh.h.vector() == [1, m - 2, 1]
    assert gh.g == {0: 1, 1: m - 3}


@pytest.mark.parametrize("doc,h", [(document("cube"), [1, 5, 5, 1]), (OCTAHEDRON, [1, 3, 3, 1]),
                                   (PYRAMID, [1, 2, 2, 1])])
def test_three_dimensional_h(doc, h):
    L = face_lattice(doc)
    assert L.is_eulerian()
    gh = gh_vectors(L)
    assert gh.h.vector() == h
    assert gh.h.vector() == gh.h.vector()[::-1]
    assert all(x >= 0 for x in gh.g.vector())


def test_simplicial_h_matches_f_vector_formula():
    for doc in (SIMPLEX3, OCTAHEDRON, document("triangle"), document("hexagon")):
        L = face_lattice(doc)
        assert gh_vectors(L).h.vector() == h_from_f(L.f_vector()) == oracles.h_from_f(L.f_vector())


def test_abstract_lattice_of_a_segment():
    doc = {"faces": [{"id": "e", "dim": -1}, {"id": "a", "dim": 0}, {"id": "b", "dim": 0}, {"id": "s", "dim": 1}],
           "order": [["e", "a"], ["e", "b"], ["a", "s"], ["b", "s"]]}
    L = lattice_from_doc(doc)
    assert L.is_eulerian()
    assert gh_vectors(L).h.vector() == [1, 1]


def test_non_eulerian_poset_detected():
    doc = {"faces": [{"id": "e", "dim": -1}, {"id": "a", "dim": 0}, {"id": "s", "dim": 1}],
           "order": [["e", "a"], ["a", "s"]]}
    assert not lattice_from_doc(doc).is_eulerian()


def test_degenerate_input():
    with pytest.raises(DegeneratePolytope):
        face_lattice({"dim": 2, "vertices": [[0, 0], [1, 1], [2, 2]]})
    with pytest.raises(DegeneratePolytope):
        face_lattice({"vertices": [[0, 0]]})


@pytest.mark.parametrize("doc", [document(n) for n in POLYGONS] + [document("cube"), PYRAMID, SIMPLEX3])
def test_ih_matches_combinatorial_h(doc):
    r = compare_ih_h(doc)
    assert r["ih_matches_h"] and r["ip_matches_g"], r
