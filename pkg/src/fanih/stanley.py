"""Generalized g- and h-polynomials of polytopes, computed combinatorially.

Face enumeration here uses plain Fraction arithmetic on affine data and
shares no code with the fan or sheaf layers, so it can serve as an
independent check of intersection cohomology computations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegeneratePolytope
from .graded import Polynomial


def _affine_rank(points) -> int:
    pts = [list(map(Fraction, p)) for p in points]
    if not pts:
        return -1
    rows = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    rank = 0
    ncols = len(pts[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                k = rows[r][col] / rows[rank][col]
                rows[r] = [x - k * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _hyperplane(points, n: int):
    """Normal (a, b) with a.x = b through n affinely independent points, or None."""
    base = points[0]
    rows = [[Fraction(x) - Fraction(y) for x, y in zip(p, base)] for p in points[1:]]
    # null vector of rows (n-1 x n) by elimination
    m = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                k = m[i][c]
                m[i] = [x - k * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if r != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    a = [Fraction(0)] * n
    a[free] = Fraction(1)
    for i, c in enumerate(pivots):
        a[c] = -m[i][free]
    b = sum(x * Fraction(y) for x, y in zip(a, base))
    return a, b


@dataclass(frozen=True)
class FaceLattice:
    """Faces with dimensions (-1 for the empty face) and the strict order."""

    dims: dict  # id -> dim
    below: dict  # id -> frozenset of ids strictly below
    top: object

    def rank(self) -> int:
        return self.dims[self.top]

    def interval(self, a, b) -> list:
        return [c for c in self.dims if (c == a or a in self.below[c]) and (c == b or c in self.below[b])]

    def is_eulerian(self) -> bool:
        for b in self.dims:
            for a in self.below[b]:
                if sum((-1) ** (self.dims[c] + 1) for c in self.interval(a, b)) != 0:
                    return False
        return True

    def f_vector(self) -> list[int]:
        d = self.rank()
        return [sum(1 for v in self.dims.values() if v == k) for k in range(d)]


def face_lattice(doc: dict) -> FaceLattice:
    """Faces of conv(vertices) by brute force over supporting hyperplanes."""
    try:
        n = int(doc["dim"])
        verts = [tuple(Fraction(str(x)) for x in v) for v in doc["vertices"]]
    except (KeyError, TypeError, ValueError) as e:
        raise DegeneratePolytope(f"malformed polytope document: {e}") from None
    if not verts or any(len(v) != n for v in verts):
        raise DegeneratePolytope("bad vertex list")
    if _affine_rank(verts) < n:
        raise DegeneratePolytope("polytope is not full-dimensional")
    facets: set[frozenset] = set()
    for sub in itertools.combinations(range(len(verts)), n):
        h = _hyperplane([verts[i] for i in sub], n)
        if h is None:
            continue
        a, b = h
        vals = [sum(x * y for x, y in zip(a, v)) - b for v in verts]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            facets.add(frozenset(i for i, v in enumerate(vals) if v == 0))
    faces: set[frozenset] = set(facets)
    frontier = set(facets)
    while frontier:
        new = set()
        for x, y in itertools.combinations(faces, 2):
            z = x & y
            if z not in faces:
                new.add(z)
        frontier = new
        faces |= new
    faces.add(frozenset())
    top = frozenset(range(len(verts)))
    faces.add(top)
    # drop intersections that are not faces (every intersection of faces is a face, so keep all)
    dims = {f: _affine_rank([verts[i] for i in f]) for f in faces}
    below = {f: frozenset(g for g in faces if g < f) for f in faces}
    return FaceLattice(dims, below, top)


def lattice_from_doc(doc: dict) -> FaceLattice:
    """Abstract lattice: {"faces": [{"id", "dim"}], "order": [[a, b], ...]} with a < b."""
    dims = {f["id"]: int(f["dim"]) for f in doc["faces"]}
    up: dict = {k: set() for k in dims}
    for a, b in doc["order"]:
        up[a].add(b)
    # transitive closure
    below: dict = {k: set() for k in dims}
    for a in dims:
        stack = list(up[a])
        seen = set()
        while stack:
            b = stack.pop()
            if b in seen:
                continue
            seen.add(b)
            below[b].add(a)
            stack.extend(up[b])
    top = max(dims, key=lambda k: dims[k])
    return FaceLattice(dims, {k: frozenset(v) for k, v in below.items()}, top)


@dataclass(frozen=True)
class GHPair:
    h: Polynomial
    g: Polynomial

    def to_json(self) -> dict:
        return {"h": self.h.vector(), "g": self.g.vector()}


T_MINUS_1 = Polynomial({1: 1, 0: -1})


def gh_vectors(L: FaceLattice) -> GHPair:
    """h(Q) = sum over proper faces P (empty face included) of (t-1)^(d - dim P - 1) g(P);
    g_j = h_j - h_(j-1) for j <= d/2."""

    @lru_cache(maxsize=None)
    def pair(x) -> tuple[Polynomial, Polynomial]:
        d = L.dims[x]
        if d == -1:
            return Polynomial.one(), Polynomial.one()
        h = Polynomial()
        for p in L.below[x]:
            h = h + (T_MINUS_1 ** (d - L.dims[p] - 1)) * pair(p)[1]
        g = Polynomial({j: h[j] - h[j - 1] for j in range(d // 2 + 1)})
        return h, g

    h, g = pair(L.top)
    return GHPair(h, g)


def h_from_f(f: list[int]) -> list[int]:
    """Classical h-vector of a simplicial polytope from its f-vector (f_0..f_(d-1))."""
    from math import comb
    d = len(f)
    fv = [1] + list(f)  # f_-1 = 1
    return [sum((-1) ** (k - i) * comb(d - i, k - i) * fv[i] for i in range(k + 1)) for k in range(d + 1)]


def compare_ih_h(doc: dict, cap: int | None = None) -> dict:
    """ih and ip of the cone over the polytope against h(q^2) and g(q^2)."""
    from .fan import cone_over_polytope, top_cone
    from .ihlib import ih_local, ip

    f = cone_over_polytope(doc)
    s = top_cone(f)
    loc = ih_local(f, s, cap)
    p = ip(f, s, cap)
    gh = gh_vectors(face_lattice(doc))
    return {
        "h": gh.h.vector(), "g": gh.g.vector(),
        "ih_local": loc.to_json(), "ip": p.to_json(),
        "ih_matches_h": loc == gh.h.in_q2(),
        "ip_matches_g": p == gh.g.in_q2(),
    }
