"""Rational polyhedral fans and their poset topology.

A fan is stored as a ray table (primitive integer vectors) and a table of
cones, each cone being identified by the set of its extremal rays.  For
cones of a fan, the face order coincides with inclusion of ray sets, which
is what every other module relies on.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from flint import fmpq_mat

from . import linalg as la
from .errors import (
    BadRay,
    DegeneratePolytope,
    DimensionTooSmall,
    NotAFan,
    NotASubdivision,
    NotCoveringPair,
    NotPointed,
    UnknownCone,
)

Vector = tuple  # of int or Fraction


def parse_rational(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise BadRay(f"not a rational: {x!r}")


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector by a positive factor to a primitive integer vector."""
    fr = [Fraction(x) for x in vec]
    if all(x == 0 for x in fr):
        raise BadRay("zero vector is not a ray")
    den = math.lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints)
    return tuple(v // g for v in ints)


def _rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return la.rank(la.matrix(vectors))


def greedy_basis(vectors: Sequence[Sequence]) -> list:
    """Greedy independent subset, scanning the vectors in the given order."""
    if not vectors:
        return []
    _, piv = la.rref(la.matrix(vectors).transpose())
    return [vectors[p] for p in piv]


def coordinates(basis: Sequence[Sequence], vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """Coordinates of vectors lying in the span of an independent basis."""
    if not vectors:
        return []
    if not basis:
        return [[] for _ in vectors]
    x = la.solve_left(la.matrix(basis), la.matrix(vectors, len(basis[0])))
    if x is None:
        raise ValueError("vector not in span")
    return [[la.to_fraction(v) for v in row] for row in x.tolist()]


def orthogonal_complement(basis: Sequence[Sequence], n: int) -> list[list[Fraction]]:
    """Basis of the linear forms vanishing on span(basis), as vectors in Q^n."""
    if not basis:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    ns = la.nullspace(la.matrix(basis, n))
    return [[la.to_fraction(v) for v in row] for row in ns.rows.tolist()]


def _dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class ConeGeometry:
    """Exact description of one pointed cone, computed from its generators."""

    basis: tuple  # greedy-lex basis of the span (primitive integer rays)
    equations: tuple  # forms cutting out the span
    facets: tuple  # (ray-id frozenset, ambient inward normal)
    faces: frozenset  # ray-id frozensets of all faces, including empty and full

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, x: Sequence) -> bool:
        if any(_dot(e, x) != 0 for e in self.equations):
            return False
        return all(_dot(u, x) >= 0 for _, u in self.facets)

    def in_span(self, x: Sequence) -> bool:
        return all(_dot(e, x) == 0 for e in self.equations)


def analyze_cone(gens: dict[int, tuple], n: int) -> ConeGeometry:
    """Face lattice and H-description of the cone spanned by ``gens``.

    Facets are found by brute force over (d-1)-subsets of generators, which
    is the double description method specialised to desk-scale cones.
    Raises NotPointed if the cone contains a line and NotAFan if a listed
    generator is not extremal.
    """
    ids = sorted(gens)
    ordered = sorted(gens.values())
    basis = tuple(greedy_basis(ordered))
    d = len(basis)
    equations = tuple(tuple(e) for e in orthogonal_complement(basis, n))
    if d == 0:
        return ConeGeometry((), equations, (), frozenset([frozenset()]))
    coords = dict(zip(ids, coordinates(basis, [gens[i] for i in ids])))
    facets: dict[frozenset, tuple] = {}
    for sub in itertools.combinations(ids, d - 1):
        rows = [coords[i] for i in sub]
        if d > 1 and _rank(rows) != d - 1:
            continue
        if d > 1:
            normal = la.nullspace(la.matrix(rows, d)).rows.tolist()[0]
            normal = [la.to_fraction(v) for v in normal]
        else:
            normal = [Fraction(1)]
        vals = {i: _dot(normal, coords[i]) for i in ids}
        if all(v >= 0 for v in vals.values()):
            sign = 1
        elif all(v <= 0 for v in vals.values()):
            sign = -1
        else:
            continue
        on = frozenset(i for i in ids if vals[i] == 0)
        if len(on) == len(ids):
            continue
        if on not in facets:
            # any ambient extension of the span functional will do
            sol = la.solve(la.matrix(basis), la.matrix([[sign * v] for v in normal], 1))
            facets[on] = tuple(la.to_fraction(x) for x in sol.transpose().tolist()[0])
    normals = [coordinates_of_form(u, basis) for u in facets.values()]
    if len(facets) == 0 or _rank(normals) < d:
        raise NotPointed("cone contains a line", witness={"rays": ids})
    # faces: closure of facets under intersection
    faces = {frozenset(ids)}
    frontier = set(facets)
    faces |= frontier
    while frontier:
        new = set()
        for f in frontier:
            for g in facets:
                h = f & g
                if h not in faces:
                    new.add(h)
        faces |= new
        frontier = new
    singles = {f for f in faces if len(f) == 1}
    for i in ids:
        if frozenset([i]) not in singles:
            raise NotAFan(f"ray {i} is not an extremal ray of its cone", witness={"ray": i, "cone": ids})
    ordered_facets = tuple(sorted(((f, u) for f, u in facets.items()), key=lambda t: sorted(t[0])))
    return ConeGeometry(basis, equations, ordered_facets, frozenset(faces))


def coordinates_of_form(u: Sequence, basis: Sequence[Sequence]) -> list[Fraction]:
    """Restriction of an ambient linear form to span(basis), in basis coordinates."""
    return [_dot(u, b) for b in basis]


@dataclass(frozen=True)
class Cone:
    id: int
    rays: frozenset
    dim: int
    basis: tuple
    orient: int = 1

    def __repr__(self) -> str:
        return f"Cone({self.id}, rays={sorted(self.rays)}, dim={self.dim})"


@dataclass(frozen=True)
class Subposet:
    fan: "Fan"
    ids: frozenset
    kind: str  # "open" | "closed" | "arbitrary"

    def __iter__(self):
        return iter(sorted(self.ids))

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, c) -> bool:
        return _cid(c) in self.ids


def _cid(c) -> int:
    return c.id if isinstance(c, Cone) else int(c)


class Fan:
    """A validated fan in Q^n; immutable after construction."""

    def __init__(self, ambient_dim: int, rays: Sequence[Sequence], max_cones: Iterable[Iterable[int]],
                 orientation: dict[int, int] | None = None, validate: bool = True):
        self.ambient_dim = n = int(ambient_dim)
        prim = []
        for i, r in enumerate(rays):
            if len(r) != n:
                raise BadRay(f"ray {i} has length {len(r)}, expected {n}")
            try:
                prim.append(primitive(r))
            except BadRay as e:
                raise BadRay(f"ray {i}: {e}") from None
        if len(set(prim)) != len(prim):
            raise BadRay("duplicate rays")
        self.rays: tuple[tuple[int, ...], ...] = tuple(prim)
        geoms: dict[frozenset, ConeGeometry] = {}
        faces: set[frozenset] = {frozenset()}
        given = []
        for mc in max_cones:
            key = frozenset(int(i) for i in mc)
            for i in key:
                if not 0 <= i < len(prim):
                    raise BadRay(f"ray index {i} out of range")
            if key in geoms:
                continue
            g = analyze_cone({i: prim[i] for i in key}, n)
            geoms[key] = g
            faces |= g.faces
            given.append(key)
        self._geom = geoms
        ordered = sorted(faces, key=lambda f: (_rank([prim[i] for i in f]), sorted(f)))
        orientation = orientation or {}
        cones = []
        for cid, f in enumerate(ordered):
            basis = tuple(greedy_basis(sorted(prim[i] for i in f)))
            cones.append(Cone(cid, f, len(basis), basis, orientation.get(cid, 1)))
        self.cones: tuple[Cone, ...] = tuple(cones)
        self._by_rays = {c.rays: c for c in cones}
        self._max_given = given
        if validate:
            self._validate()

    # -- construction helpers -------------------------------------------------
    @classmethod
    def from_doc(cls, doc: dict) -> "Fan":
        try:
            n = int(doc["dim"])
            rays = [[parse_rational(x) for x in r] for r in doc["rays"]]
            mcs = doc["max_cones"]
        except (KeyError, TypeError, ValueError) as e:
            raise BadRay(f"malformed fan document: {e}") from None
        return cls(n, rays, mcs)

    def to_doc(self) -> dict:
        return {
            "dim": self.ambient_dim,
            "rays": [[format_rational(x) for x in r] for r in self.rays],
            "max_cones": [sorted(c.rays) for c in self.maximal_cones()],
        }

    def reoriented(self, flips: Iterable) -> "Fan":
        """Copy of the fan with the orientation of the given cones reversed."""
        flips = {_cid(c) for c in flips}
        orient = {c.id: (-c.orient if c.id in flips else c.orient) for c in self.cones}
        return Fan(self.ambient_dim, self.rays, [sorted(c.rays) for c in self.maximal_cones()],
                   orientation=orient, validate=False)

    def subfan(self, cones: Iterable) -> "Fan":
        """The subfan generated by the given cones, sharing this fan's ray table."""
        keys = [self.cone(c).rays for c in cones]
        return Fan(self.ambient_dim, self.rays, [sorted(k) for k in keys], validate=False)

    # -- lookup -----------------------------------------------------------------
    def cone(self, c) -> Cone:
        if isinstance(c, Cone):
            if c.id < len(self.cones) and self.cones[c.id].rays == c.rays:
                return self.cones[c.id]
            return self.cone_by_rays(c.rays)
        try:
            return self.cones[int(c)]
        except (IndexError, ValueError, TypeError):
            raise UnknownCone(f"no cone {c!r}") from None

    def cone_by_rays(self, rays: Iterable[int]) -> Cone:
        key = frozenset(rays)
        try:
            return self._by_rays[key]
        except KeyError:
            raise UnknownCone(f"no cone with rays {sorted(key)}") from None

    def has_rays(self, rays: Iterable[int]) -> bool:
        return frozenset(rays) in self._by_rays

    @property
    def origin(self) -> Cone:
        return self.cones[0]

    def __len__(self) -> int:
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)

    def __repr__(self) -> str:
        return f"Fan(n={self.ambient_dim}, rays={len(self.rays)}, cones={len(self.cones)})"

    @property
    def dim(self) -> int:
        return max(c.dim for c in self.cones)

    def ray_vectors(self, c) -> list[tuple[int, ...]]:
        return [self.rays[i] for i in sorted(self.cone(c).rays)]

    def le(self, a, b) -> bool:
        return self.cone(a).rays <= self.cone(b).rays

    def faces(self, c) -> list[Cone]:
        r = self.cone(c).rays
        return [x for x in self.cones if x.rays <= r]

    def facets(self, c) -> list[Cone]:
        s = self.cone(c)
        return [x for x in self.cones if x.dim == s.dim - 1 and x.rays < s.rays]

    def cofacets(self, c) -> list[Cone]:
        s = self.cone(c)
        return [x for x in self.cones if x.dim == s.dim + 1 and s.rays < x.rays]

    def maximal_cones(self) -> list[Cone]:
        return [c for c in self.cones if not self.cofacets(c)]

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Covering pairs (tau, sigma): tau is a facet of sigma."""
        return tuple((t.id, s.id) for s in self.cones for t in self.facets(s))

    @cached_property
    def _facets_cache(self) -> dict[int, tuple[int, ...]]:
        return {s.id: tuple(t.id for t in self.facets(s)) for s in self.cones}

    def facet_ids(self, c) -> tuple[int, ...]:
        return self._facets_cache[_cid(c)]

    def geometry(self, c) -> ConeGeometry:
        s = self.cone(c)
        g = self._geom.get(s.rays)
        if g is None:
            g = analyze_cone({i: self.rays[i] for i in s.rays}, self.ambient_dim)
            self._geom[s.rays] = g
        return g

    def interior_point(self, c) -> tuple[int, ...]:
        """Sum of the primitive ray generators (a relative interior point)."""
        vs = self.ray_vectors(c)
        return tuple(sum(col) for col in zip(*vs)) if vs else (0,) * self.ambient_dim

    # -- topology -------------------------------------------------------------
    def star(self, c) -> Subposet:
        r = self.cone(c).rays
        return Subposet(self, frozenset(x.id for x in self.cones if r <= x.rays), "closed")

    def boundary(self, c) -> Subposet:
        s = self.cone(c)
        return Subposet(self, frozenset(x.id for x in self.cones if x.rays < s.rays), "open")

    def generated(self, cs: Iterable) -> Subposet:
        keys = [self.cone(c).rays for c in cs]
        return Subposet(self, frozenset(x.id for x in self.cones if any(x.rays <= k for k in keys)), "open")

    def le_dim(self, k: int) -> Subposet:
        return Subposet(self, frozenset(x.id for x in self.cones if x.dim <= k), "open")

    def everything(self) -> Subposet:
        return Subposet(self, frozenset(x.id for x in self.cones), "open")

    # -- validation -----------------------------------------------------------
    def _validate(self) -> None:
        maxes = [c for c in self.maximal_cones()]
        for a, b in itertools.combinations(maxes, 2):
            self._check_intersection(a, b)

    def _check_intersection(self, a: Cone, b: Cone) -> None:
        ga, gb = self.geometry(a), self.geometry(b)
        common = a.rays & b.rays
        if common not in ga.faces or common not in gb.faces:
            raise NotAFan("cones meet off a common face",
                          witness={"cones": [sorted(a.rays), sorted(b.rays)]})
        n = self.ambient_dim
        eqs = list(ga.equations) + list(gb.equations)
        if eqs:
            span = la.nullspace(la.matrix(eqs, n))
            lin = [[la.to_fraction(v) for v in row] for row in span.rows.tolist()]
        else:
            lin = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        m = len(lin)
        if m == 0:
            return
        ineq = [[_dot(u, l) for l in lin] for _, u in ga.facets + gb.facets]
        ineq = [row for row in ineq if any(x != 0 for x in row)]
        cand = []
        if m == 1:
            cand = [[Fraction(1)], [Fraction(-1)]]
        else:
            for sub in itertools.combinations(range(len(ineq)), m - 1):
                rows = [ineq[i] for i in sub]
                if _rank(rows) != m - 1:
                    continue
                v = [la.to_fraction(x) for x in la.nullspace(la.matrix(rows, m)).rows.tolist()[0]]
                cand.append(v)
                cand.append([-x for x in v])
        gc = analyze_cone({i: self.rays[i] for i in common}, n) if common else None
        for c in cand:
            if not all(_dot(row, c) >= 0 for row in ineq):
                continue
            x = [sum(c[k] * lin[k][j] for k in range(m)) for j in range(n)]
            if all(v == 0 for v in x):
                continue
            inside = gc.in_span(x) if gc is not None else False
            if not inside:
                raise NotAFan("cones meet off a common face",
                              witness={"cones": [sorted(a.rays), sorted(b.rays)],
                                       "point": [format_rational(v) for v in x]})


# -- module-level operations --------------------------------------------------

def parse_fan(doc: dict) -> Fan:
    return Fan.from_doc(doc)


def is_complete(f: Fan) -> bool:
    n = f.ambient_dim
    maxes = f.maximal_cones()
    if n == 0:
        return True
    if not maxes or any(c.dim != n for c in maxes):
        return False
    walls = [c for c in f.cones if c.dim == n - 1]
    adj: dict[int, set[int]] = {c.id: set() for c in maxes}
    for w in walls:
        cof = f.cofacets(w)
        if len(cof) != 2:
            return False
        a, b = cof
        adj[a.id].add(b.id)
        adj[b.id].add(a.id)
    seen = {maxes[0].id}
    stack = [maxes[0].id]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == len(maxes)


def is_simplicial(f: Fan) -> bool:
    return all(len(c.rays) == c.dim for c in f.cones)


def subposet(f: Fan, query: tuple) -> Subposet:
    """``query`` is one of ("boundary", c), ("star", c), ("generated", cs), ("le_dim", k)."""
    kind, arg = query
    if kind == "boundary":
        return f.boundary(arg)
    if kind == "star":
        return f.star(arg)
    if kind == "generated":
        return f.generated(arg)
    if kind == "le_dim":
        return f.le_dim(int(arg))
    raise ValueError(f"unknown subposet kind {kind!r}")


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def incidence_sign(f: Fan, tau, sigma) -> int:
    t, s = f.cone(tau), f.cone(sigma)
    if not (t.rays < s.rays and t.dim == s.dim - 1):
        raise NotCoveringPair(f"{t} is not a facet of {s}")
    return _incidence(f, t, s)


def _incidence(f: Fan, t: Cone, s: Cone) -> int:
    w = [sum(col) for col in zip(*[f.rays[i] for i in s.rays - t.rays])]
    frame = list(t.basis) + [tuple(w)]
    m = coordinates(s.basis, frame)
    det = la.matrix(m).det()
    return t.orient * s.orient * _sign(la.to_fraction(det))


@dataclass(frozen=True)
class SubdivisionMap:
    fine: Fan
    coarse: Fan
    image: dict  # fine cone id -> coarse cone id

    def __call__(self, c) -> Cone:
        return self.coarse.cone(self.image[self.fine.cone(c).id])

    def preimage(self, c) -> Subposet:
        """Fine cones mapped onto faces of ``c`` (preimage of the open set [c])."""
        s = self.coarse.cone(c)
        ids = frozenset(k for k, v in self.image.items() if self.coarse.cone(v).rays <= s.rays)
        return Subposet(self.fine, ids, "open")

    def fiber(self, c) -> Subposet:
        s = self.coarse.cone(c).id
        return Subposet(self.fine, frozenset(k for k, v in self.image.items() if v == s), "arbitrary")


def subdivision_map(fine: Fan, coarse: Fan) -> SubdivisionMap:
    if fine.ambient_dim != coarse.ambient_dim:
        raise NotASubdivision("ambient dimensions differ")
    image = {}
    for p in fine.cones:
        pts = fine.ray_vectors(p)
        containing = [s for s in coarse.cones
                      if all(coarse.geometry(s).contains(x) for x in pts)]
        if not containing:
            raise NotASubdivision(f"fine cone {sorted(p.rays)} lies in no coarse cone",
                                  witness={"fine_cone": sorted(p.rays)})
        best = min(containing, key=lambda s: (s.dim, s.id))
        image[p.id] = best.id
    # coverage: fine full-dimensional cones inside each coarse cone form a
    # pseudomanifold whose mod-2 boundary lies in the coarse boundary
    for s in coarse.cones:
        if s.dim == 0:
            continue
        inside = [p for p in fine.cones if coarse.le(image[p.id], s)]
        tops = [p for p in inside if p.dim == s.dim]
        if not tops:
            raise NotASubdivision(f"coarse cone {sorted(s.rays)} is not covered",
                                  witness={"coarse_cone": sorted(s.rays)})
        top_rays = [p.rays for p in tops]
        for w in inside:
            if w.dim != s.dim - 1:
                continue
            count = sum(1 for r in top_rays if w.rays < r)
            interior = image[w.id] == s.id
            if count != (2 if interior else 1):
                raise NotASubdivision(f"coarse cone {sorted(s.rays)} is not covered",
                                      witness={"coarse_cone": sorted(s.rays), "wall": sorted(w.rays)})
    return SubdivisionMap(fine, coarse, image)


class PiecewiseLinearFunction:
    """Continuous conewise-linear function given by a linear form per maximal cone."""

    def __init__(self, fan: Fan, forms: dict):
        self.fan = fan
        self.forms = {fan.cone(k).id: tuple(Fraction(x) for x in v) for k, v in forms.items()}
        for c in fan.maximal_cones():
            if c.id not in self.forms:
                raise ValueError(f"no linear form on maximal cone {c}")
        for a, b in itertools.combinations(fan.maximal_cones(), 2):
            for i in a.rays & b.rays:
                if _dot(self.forms[a.id], fan.rays[i]) != _dot(self.forms[b.id], fan.rays[i]):
                    raise ValueError("function is not continuous")

    @classmethod
    def from_ray_values(cls, fan: Fan, values: Sequence) -> "PiecewiseLinearFunction":
        """Linear extension of values prescribed on primitive ray generators."""
        vals = [Fraction(v) for v in values]
        forms = {}
        for c in fan.maximal_cones():
            idx = sorted(c.rays)
            if not idx:
                forms[c.id] = (Fraction(0),) * fan.ambient_dim
                continue
            sol = la.solve(la.matrix([fan.rays[i] for i in idx]), la.matrix([[vals[i]] for i in idx], 1))
            if sol is None:
                raise ValueError(f"ray values are not linear on cone {sorted(idx)}")
            forms[c.id] = tuple(la.to_fraction(x) for x in sol.transpose().tolist()[0])
        return cls(fan, forms)

    @classmethod
    def linear(cls, fan: Fan, form: Sequence) -> "PiecewiseLinearFunction":
        return cls(fan, {c.id: tuple(form) for c in fan.maximal_cones()})

    def form_on(self, c) -> tuple:
        """An ambient linear form agreeing with the function on the cone ``c``."""
        s = self.fan.cone(c)
        for m in self.fan.maximal_cones():
            if s.rays <= m.rays:
                return self.forms[m.id]
        raise UnknownCone(str(c))

    def value(self, x: Sequence) -> Fraction:
        for m in self.fan.maximal_cones():
            if self.fan.geometry(m).contains(x):
                return _dot(self.forms[m.id], x)
        raise ValueError("point outside the support")

    def ray_values(self) -> list[Fraction]:
        out = []
        for i, r in enumerate(self.fan.rays):
            try:
                out.append(_dot(self.form_on(self.fan.cone_by_rays([i])), r))
            except UnknownCone:
                out.append(Fraction(0))
        return out

    def __add__(self, other: "PiecewiseLinearFunction") -> "PiecewiseLinearFunction":
        return PiecewiseLinearFunction(
            self.fan, {k: tuple(a + b for a, b in zip(v, other.forms[k])) for k, v in self.forms.items()})

    def __neg__(self) -> "PiecewiseLinearFunction":
        return PiecewiseLinearFunction(self.fan, {k: tuple(-a for a in v) for k, v in self.forms.items()})


@dataclass(frozen=True)
class BoundaryProjection:
    fan: Fan
    function: PiecewiseLinearFunction
    direction: tuple  # interior direction used for splitting, ambient coordinates
    coordinates: tuple  # ambient coordinate indices used to identify Span(sigma)
    dropped: int  # index (within ``coordinates``) eliminated by the projection
    ray_map: dict  # ray id of sigma -> ray id of the projected fan


def boundary_projection(f: Fan, sigma) -> BoundaryProjection:
    s = f.cone(sigma)
    if s.dim < 2:
        raise DimensionTooSmall("boundary projection needs a cone of dimension >= 2")
    v = primitive(f.interior_point(s))
    # identify Span(sigma) with Q^{d} through independent ambient coordinates
    _, coords = la.rref(la.matrix(s.basis))
    coords = tuple(coords)
    vc = [v[j] for j in coords]
    k = max(i for i, x in enumerate(vc) if x != 0)

    def split(x):
        xc = [Fraction(x[j]) for j in coords]
        h = xc[k] / vc[k]
        y = [xc[i] - h * vc[i] for i in range(len(xc)) if i != k]
        return y, h

    idx = sorted(s.rays)
    new_rays, heights, ray_map = [], [], {}
    for i in idx:
        y, h = split(f.rays[i])
        p = primitive(y)
        scale = next(Fraction(a) / b for a, b in zip(y, p) if b != 0)
        ray_map[i] = len(new_rays)
        new_rays.append(p)
        heights.append(h / scale)
    max_cones = [[ray_map[i] for i in sorted(c.rays)] for c in f.facets(s)]
    g = Fan(s.dim - 1, new_rays, max_cones)
    l = PiecewiseLinearFunction.from_ray_values(g, heights)
    return BoundaryProjection(g, l, tuple(v), coords, k, ray_map)


def read_polytope(doc: dict) -> tuple[int, list[tuple[Fraction, ...]]]:
    try:
        n = int(doc["dim"])
        verts = [tuple(parse_rational(x) for x in v) for v in doc["vertices"]]
    except (KeyError, TypeError, ValueError) as e:
        raise DegeneratePolytope(f"malformed polytope document: {e}") from None
    if any(len(v) != n for v in verts):
        raise DegeneratePolytope("vertex of wrong length")
    if not verts:
        raise DegeneratePolytope("no vertices")
    diffs = [[a - b for a, b in zip(v, verts[0])] for v in verts[1:]]
    if _rank(diffs) < n:
        raise DegeneratePolytope(f"fewer than {n + 1} affinely independent vertices")
    return n, verts


def cone_over_polytope(doc: dict) -> Fan:
    """The fan [sigma] of the cone over a polytope placed at height one."""
    n, verts = read_polytope(doc)
    rays = [tuple(v) + (Fraction(1),) for v in verts]
    return Fan(n + 1, rays, [list(range(len(rays)))])


def top_cone(f: Fan) -> Cone:
    maxes = f.maximal_cones()
    if len(maxes) != 1:
        raise ValueError("fan is not generated by a single cone")
    return maxes[0]
