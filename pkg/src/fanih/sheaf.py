"""Sheaves of graded modules on the face poset of a fan.

A sheaf stores a stalk for every cone and a restriction map for every
covering pair (facet tau < sigma).  Longer restrictions are composites
along a chain; chain independence can be checked with
:func:`check_chain_independence`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from flint import fmpq_mat

from . import linalg as la
from .errors import CapTooSmall
from .fan import Cone, Fan, Subposet, _cid
from .graded import (
    DirectSumModule,
    FreeModule,
    FreeRestriction,
    FreenessResult,
    GradedMap,
    GradedModule,
    PolyRing,
    SubModule,
    ZeroMap,
    ZeroModule,
    check_free,
    identity_map,
    minimal_generators,
    trivial_module,
)


def default_cap(f: Fan) -> int:
    return 2 * f.ambient_dim + 2


def cone_ring(f: Fan, c) -> PolyRing:
    c = f.cone(c)
    return PolyRing(c.basis, f.ambient_dim)


class Sheaf:
    def __init__(self, fan: Fan, stalks: dict, restrictions: dict, cap: int):
        self.fan = fan
        self.cap = cap
        self.n = fan.ambient_dim
        self.stalks = {c.id: stalks.get(c.id) or ZeroModule(self.n, cap) for c in fan.cones}
        self.restrictions = dict(restrictions)
        self._res_cache: dict = {}

    def stalk(self, c) -> GradedModule:
        return self.stalks[_cid(c)]

    @property
    def support(self) -> frozenset:
        return frozenset(c for c, m in self.stalks.items() if not m.is_zero())

    def restriction(self, tau, sigma) -> GradedMap:
        """Restriction F_sigma -> F_tau for any tau <= sigma."""
        t, s = self.fan.cone(tau), self.fan.cone(sigma)
        key = (t.id, s.id)
        r = self._res_cache.get(key)
        if r is not None:
            return r
        if not t.rays <= s.rays:
            raise ValueError(f"cone {t.id} is not a face of {s.id}")
        src, tgt = self.stalk(s), self.stalk(t)
        if t.id == s.id:
            r = identity_map(src)
        elif src.is_zero() or tgt.is_zero():
            r = ZeroMap(src, tgt)
        elif key in self.restrictions:
            r = self.restrictions[key]
        else:
            # go down through a facet containing tau with a nonzero stalk, if any
            mids = [p for p in self.fan.facet_ids(s) if t.rays <= self.fan.cones[p].rays]
            live = [p for p in mids if not self.stalk(p).is_zero()]
            if t.dim == s.dim - 1 or not live:
                r = ZeroMap(src, tgt)
            else:
                p = live[0]
                r = self.restriction(p, s).then(self.restriction(t, p))
        self._res_cache[key] = r
        return r

    def generator_table(self) -> dict[int, dict]:
        """Minimal generator degrees of every nonzero stalk."""
        out = {}
        for c in self.fan.cones:
            m = self.stalk(c)
            if not m.is_zero():
                out[c.id] = minimal_generators(m).dims
        return out

    def summary(self) -> dict:
        return {
            "support": sorted(self.support),
            "generators": {str(k): v.to_json() for k, v in self.generator_table().items()},
            "cap": self.cap,
        }


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def structure_sheaf(f: Fan, cap: int | None = None) -> Sheaf:
    """Conewise polynomial functions: stalk at sigma is Sym(span(sigma)^*)."""
    cap = default_cap(f) if cap is None else cap
    stalks = {c.id: FreeModule(cone_ring(f, c), (0,), cap, f.ambient_dim) for c in f.cones}
    res = {}
    for t, s in f.covers:
        tgt = stalks[t]
        res[(t, s)] = FreeRestriction(stalks[s], tgt, [tgt.generator_vector(0)])
    return Sheaf(f, stalks, res, cap)


def constant_sheaf(f: Fan, cap: int | None = None, cones: Iterable | None = None) -> Sheaf:
    """Q in degree 0 on the given cones (all by default), identity restrictions."""
    cap = default_cap(f) if cap is None else cap
    ids = {c.id for c in f.cones} if cones is None else {_cid(c) for c in cones}
    stalks = {c: trivial_module(f.ambient_dim, cap) for c in ids}
    res = {}
    for t, s in f.covers:
        if t in ids and s in ids:
            res[(t, s)] = GradedMap(stalks[s], stalks[t], lambda d, m=stalks[s]: la.identity(m.dim(d)))
    return Sheaf(f, stalks, res, cap)


def extension_by_zero(f: Fan, cone, module: GradedModule | None = None, cap: int | None = None) -> Sheaf:
    """A module placed at a single cone, zero everywhere else."""
    cap = default_cap(f) if cap is None else cap
    module = module or trivial_module(f.ambient_dim, cap)
    return Sheaf(f, {f.cone(cone).id: module}, {}, cap)


def star_restriction(F: Sheaf, tau) -> Sheaf:
    """Keep stalks on Star(tau), zero elsewhere."""
    star = F.fan.star(tau).ids
    stalks = {c: m for c, m in F.stalks.items() if c in star}
    res = {k: v for k, v in F.restrictions.items() if k[0] in star and k[1] in star}
    return Sheaf(F.fan, stalks, res, F.cap)


def direct_sum(sheaves: Sequence[Sheaf]) -> Sheaf:
    f = sheaves[0].fan
    cap = min(s.cap for s in sheaves)
    n = f.ambient_dim
    stalks = {c.id: DirectSumModule([s.stalk(c) for s in sheaves], n, cap) for c in f.cones}
    res = {}
    for t, s in f.covers:
        parts = [sh.restriction(t, s) for sh in sheaves]
        res[(t, s)] = GradedMap(stalks[s], stalks[t],
                                lambda d, parts=parts: la.block_diag([p.matrix(d) for p in parts]))
    return Sheaf(f, stalks, res, cap)


# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------

@dataclass
class Sections:
    """Compatible families over a subposet, with projections to stalks."""

    sheaf: Sheaf
    cones: tuple[int, ...]
    module: SubModule
    total: DirectSumModule

    def offset(self, c, d: int) -> int:
        return self.total.offsets(d)[self.cones.index(_cid(c))]

    def component(self, rows: fmpq_mat, c, d: int) -> fmpq_mat:
        """Block of ambient row vectors belonging to cone c."""
        i = self.cones.index(_cid(c))
        off = self.total.offsets(d)[i]
        return la.select_cols(rows, range(off, off + self.total.mods[i].dim(d)))

    def projection(self, c) -> GradedMap:
        def mat(d):
            b = self.module.basis(d)
            return self.component(b.rows, c, d).transpose()
        return GradedMap(self.module, self.sheaf.stalk(c), mat)

    def hilbert(self):
        return self.module.hilbert()


def _ids(F: Sheaf, S) -> tuple[int, ...]:
    if isinstance(S, Subposet):
        ids = S.ids
    else:
        ids = {_cid(c) for c in S}
    return tuple(sorted(c for c in ids if not F.stalk(c).is_zero()))


def sections(F: Sheaf, S) -> Sections:
    """Kernel of  (m_sigma) -> (res m_sigma - m_tau)  over covering pairs in S."""
    cones = _ids(F, S)
    cset = set(cones)
    n = F.n
    total = DirectSumModule([F.stalk(c) for c in cones], n, F.cap)
    pairs = [(t, s) for t, s in F.fan.covers if t in cset and s in cset]
    pos = {c: i for i, c in enumerate(cones)}

    def basis(d):
        dims = [F.stalk(c).dim(d) for c in cones]
        width = sum(dims)
        if width == 0:
            return la.Basis.empty(0)
        offs = total.offsets(d)
        rows = sum(dims[pos[t]] for t, _ in pairs)
        m = fmpq_mat(rows, width)
        r0 = 0
        for t, s in pairs:
            it, is_ = pos[t], pos[s]
            k = dims[it]
            if k == 0:
                continue
            if dims[is_]:
                for (i, j), x in la._nonzeros(F.restriction(t, s).matrix(d)):
                    m[r0 + i, offs[is_] + j] = x
            for i in range(k):
                m[r0 + i, offs[it] + i] = -1
            r0 += k
        return la.nullspace(m)

    return Sections(F, cones, SubModule(total, basis), total)


def global_sections(F: Sheaf) -> Sections:
    return sections(F, F.fan.everything())


def boundary_map(F: Sheaf, sigma) -> tuple[Sections, GradedMap]:
    """The restriction F_sigma -> Gamma(boundary of sigma; F)."""
    s = F.fan.cone(sigma)
    bd = sections(F, F.fan.boundary(s))
    src = F.stalk(s)

    def mat(d):
        if not bd.cones:
            return fmpq_mat(0, src.dim(d))
        blocks = [F.restriction(c, s).matrix(d) for c in bd.cones]
        stacked = la.vstack(blocks, ncols=src.dim(d))  # ambient coordinates, column vectors
        return bd.module.basis(d).coords(stacked.transpose()).transpose()

    return bd, GradedMap(src, bd.module, mat)


def costalk(F: Sheaf, sigma) -> SubModule:
    """Kernel of F_sigma -> Gamma(boundary of sigma; F)."""
    s = F.fan.cone(sigma)
    src = F.stalk(s)
    facets = [p for p in F.fan.facet_ids(s)]

    def basis(d):
        k = src.dim(d)
        if not facets:
            return la.Basis(la.identity(k), list(range(k)), k)
        m = la.vstack([F.restriction(p, s).matrix(d) for p in facets], ncols=k)
        return la.nullspace(m)

    return SubModule(src, basis)


# ---------------------------------------------------------------------------
# Properties
# ---------------------------------------------------------------------------

@dataclass
class Check:
    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_flabby(F: Sheaf) -> Check:
    """Every F_sigma -> Gamma(boundary of sigma) is onto, degreewise up to the cap."""
    for s in sorted(F.fan.cones, key=lambda c: (c.dim, c.id)):
        if s.dim == 0:
            continue
        bd, res = boundary_map(F, s)
        for d in range(0, F.cap + 1):
            target = bd.module.dim(d)
            if target and la.rank(res.matrix(d)) < target:
                return Check(False, {"cone": s.id, "degree": d,
                                     "boundary_sections": target, "image": la.rank(res.matrix(d))})
    return Check(True)


def is_locally_free(F: Sheaf) -> tuple[bool, dict]:
    """Cap-certified freeness of each stalk over the polynomials on its cone's span."""
    table: dict[int, FreenessResult] = {}
    ok = True
    for c in F.fan.cones:
        m = F.stalk(c)
        if m.is_zero():
            continue
        r = check_free(m, c.dim)
        table[c.id] = r
        ok = ok and r.free
    return ok, table


def check_chain_independence(F: Sheaf) -> Check:
    """Composites through the two middle cones of every codimension-2 interval agree."""
    f = F.fan
    for s in f.cones:
        for p in f.facet_ids(s):
            for t in f.facet_ids(p):
                mids = [q for q in f.facet_ids(s) if f.cones[t].rays <= f.cones[q].rays]
                ref = None
                for q in mids:
                    comp = F.restriction(t, q).matrix
                    top = F.restriction(q, s).matrix
                    mats = [comp(d) * top(d) for d in range(F.cap + 1)]
                    if ref is None:
                        ref = mats
                    elif mats != ref:
                        return Check(False, {"interval": [t, s]})
    return Check(True)


def check_restrictions_linear(F: Sheaf) -> Check:
    """Every stored restriction intertwines the A-action."""
    from .graded import intertwines
    for (t, s), r in F.restrictions.items():
        if not intertwines(r, range(0, F.cap - 1)):
            return Check(False, {"pair": [t, s]})
    return Check(True)
