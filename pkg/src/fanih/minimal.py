"""Minimal sheaves L^tau built by induction over Star(tau)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from flint import fmpq_mat

from . import linalg as la
from .errors import CapTooSmall
from .fan import Fan, _cid
from .graded import (
    FreeModule,
    FreeRestriction,
    GradedDims,
    generator_vectors,
    minimal_generators,
)
from .sheaf import Check, Sheaf, boundary_map, cone_ring, is_locally_free, sections


@dataclass
class MinimalSheaf:
    sheaf: Sheaf
    base: int
    generators: dict[int, GradedDims]
    lifts: dict[int, list] = field(default_factory=dict)  # cone -> generator rows in boundary sections
    policy: str = "echelon"

    @property
    def fan(self) -> Fan:
        return self.sheaf.fan

    @property
    def cap(self) -> int:
        return self.sheaf.cap

    def stalk(self, c):
        return self.sheaf.stalk(c)

    def table(self) -> dict:
        return {str(c): g.to_json() for c, g in sorted(self.generators.items())}


def required_cap(f: Fan, tau=None) -> int:
    tau = f.origin if tau is None else f.cone(tau)
    top = max(f.cones[c].dim for c in f.star(tau).ids)
    return max(2 * (top - 1) + 2, 2)


def minimal_sheaf(f: Fan, tau=None, cap: int | None = None, policy: str = "echelon",
                  seed: int = 0) -> MinimalSheaf:
    """Minimal sheaf based at tau (the origin by default).

    ``policy`` selects how generator lifts are picked: ``echelon`` is the
    deterministic default, ``perturbed`` mixes in seeded random
    decomposables to give a different but equally valid choice.
    """
    tau = f.origin if tau is None else f.cone(tau)
    need = required_cap(f, tau)
    if cap is None:
        cap = need
    elif cap < need:
        raise CapTooSmall(f"cap {cap} is below the required {need}", witness={"cap": cap, "required": need})
    n = f.ambient_dim
    rng = random.Random(seed)
    base = FreeModule(cone_ring(f, tau), (0,), cap, n)
    sh = Sheaf(f, {tau.id: base}, {}, cap)
    gens = {tau.id: GradedDims({0: 1})}
    lifts: dict[int, list] = {}
    star = sorted((f.cones[c] for c in f.star(tau).ids), key=lambda c: (c.dim, c.id))
    for rho in star:
        if rho.id == tau.id:
            continue
        bd = sections(sh, f.boundary(rho))
        mg = minimal_generators(bd.module)
        if mg.near_cap:
            raise CapTooSmall("boundary sections have generators near the cap",
                              witness={"cone": rho.id, "generators": mg.dims.to_json(), "cap": cap})
        degrees: list[int] = []
        rows_by_gen: list[tuple[int, fmpq_mat]] = []
        for d in sorted(mg.dims.coeffs):
            picked = generator_vectors(bd.module, d, policy=policy, rng=rng)
            ambient = picked * bd.module.basis(d).rows
            for i in range(picked.nrows()):
                degrees.append(d)
                rows_by_gen.append((d, la.row(ambient, i)))
        stalk = FreeModule(cone_ring(f, rho), tuple(degrees), cap, n)
        sh.stalks[rho.id] = stalk
        for p in f.facet_ids(rho):
            target = sh.stalk(p)
            if target.is_zero():
                continue
            images = [bd.component(v, p, d) for d, v in rows_by_gen]
            sh.restrictions[(p, rho.id)] = FreeRestriction(stalk, target, images)
        gens[rho.id] = GradedDims({d: degrees.count(d) for d in set(degrees)})
        lifts[rho.id] = [v for _, v in rows_by_gen]
        sh._res_cache.clear()
    return MinimalSheaf(sh, tau.id, gens, lifts, policy)


def verify_minimal(F: Sheaf, tau=None) -> Check:
    """Support in Star(tau), nonzero at tau, locally free, and every stalk off tau
    maps isomorphically onto boundary sections modulo decomposables."""
    f = F.fan
    tau = f.origin if tau is None else f.cone(tau)
    star = f.star(tau).ids
    outside = sorted(c for c in F.support if c not in star)
    if outside:
        return Check(False, {"reason": "support", "cone": outside[0]})
    if F.stalk(tau).is_zero():
        return Check(False, {"reason": "zero at base", "cone": tau.id})
    ok, table = is_locally_free(F)
    if not ok:
        bad = next(c for c, r in table.items() if not r.free)
        return Check(False, {"reason": "not free", "cone": bad})
    for rho in sorted((f.cones[c] for c in star), key=lambda c: (c.dim, c.id)):
        if rho.id == tau.id:
            continue
        bd, res = boundary_map(F, rho)
        own = minimal_generators(F.stalk(rho)).dims
        theirs = minimal_generators(bd.module).dims
        for d in range(0, F.cap + 1):
            target = bd.module.dim(d)
            if target == 0:
                if own[d]:
                    return Check(False, {"reason": "not injective", "cone": rho.id, "degree": d})
                continue
            dec = bd.module.decomposables(d)
            img = res.matrix(d).transpose()
            span = la.rank(la.vstack([dec.rows, img], ncols=target)) if len(dec) else la.rank(img)
            if span < target:
                return Check(False, {"reason": "not surjective", "cone": rho.id, "degree": d})
            if own[d] != theirs[d]:
                return Check(False, {"reason": "not injective", "cone": rho.id, "degree": d})
    return Check(True)
