"""Splitting sheaves into minimal sheaves, pushforward along subdivisions,
and the inequalities that follow."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg as la
from .errors import NegativeMultiplicity, NotInCategory
from .fan import Fan, SubdivisionMap, subdivision_map
from .graded import GradedDims, GradedMap, Polynomial, minimal_generators
from .ihlib import global_cap, ih
from .minimal import MinimalSheaf, minimal_sheaf, required_cap
from .sheaf import Sheaf, global_sections, is_flabby, is_locally_free, sections, star_restriction


@dataclass
class Decomposition:
    summands: list[tuple[int, int, int]]  # (base cone, shift, multiplicity)
    source: Sheaf
    bases: dict = field(default_factory=dict, repr=False)  # cone -> MinimalSheaf used

    def multiplicity(self, cone: int, shift: int) -> int:
        return sum(m for c, t, m in self.summands if c == cone and t == shift)

    def graded_multiplicity(self, cone: int) -> GradedDims:
        """V_cone as generator degrees: a summand L(t) contributes degree -t."""
        out: dict[int, int] = {}
        for c, t, m in self.summands:
            if c == cone:
                out[-t] = out.get(-t, 0) + m
        return GradedDims(out)

    def to_json(self) -> list[dict]:
        return [{"cone": c, "shift": t, "mult": m} for c, t, m in self.summands]

    def as_set(self) -> set:
        return set(self.summands)


def _minimal_at(f: Fan, tau: int, cap: int, cache: dict) -> MinimalSheaf:
    L = cache.get(tau)
    if L is None:
        L = cache[tau] = minimal_sheaf(f, tau, cap=max(cap, required_cap(f, tau)))
    return L


def decompose(F: Sheaf, check: bool = True) -> Decomposition:
    """Multiplicities V_sigma from stalk generator counts, cones by (dim, id).

    dim Fbar_sigma^(d) = sum over tau <= sigma and e of
    dim (L^tau)bar_sigma^(d-e) * dim V_tau^(e); the system is triangular.
    """
    f = F.fan
    if check:
        fl = is_flabby(F)
        if not fl:
            raise NotInCategory("sheaf is not flabby", witness=fl.witness)
        ok, table = is_locally_free(F)
        if not ok:
            bad = next(c for c, r in table.items() if not r.free)
            raise NotInCategory("sheaf is not locally free", witness={"cone": bad})
    bars = {c.id: minimal_generators(F.stalk(c)).dims for c in f.cones}
    cache: dict[int, MinimalSheaf] = {}
    V: dict[int, GradedDims] = {}
    for s in sorted(f.cones, key=lambda c: (c.dim, c.id)):
        need = dict(bars[s.id].coeffs)
        for t, vt in V.items():
            if not f.cones[t].rays < s.rays:
                continue
            gl = _minimal_at(f, t, F.cap, cache).generators.get(s.id, GradedDims())
            for e, m in vt.items():
                for k, c in gl.items():
                    need[e + k] = need.get(e + k, 0) - m * c
        if any(v < 0 for v in need.values()):
            raise NegativeMultiplicity("negative multiplicity", witness={"cone": s.id, "remainder": need})
        need = {k: v for k, v in need.items() if v}
        if need:
            V[s.id] = GradedDims(need)
    summands = sorted(((c, -e, m) for c, v in V.items() for e, m in v.items()),
                      key=lambda x: (f.cones[x[0]].dim, x[0], -x[1]))
    dec = Decomposition(summands, F, cache)
    if not reconstruction_holds(dec):
        raise NegativeMultiplicity("decomposition does not reproduce the stalks")
    return dec


def reconstruction_holds(dec: Decomposition) -> bool:
    F = dec.source
    f = F.fan
    for s in f.cones:
        total: dict[int, int] = {}
        for c, t, m in dec.summands:
            if not f.cones[c].rays <= s.rays:
                continue
            gl = GradedDims({0: 1}) if c == s.id else _minimal_at(f, c, F.cap, dec.bases).generators.get(s.id, GradedDims())
            for k, x in gl.items():
                total[k - t] = total.get(k - t, 0) + m * x
        if GradedDims(total) != minimal_generators(F.stalk(s)).dims:
            return False
    return True


def pushforward(m: SubdivisionMap, F: Sheaf) -> Sheaf:
    """Stalk at a coarse cone = sections of F over the fine cones mapping into it."""
    coarse = m.coarse
    secs = {c.id: sections(F, m.preimage(c)) for c in coarse.cones}
    stalks = {c: s.module for c, s in secs.items()}
    res = {}
    for t, s in coarse.covers:
        big, small = secs[s], secs[t]

        def mat(d, big=big, small=small):
            b = big.module.basis(d)
            offs = big.total.offsets(d)
            cols = []
            for c in small.cones:
                i = big.cones.index(c)
                cols.extend(range(offs[i], offs[i] + big.total.mods[i].dim(d)))
            part = la.select_cols(b.rows, cols)
            return small.module.basis(d).coords(part).transpose()

        res[(t, s)] = GradedMap(stalks[s], stalks[t], mat)
    return Sheaf(coarse, stalks, res, F.cap)


def decomposition_theorem_report(fine: Fan, coarse: Fan, cap: int | None = None) -> dict:
    """Push the minimal sheaf of the fine fan forward, split it, and compare ih."""
    m = subdivision_map(fine, coarse)
    cap = max(global_cap(fine, cap), global_cap(coarse, cap))
    r_fine = ih(fine, cap)
    r_coarse = ih(coarse, cap)
    push = pushforward(m, r_fine.sheaf.sheaf)
    dec = decompose(push)
    o = coarse.origin.id
    checks = [
        {"name": "pushforward sections agree",
         "pass": global_sections(push).hilbert() == r_fine.sections.hilbert()},
        {"name": "contains the minimal sheaf once", "pass": dec.multiplicity(o, 0) == 1},
        {"name": "ih dominates", "pass": r_fine.ih.dominates(r_coarse.ih)},
    ]
    return {"decomposition": dec.to_json(), "ih_fine": r_fine.ih.to_json(),
            "ih_coarse": r_coarse.ih.to_json(), "checks": checks}


def kalai_check(f: Fan, tau, cap: int | None = None) -> dict:
    """ip(sigma) >= ip(tau) * ip(Star(tau)) for the fan generated by one cone sigma."""
    sigma = max(f.cones, key=lambda c: c.dim)
    t = f.cone(tau)
    cap = cap if cap is not None else required_cap(f)
    L = minimal_sheaf(f, cap=cap)
    restricted = star_restriction(L.sheaf, t)
    dec = decompose(restricted)
    V = dec.graded_multiplicity(t.id)
    ip_tau = Polynomial(L.generators[t.id].coeffs)
    ip_star = Polynomial(minimal_sheaf(f, t, cap=cap).generators[sigma.id].coeffs)
    ip_sigma = Polynomial(L.generators[sigma.id].coeffs)
    rhs = ip_tau * ip_star
    checks = [
        {"name": "multiplicity at tau equals ip(tau)", "pass": Polynomial(V.coeffs) == ip_tau},
        {"name": "inequality", "pass": ip_sigma.dominates(rhs)},
    ]
    return {"cone": sigma.id, "face": t.id, "ip_sigma": ip_sigma.to_json(), "ip_tau": ip_tau.to_json(),
            "ip_star": ip_star.to_json(), "product": rhs.to_json(), "checks": checks}
