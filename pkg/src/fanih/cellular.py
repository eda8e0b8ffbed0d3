"""Cellular cochain complex of a sheaf and its degreewise cohomology."""

from __future__ import annotations

from dataclasses import dataclass

from flint import fmpq_mat

from . import linalg as la
from .errors import CheckFailed, NotInCategory, SignInconsistency
from .fan import incidence_sign, is_complete
from .graded import DirectSumModule, GradedDims, GradedMap, SubModule, check_free
from .sheaf import Sheaf, global_sections, is_flabby, is_locally_free


@dataclass
class CellComplex:
    sheaf: Sheaf
    cones: list[list[int]]  # cones[i] = ids of the cones of dimension n - i
    components: list[DirectSumModule]
    differentials: list[GradedMap]  # differentials[i]: C^i -> C^(i+1)

    @property
    def length(self) -> int:
        return len(self.components)

    def dims(self, d: int) -> list[int]:
        return [c.dim(d) for c in self.components]


def cellular_complex(F: Sheaf, verify: bool = True) -> CellComplex:
    """C^i is the sum of stalks over cones of dimension n - i; the differential
    restricts to facets with incidence signs."""
    f = F.fan
    n = f.ambient_dim
    cones = [[c.id for c in f.cones if c.dim == n - i] for i in range(n + 1)]
    comps = [DirectSumModule([F.stalk(c) for c in cs], n, F.cap) for cs in cones]
    diffs = []
    for i in range(n):
        src_ids, tgt_ids = cones[i], cones[i + 1]
        src, tgt = comps[i], comps[i + 1]

        def mat(d, src_ids=src_ids, tgt_ids=tgt_ids, src=src, tgt=tgt):
            out = fmpq_mat(tgt.dim(d), src.dim(d))
            so, to = src.offsets(d), tgt.offsets(d)
            tpos = {c: k for k, c in enumerate(tgt_ids)}
            for a, s in enumerate(src_ids):
                if F.stalk(s).dim(d) == 0:
                    continue
                for t in f.facet_ids(s):
                    b = tpos[t]
                    if F.stalk(t).dim(d) == 0:
                        continue
                    sign = incidence_sign(f, t, s)
                    for (r, c), x in la._nonzeros(F.restriction(t, s).matrix(d)):
                        out[to[b] + r, so[a] + c] = sign * x
            return out

        diffs.append(GradedMap(src, tgt, mat))
    cx = CellComplex(F, cones, comps, diffs)
    if verify:
        for i in range(n - 1):
            for d in range(F.cap + 1):
                if not la.is_zero(diffs[i + 1].matrix(d) * diffs[i].matrix(d)):
                    raise SignInconsistency("d o d is not zero", witness={"step": i, "degree": d})
    return cx


def complex_cohomology(C: CellComplex) -> dict[int, GradedDims]:
    """dim H^i in each degree, by rank-nullity."""
    cap = C.sheaf.cap
    out = {}
    for i in range(C.length):
        h = {}
        for d in range(cap + 1):
            k = C.components[i].dim(d)
            if k == 0:
                continue
            out_rank = la.rank(C.differentials[i].matrix(d)) if i < len(C.differentials) else 0
            in_rank = la.rank(C.differentials[i - 1].matrix(d)) if i > 0 else 0
            h[d] = k - out_rank - in_rank
        out[i] = GradedDims(h)
    return out


def euler_characteristic(C: CellComplex) -> dict[int, int]:
    cap = C.sheaf.cap
    return {d: sum((-1) ** i * c.dim(d) for i, c in enumerate(C.components)) for d in range(cap + 1)}


def zeroth_cohomology(C: CellComplex) -> SubModule:
    """ker d^0 as an A-submodule of C^0."""
    c0 = C.components[0]
    if not C.differentials:
        return SubModule(c0, lambda d: la.Basis(la.identity(c0.dim(d)), list(range(c0.dim(d))), c0.dim(d)))
    return SubModule(c0, lambda d: la.nullspace(C.differentials[0].matrix(d)))


def acyclicity_report(F: Sheaf) -> dict:
    """Higher cohomology vanishes and H^0 is free, for flabby locally free
    sheaves on complete fans."""
    f = F.fan
    if not is_complete(f):
        raise NotInCategory("fan is not complete")
    fl = is_flabby(F)
    if not fl:
        raise NotInCategory("sheaf is not flabby", witness=fl.witness)
    ok, table = is_locally_free(F)
    if not ok:
        bad = next(c for c, r in table.items() if not r.free)
        raise NotInCategory("sheaf is not locally free", witness={"cone": bad})
    C = cellular_complex(F)
    coh = complex_cohomology(C)
    for i in range(1, C.length):
        for d, v in coh[i].items():
            if v:
                raise CheckFailed("higher cellular cohomology is nonzero", witness={"i": i, "degree": d})
    h0 = zeroth_cohomology(C)
    free = check_free(h0, f.ambient_dim)
    if not free:
        raise CheckFailed("H^0 is not free", witness=free.evidence)
    return {
        "acyclic": True,
        "H0_hilbert": h0.hilbert().to_json(),
        "free_gens": free.gens.to_json(),
        "witness": None,
    }


def h0_matches_sections(F: Sheaf) -> bool:
    """On a complete fan dim H^0 equals dim of global sections in each degree."""
    C = cellular_complex(F)
    return complex_cohomology(C)[0] == global_sections(F).hilbert()
