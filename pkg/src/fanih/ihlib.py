"""Intersection cohomology of fans and its numerical checks."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from flint import fmpq_mat

from . import linalg as la
from .errors import CheckFailed, NotInCategory, NotStrictlyConvex
from .fan import (
    Fan,
    PiecewiseLinearFunction,
    _dot,
    boundary_projection,
    is_complete,
)
from .graded import FreeModule, GradedDims, Polynomial, generator_vectors, minimal_generators
from .minimal import MinimalSheaf, minimal_sheaf, required_cap
from .sheaf import Sections, costalk, global_sections

Q2_MINUS_1 = Polynomial({2: 1, 0: -1})


def global_cap(f: Fan, cap: int | None = None) -> int:
    need = max(2 * f.ambient_dim + 2, required_cap(f))
    return need if cap is None else cap


@dataclass
class IHResult:
    ih: Polynomial
    generators: GradedDims
    sections: Sections
    sheaf: MinimalSheaf

    def to_json(self) -> dict:
        return {"ih": self.ih.to_json(), "ih_pretty": str(self.ih)}


def ih(f: Fan, cap: int | None = None, sheaf: MinimalSheaf | None = None) -> IHResult:
    """Poincare polynomial of global sections of the minimal sheaf modulo A^+."""
    cap = global_cap(f, cap)
    L = sheaf or minimal_sheaf(f, cap=cap)
    G = global_sections(L.sheaf)
    gens = minimal_generators(G.module)
    if gens.near_cap:
        from .errors import CapTooSmall
        raise CapTooSmall("global generators reach the cap", witness={"cap": L.cap, "generators": gens.dims.to_json()})
    return IHResult(Polynomial(gens.dims.coeffs), gens.dims, G, L)


def ip(f: Fan, sigma, cap: int | None = None) -> Polynomial:
    """Generator polynomial of the minimal sheaf's stalk at sigma, computed on [sigma]."""
    s = f.cone(sigma)
    if s.dim <= 1:
        return Polynomial.one()
    sub = f.subfan([s])
    top = sub.cone_by_rays(s.rays)
    L = minimal_sheaf(sub, cap=cap if cap is not None else required_cap(sub))
    return Polynomial(L.generators[top.id].coeffs)


def ip_table(f: Fan, cap: int | None = None, jobs: int = 1) -> dict[int, Polynomial]:
    cones = list(f.cones)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            vals = list(ex.map(lambda c: ip(f, c, cap), cones))
    else:
        vals = [ip(f, c, cap) for c in cones]
    return {c.id: v for c, v in zip(cones, vals)}


def ih_local(f: Fan, sigma, cap: int | None = None) -> Polynomial:
    """ih of the complete fan obtained by projecting the boundary of sigma."""
    s = f.cone(sigma)
    if s.dim <= 1:
        return Polynomial.one()
    return ih(boundary_projection(f, s).fan, cap).ih


# ---------------------------------------------------------------------------
# Multiplication by a conewise-linear function
# ---------------------------------------------------------------------------

def _stalk_multiplication(L: MinimalSheaf, l: PiecewiseLinearFunction, c: int, d: int) -> fmpq_mat:
    m = L.stalk(c)
    if not isinstance(m, FreeModule) or m.dim(d) == 0:
        return fmpq_mat(m.dim(d + 2), m.dim(d))
    form = m.ring.restrict_form(l.form_on(c))
    return m.mul_form(form, d)


def section_multiplication(res: IHResult, l: PiecewiseLinearFunction, d: int) -> fmpq_mat:
    """Multiplication by l on global sections, degree d -> d+2, in section coordinates
    (row-vector convention: result rows are images of basis rows)."""
    G = res.sections
    src = G.module.basis(d)
    tgt = G.module.basis(d + 2)
    if len(src) == 0 or len(tgt) == 0:
        return fmpq_mat(len(src), len(tgt))
    big = la.block_diag([_stalk_multiplication(res.sheaf, l, c, d) for c in G.cones])
    return tgt.coords(src.rows * big.transpose())


class IHOperator:
    """Multiplication by l descended to IH = Gamma / A^+ Gamma."""

    def __init__(self, res: IHResult, l: PiecewiseLinearFunction):
        self.res = res
        self.l = l
        self._mul = {}

    def mul(self, d: int) -> fmpq_mat:
        r = self._mul.get(d)
        if r is None:
            r = self._mul[d] = section_multiplication(self.res, self.l, d)
        return r

    def power_rank(self, source: int, k: int) -> int:
        """Rank of l^k : IH^(source) -> IH^(source + 2k)."""
        M = self.res.sections.module
        gens = generator_vectors(M, source)
        if gens.nrows() == 0:
            return 0
        v = gens
        for j in range(k):
            v = v * self.mul(source + 2 * j)
        target = source + 2 * k
        dec = M.decomposables(target)
        if len(dec) == 0:
            return la.rank(v)
        return la.rank(la.vstack([dec.rows, v])) - len(dec)


def convexity(l: PiecewiseLinearFunction) -> str:
    """Wall test: compare the two adjacent linear pieces at an interior point of each side."""
    f = l.fan
    n = f.ambient_dim
    strict, weak = True, True
    for w in f.cones:
        if w.dim != n - 1:
            continue
        cof = f.cofacets(w)
        if len(cof) != 2:
            continue
        a, b = cof
        for s, t in ((a, b), (b, a)):
            p = f.interior_point(t)
            diff = _dot(l.forms[s.id], p) - _dot(l.forms[t.id], p)
            if diff >= 0:
                strict = False
            if diff > 0:
                weak = False
    if strict:
        return "strictly_convex"
    return "convex" if weak else "neither"


def lefschetz_ranks(f: Fan, l: PiecewiseLinearFunction, cap: int | None = None,
                    res: IHResult | None = None) -> dict:
    """Ranks of l^i : IH^(n-i) -> IH^(n+i) and of single steps l : IH^(j) -> IH^(j+2)."""
    if not is_complete(f):
        raise NotInCategory("fan is not complete")
    kind = convexity(l)
    if kind != "strictly_convex":
        raise NotStrictlyConvex(f"function is {kind}", witness={"convexity": kind})
    res = res or ih(f, cap)
    op = IHOperator(res, l)
    n = f.ambient_dim
    h = res.ih
    rows = []
    for i in range(n % 2, n + 1, 2):
        src, tgt = n - i, n + i
        rk = op.power_rank(src, i)
        rows.append({"i": i, "source_degree": src, "target_degree": tgt,
                     "source_dim": h[src], "target_dim": h[tgt], "rank": rk,
                     "bijective": rk == h[src] == h[tgt]})
    steps = []
    for j in range(0, 2 * n, 2):
        rk = op.power_rank(j, 1)
        steps.append({"source_degree": j, "rank": rk,
                      "injective": rk == h[j], "surjective": rk == h[j + 2]})
    ok = all(r["bijective"] for r in rows)
    return {"ih": h.to_json(), "powers": rows, "steps": steps, "hard_lefschetz": ok}


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def _check(name: str, ok: bool, witness=None) -> dict:
    return {"name": name, "pass": bool(ok), "witness": None if ok else witness}


def ip_quotient_check(f: Fan, sigma, cap: int | None = None) -> dict:
    """IH of the projected boundary modulo l * IH has the dimensions of ip(sigma)."""
    s = f.cone(sigma)
    expected = ip(f, s, cap)
    if s.dim < 2:
        return {"ip": expected.to_json(), "quotient": expected.to_json(),
                "checks": [_check("quotient equals ip", True)]}
    bp = boundary_projection(f, s)
    res = ih(bp.fan, cap)
    op = IHOperator(res, bp.function)
    quot = {}
    for j, c in res.ih.items():
        image = op.power_rank(j - 2, 1) if j >= 2 else 0
        if c - image:
            quot[j] = c - image
    quot = Polynomial(quot)
    bad = next((j for j in sorted(set(quot.coeffs) | set(expected.coeffs)) if quot[j] != expected[j]), None)
    return {"ip": expected.to_json(), "boundary_ih": res.ih.to_json(), "quotient": quot.to_json(),
            "checks": [_check("quotient equals ip", bad is None, {"degree": bad})]}


def global_local_sum(f: Fan, table: dict[int, Polynomial]) -> Polynomial:
    n = f.ambient_dim
    total = Polynomial()
    for c in f.cones:
        total = total + (Q2_MINUS_1 ** (n - c.dim)) * table[c.id]
    return total


def global_local_check(f: Fan, cap: int | None = None, res: IHResult | None = None) -> dict:
    """ih(fan) equals the sum over cones of (q^2 - 1)^(n - dim) ip(cone)."""
    if not is_complete(f):
        raise NotInCategory("fan is not complete")
    res = res or ih(f, cap)
    table = {c: Polynomial(g.coeffs) for c, g in res.sheaf.generators.items()}
    rhs = global_local_sum(f, table)
    ok = rhs == res.ih
    return {"ih": res.ih.to_json(), "local_sum": rhs.to_json(),
            "checks": [_check("global equals local sum", ok, {"ih": str(res.ih), "sum": str(rhs)})]}


def duality_check(f: Fan, cap: int | None = None, res: IHResult | None = None) -> dict:
    """Palindromic ih (complete fans) and costalk generators equal to reversed stalk generators."""
    checks = []
    res = res or ih(f, cap)
    h = res.ih
    n = f.ambient_dim
    if is_complete(f):
        bad = next((j for j in range(0, 2 * n + 1) if h[j] != h[2 * n - j]), None)
        checks.append(_check("palindrome", bad is None, {"degree": bad}))
        checks.append(_check("ends equal one", h[0] == 1 and h[2 * n] == 1, {"ih": h.to_json()}))
    odd = [j for j in h.coeffs if j % 2 or j < 0 or j > 2 * n]
    checks.append(_check("even support in [0, 2n]", not odd, {"degrees": odd}))
    L = res.sheaf
    for c in f.cones:
        stalk = L.generators[c.id]
        co = minimal_generators(costalk(L.sheaf, c)).dims
        want = Polynomial(stalk.coeffs).reversed_about(2 * c.dim)
        ok = Polynomial(co.coeffs) == want
        checks.append(_check(f"costalk symmetry at cone {c.id}", ok,
                             {"cone": c.id, "costalk": co.to_json(), "expected": want.to_json()}))
    return {"ih": h.to_json(), "checks": checks}


def hard_lefschetz_prediction(f: Fan, sigma, cap: int | None = None) -> dict:
    """Compare ip_j(sigma) with ih_j(sigma) - ih_(j-2)(sigma) for j < dim sigma.

    The identity is a consequence of the Hard Lefschetz property for the
    projected boundary, so it is reported rather than asserted.
    """
    s = f.cone(sigma)
    p = ip(f, s, cap)
    loc = ih_local(f, s, cap)
    pred = {}
    for j in range(0, s.dim, 2):
        v = loc[j] - loc[j - 2]
        if v:
            pred[j] = v
    pred = Polynomial(pred)
    return {"cone": s.id, "ip": p.to_json(), "ih_local": loc.to_json(), "predicted": pred.to_json(),
            "agrees": pred == p}


def support_function(f: Fan) -> PiecewiseLinearFunction:
    """Ray values all one; strictly convex on face fans of polytopes with the
    origin in the interior."""
    return PiecewiseLinearFunction.from_ray_values(f, [1] * len(f.rays))
