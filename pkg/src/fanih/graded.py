"""Graded modules over A = Sym(V*), linear forms in degree 2.

Modules are handled degree by degree up to an even cap D: each module
knows the dimension of every homogeneous piece and the matrices by which
the coordinate forms x_1..x_n act.  Matrices act on column vectors, so
``act(i, d)`` has shape ``dim(d+2) x dim(d)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat

from . import linalg as la
from .errors import CapTooSmall


# ---------------------------------------------------------------------------
# Polynomials in q
# ---------------------------------------------------------------------------

class Polynomial:
    """Integer Laurent polynomial in q; equality is coefficientwise."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = dict(enumerate(coeffs))
        self.coeffs = {int(k): int(v) for k, v in coeffs.items() if v}

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def monomial(cls, e: int, c: int = 1):
        return cls({e: c})

    def __getitem__(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    def items(self):
        return sorted(self.coeffs.items())

    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, dict):
            return self.coeffs == Polynomial(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in Polynomial._coerce(other).coeffs.items():
            out[k] = out.get(k, 0) + v
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-Polynomial._coerce(other))

    def __rsub__(self, other):
        return Polynomial._coerce(other) - self

    def __mul__(self, other):
        other = Polynomial._coerce(other)
        out: dict[int, int] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.one()
        for _ in range(k):
            out = out * self
        return out

    @staticmethod
    def _coerce(x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, int):
            return Polynomial({0: x})
        if isinstance(x, dict):
            return Polynomial(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def dominates(self, other) -> bool:
        """Coefficientwise ``self >= other``."""
        other = Polynomial._coerce(other)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self[k] >= other[k] for k in keys)

    def shifted(self, t: int) -> "Polynomial":
        """Multiply by q^t."""
        return type(self)({k + t: v for k, v in self.coeffs.items()})

    def in_q2(self) -> "Polynomial":
        """Substitute t -> q^2."""
        return Polynomial({2 * k: v for k, v in self.coeffs.items()})

    def reversed_about(self, pivot: int) -> "Polynomial":
        """Coefficient of q^j moved to q^(pivot - j)."""
        return type(self)({pivot - k: v for k, v in self.coeffs.items()})

    def truncated(self, cap: int) -> "Polynomial":
        return type(self)({k: v for k, v in self.coeffs.items() if k <= cap})

    def is_palindromic(self, center: int) -> bool:
        """Coefficients symmetric under j -> 2*center - j."""
        return all(self[2 * center - j] == v for j, v in self.coeffs.items())

    def to_json(self) -> dict:
        return {str(k): v for k, v in self.items()}

    @classmethod
    def from_json(cls, d: dict):
        return cls({int(k): int(v) for k, v in d.items()})

    def vector(self) -> list[int]:
        """Coefficients of q^0, q^1, ..., q^deg (nonnegative exponents only)."""
        return [self[k] for k in range(self.degree() + 1)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_json()})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, v in self.items():
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and abs(v) == 1:
                c = "" if v > 0 else "-"
            else:
                c = str(v)
            parts.append(f"{c}{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


class GradedDims(Polynomial):
    """Degree -> dimension map (generator counts, ranks)."""

    def __init__(self, coeffs=None):
        super().__init__(coeffs)
        if any(v < 0 for v in self.coeffs.values()):
            raise ValueError("graded dimensions must be nonnegative")

    def __neg__(self):
        return Polynomial({k: -v for k, v in self.coeffs.items()})

    def total(self) -> int:
        return sum(self.coeffs.values())

    def degrees(self) -> list[int]:
        out = []
        for k, v in self.items():
            out.extend([k] * v)
        return out


# ---------------------------------------------------------------------------
# Polynomial functions on a subspace
# ---------------------------------------------------------------------------

def _monomials(k: int, m: int) -> tuple[tuple[int, ...], ...]:
    if m < 0:
        return ()
    if k == 0:
        return ((),) if m == 0 else ()
    out = []
    for combo in itertools.combinations_with_replacement(range(k), m):
        e = [0] * k
        for j in combo:
            e[j] += 1
        out.append(tuple(e))
    return tuple(out)


class PolyRing:
    """Polynomial functions on W = span(basis) in the basis coordinates y_j.

    Degree ``m`` here is polynomial degree; the graded degree is ``2m``.
    Rings are interned by basis so caches are shared between sheaves.
    """

    _registry: dict = {}

    def __new__(cls, basis: Sequence[Sequence], n: int | None = None):
        key = (tuple(tuple(Fraction(x) for x in b) for b in basis), n if not basis else len(basis[0]))
        obj = cls._registry.get(key)
        if obj is None:
            obj = super().__new__(cls)
            obj.basis = key[0]
            obj.k = len(key[0])
            obj.n = key[1]
            obj._mono = {}
            obj._index = {}
            obj._cache = {}
            cls._registry[key] = obj
        return obj

    def monomials(self, m: int):
        r = self._mono.get(m)
        if r is None:
            r = self._mono[m] = _monomials(self.k, m)
            self._index[m] = {e: i for i, e in enumerate(r)}
        return r

    def index(self, m: int) -> dict:
        self.monomials(m)
        return self._index[m]

    def size(self, m: int) -> int:
        if m < 0:
            return 0
        if self.k == 0:
            return int(m == 0)
        return math.comb(m + self.k - 1, self.k - 1)

    def restrict_form(self, u: Sequence) -> tuple[Fraction, ...]:
        """Ambient linear form u, restricted to W, in y-coordinates."""
        return tuple(sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0)) for v in self.basis)

    def coordinate_form(self, i: int) -> tuple[Fraction, ...]:
        return tuple(v[i] for v in self.basis)

    def mul_form(self, c: Sequence, m: int) -> fmpq_mat:
        """Multiplication by the linear form sum c_j y_j, degree m -> m+1."""
        key = ("form", tuple(c), m)
        r = self._cache.get(key)
        if r is not None:
            return r
        src = self.monomials(m)
        idx = self.index(m + 1)
        out = fmpq_mat(self.size(m + 1), len(src))
        for col, e in enumerate(src):
            for j, cj in enumerate(c):
                if cj:
                    f = list(e)
                    f[j] += 1
                    out[idx[tuple(f)], col] = la.to_fmpq(cj)
        self._cache[key] = out
        return out

    def substitution(self, sub: "PolyRing") -> list[dict]:
        """Linear polynomials in the sub-ring's variables giving each y_j on sub."""
        key = ("subst", sub.basis)
        r = self._cache.get(key)
        if r is not None:
            return r
        if sub.k == 0:
            lins = [dict() for _ in range(self.k)]
        else:
            from .fan import coordinates
            m = coordinates(self.basis, sub.basis)  # sub.basis[l] = sum_j m[l][j] basis[j]
            lins = []
            for j in range(self.k):
                lin = {}
                for l in range(sub.k):
                    if m[l][j]:
                        e = [0] * sub.k
                        e[l] = 1
                        lin[tuple(e)] = la.to_fmpq(m[l][j])
                lins.append(lin)
        self._cache[key] = lins
        return lins

    def restrict_monomial(self, sub: "PolyRing", e: tuple) -> dict:
        """The monomial y^e restricted to the subspace of ``sub``, as a polynomial."""
        key = ("rmono", sub.basis, e)
        r = self._cache.get(key)
        if r is not None:
            return r
        if sum(e) == 0:
            r = {(0,) * sub.k: fmpq(1)}
        else:
            j = next(i for i, x in enumerate(e) if x)
            rest = list(e)
            rest[j] -= 1
            r = poly_mul(self.restrict_monomial(sub, tuple(rest)), self.substitution(sub)[j])
        self._cache[key] = r
        return r

    def restriction(self, sub: "PolyRing", m: int) -> fmpq_mat:
        """Restriction of degree-m polynomials to the subspace of ``sub``."""
        key = ("res", sub.basis, m)
        r = self._cache.get(key)
        if r is not None:
            return r
        src = self.monomials(m)
        idx = sub.index(m)
        out = fmpq_mat(sub.size(m), len(src))
        for col, e in enumerate(src):
            for f, x in self.restrict_monomial(sub, e).items():
                out[idx[f], col] = x
        self._cache[key] = out
        return out

    def poly_from_vector(self, vec: Sequence, m: int) -> dict:
        return {e: la.to_fmpq(x) for e, x in zip(self.monomials(m), vec) if x != 0}

    def vector_from_poly(self, p: dict, m: int) -> list:
        idx = self.index(m)
        out = [fmpq(0)] * self.size(m)
        for e, x in p.items():
            out[idx[e]] = x
        return out


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, x in p.items():
        for b, y in q.items():
            e = tuple(i + j for i, j in zip(a, b))
            out[e] = out.get(e, 0) + x * y
    return {e: x for e, x in out.items() if x != 0}


# ---------------------------------------------------------------------------
# Graded modules
# ---------------------------------------------------------------------------

class GradedModule:
    """Finite-dimensional truncation of a graded A-module.

    Subclasses provide ``dim(d)`` and ``act(i, d)``; degrees run over
    ``lo..cap`` and everything outside is zero.
    """

    n: int
    cap: int
    lo: int = 0

    def dim(self, d: int) -> int:
        raise NotImplementedError

    def act(self, i: int, d: int) -> fmpq_mat:
        raise NotImplementedError

    def degrees(self) -> range:
        return range(self.lo, self.cap + 1)

    def act_all(self, d: int) -> fmpq_mat:
        """``[act(0,d) | ... | act(n-1,d)]``: its column span is A^+ M in degree d+2."""
        return la.hstack([self.act(i, d) for i in range(self.n)], nrows=self.dim(d + 2))

    def decomposables(self, d: int) -> la.Basis:
        """Row basis of (A^+ M)^(d) in this module's coordinates."""
        if self.dim(d) == 0 or self.dim(d - 2) == 0 or d - 2 < self.lo:
            return la.Basis.empty(self.dim(d))
        return la.row_basis(self.act_all(d - 2).transpose())

    def is_zero(self) -> bool:
        return all(self.dim(d) == 0 for d in self.degrees())

    def hilbert(self) -> GradedDims:
        return GradedDims({d: self.dim(d) for d in self.degrees()})


class ExplicitModule(GradedModule):
    def __init__(self, n: int, dims: dict, acts: dict | None = None, cap: int | None = None, lo: int = 0):
        self.n = n
        self.dims = {int(k): int(v) for k, v in dims.items() if v}
        self.cap = cap if cap is not None else max(self.dims, default=0)
        self.lo = lo
        self.acts = acts or {}

    def dim(self, d: int) -> int:
        if d < self.lo or d > self.cap:
            return 0
        return self.dims.get(d, 0)

    def act(self, i: int, d: int) -> fmpq_mat:
        m = self.acts.get((i, d))
        if m is None:
            return fmpq_mat(self.dim(d + 2), self.dim(d))
        return m


class ZeroModule(ExplicitModule):
    def __init__(self, n: int, cap: int):
        super().__init__(n, {}, cap=cap)


def trivial_module(n: int, cap: int) -> ExplicitModule:
    """Q in degree 0 with A^+ acting by zero."""
    return ExplicitModule(n, {0: 1}, cap=cap)


class FreeModule(GradedModule):
    """Free module A_W (x) N over the polynomial functions on a subspace W.

    ``gens`` lists generator degrees (sorted).  A coordinate form of V acts
    through its restriction to W.  Degree-d vectors are concatenations,
    over generators, of coefficient vectors of polynomials of degree
    (d - deg g)/2.
    """

    def __init__(self, ring: PolyRing, gens: Sequence[int], cap: int, n: int | None = None):
        self.ring = ring
        self.gens = tuple(gens)
        self.cap = cap
        self.n = n if n is not None else ring.n
        self.lo = min(self.gens) if self.gens else 0
        self._acts = {}

    def blocks(self, d: int) -> list[tuple[int, int, int, int]]:
        """(generator index, polynomial degree, offset, size) for degree d."""
        out = []
        off = 0
        for g, e in enumerate(self.gens):
            diff = d - e
            if diff < 0 or diff % 2:
                continue
            m = diff // 2
            s = self.ring.size(m)
            if s:
                out.append((g, m, off, s))
                off += s
        return out

    def dim(self, d: int) -> int:
        if d > self.cap:
            return 0
        return sum(b[3] for b in self.blocks(d))

    def mul_form(self, c: Sequence, d: int) -> fmpq_mat:
        """Multiplication by a linear form on W (y-coordinates), degree d -> d+2."""
        src = self.blocks(d)
        tgt = {b[0]: b for b in self.blocks(d + 2)}
        out = fmpq_mat(self.dim(d + 2), self.dim(d))
        if self.dim(d) == 0 or self.dim(d + 2) == 0:
            return out
        for g, m, off, s in src:
            _, _, toff, _ = tgt[g]
            blk = self.ring.mul_form(c, m)
            for (i, j), x in la._nonzeros(blk):
                out[toff + i, off + j] = x
        return out

    def act(self, i: int, d: int) -> fmpq_mat:
        r = self._acts.get((i, d))
        if r is None:
            r = self._acts[(i, d)] = self.mul_form(self.ring.coordinate_form(i), d)
        return r

    def generator_vector(self, g: int) -> fmpq_mat:
        d = self.gens[g]
        v = fmpq_mat(1, self.dim(d))
        for gi, m, off, s in self.blocks(d):
            if gi == g:
                v[0, off] = 1
        return v


class DirectSumModule(GradedModule):
    def __init__(self, mods: Sequence[GradedModule], n: int, cap: int):
        self.mods = list(mods)
        self.n = n
        self.cap = cap
        self.lo = min((m.lo for m in self.mods), default=0)

    def offsets(self, d: int) -> list[int]:
        out, off = [], 0
        for m in self.mods:
            out.append(off)
            off += m.dim(d)
        return out

    def dim(self, d: int) -> int:
        return sum(m.dim(d) for m in self.mods)

    def act(self, i: int, d: int) -> fmpq_mat:
        return la.block_diag([m.act(i, d) for m in self.mods])


class SubModule(GradedModule):
    """A-submodule of ``parent`` given by a row basis per degree."""

    def __init__(self, parent: GradedModule, basis_fn):
        self.parent = parent
        self.n = parent.n
        self.cap = parent.cap
        self.lo = parent.lo
        self._basis_fn = basis_fn
        self._bases = {}
        self._acts = {}

    def basis(self, d: int) -> la.Basis:
        b = self._bases.get(d)
        if b is None:
            if d < self.lo or d > self.cap:
                b = la.Basis.empty(self.parent.dim(d))
            else:
                b = self._basis_fn(d)
            self._bases[d] = b
        return b

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def act(self, i: int, d: int) -> fmpq_mat:
        r = self._acts.get((i, d))
        if r is None:
            src = self.basis(d)
            img = src.rows * self.parent.act(i, d).transpose()
            r = self._acts[(i, d)] = self.basis(d + 2).coords(img).transpose()
        return r

    def embed(self, d: int) -> fmpq_mat:
        """Basis vectors as rows in parent coordinates."""
        return self.basis(d).rows


class ShiftedModule(GradedModule):
    """M(t) with M(t)_k = M_{k+t}."""

    def __init__(self, m: GradedModule, t: int):
        self.m = m
        self.t = t
        self.n = m.n
        self.cap = m.cap - t
        self.lo = m.lo - t

    def dim(self, d: int) -> int:
        return self.m.dim(d + self.t)

    def act(self, i: int, d: int) -> fmpq_mat:
        return self.m.act(i, d + self.t)


def shift(m: GradedModule, t: int) -> GradedModule:
    if isinstance(m, ShiftedModule):
        return m.m if m.t + t == 0 else ShiftedModule(m.m, m.t + t)
    return m if t == 0 else ShiftedModule(m, t)


# ---------------------------------------------------------------------------
# Graded maps
# ---------------------------------------------------------------------------

class GradedMap:
    """Degree-preserving A-linear map; ``matrix(d)`` is target.dim(d) x source.dim(d)."""

    def __init__(self, source: GradedModule, target: GradedModule, fn=None):
        self.source = source
        self.target = target
        self._fn = fn
        self._mats = {}

    def matrix(self, d: int) -> fmpq_mat:
        r = self._mats.get(d)
        if r is None:
            if self.source.dim(d) == 0 or self.target.dim(d) == 0:
                r = fmpq_mat(self.target.dim(d), self.source.dim(d))
            else:
                r = self._compute(d)
            self._mats[d] = r
        return r

    def _compute(self, d: int) -> fmpq_mat:
        return self._fn(d)

    def then(self, other: "GradedMap") -> "GradedMap":
        """``other . self``."""
        return GradedMap(self.source, other.target, lambda d: other.matrix(d) * self.matrix(d))


class ZeroMap(GradedMap):
    def __init__(self, source, target):
        super().__init__(source, target, lambda d: fmpq_mat(target.dim(d), source.dim(d)))


def identity_map(m: GradedModule) -> GradedMap:
    return GradedMap(m, m, lambda d: la.identity(m.dim(d)))


class FreeRestriction(GradedMap):
    """A_sigma-linear map between free modules determined by generator images.

    ``images[g]`` is a 1-row matrix in target coordinates at degree gens[g];
    polynomial coefficients are pulled back along the restriction from
    span(sigma) to span(tau).
    """

    def __init__(self, source: FreeModule, target: FreeModule, images: Sequence[fmpq_mat]):
        super().__init__(source, target)
        self.images = list(images)
        self._split = {}

    def _image_polys(self, g: int) -> dict:
        r = self._split.get(g)
        if r is None:
            src, tgt = self.source, self.target
            d = src.gens[g]
            vec = self.images[g]
            ent = vec.entries() if vec.ncols() else []
            r = {}
            for h, m, off, s in tgt.blocks(d):
                p = tgt.ring.poly_from_vector(ent[off:off + s], m)
                if p:
                    r[h] = p
            self._split[g] = r
        return r

    def _compute(self, d: int) -> fmpq_mat:
        src, tgt = self.source, self.target
        out = fmpq_mat(tgt.dim(d), src.dim(d))
        tblocks = {b[0]: b for b in tgt.blocks(d)}
        for g, m, off, s in src.blocks(d):
            polys = self._image_polys(g)
            if not polys:
                continue
            for col, e in enumerate(src.ring.monomials(m)):
                r = src.ring.restrict_monomial(tgt.ring, e)
                if not r:
                    continue
                for h, p in polys.items():
                    hb = tblocks.get(h)
                    if hb is None:
                        continue
                    _, hm, hoff, _ = hb
                    idx = tgt.ring.index(hm)
                    for f, x in poly_mul(r, p).items():
                        out[hoff + idx[f], off + col] += x
        return out


def intertwines(f: GradedMap, degrees: Iterable[int] | None = None) -> bool:
    """target.act_i . f_d == f_{d+2} . source.act_i for all i and d."""
    src, tgt = f.source, f.target
    if degrees is None:
        degrees = range(min(src.lo, tgt.lo), min(src.cap, tgt.cap) - 1)
    for d in degrees:
        for i in range(src.n):
            if tgt.act(i, d) * f.matrix(d) != f.matrix(d + 2) * src.act(i, d):
                return False
    return True


def commutes(m: GradedModule) -> bool:
    """Check act_i act_j = act_j act_i in every degree."""
    for d in m.degrees():
        if d + 4 > m.cap:
            break
        for i, j in itertools.combinations(range(m.n), 2):
            if m.act(i, d + 2) * m.act(j, d) != m.act(j, d + 2) * m.act(i, d):
                return False
    return True


# ---------------------------------------------------------------------------
# Generators, Hilbert series, freeness
# ---------------------------------------------------------------------------

@dataclass
class Generators:
    dims: GradedDims
    near_cap: bool  # nonzero generators in degrees (cap-2, cap]


def minimal_generators(m: GradedModule) -> Generators:
    """Graded dimensions of M / A^+ M (Nakayama), with a cap warning."""
    out = {}
    for d in m.degrees():
        k = m.dim(d)
        if k == 0:
            continue
        g = k - len(m.decomposables(d))
        if g:
            out[d] = g
    near = any(d > m.cap - 2 for d in out)
    return Generators(GradedDims(out), near)


def generator_vectors(m: GradedModule, d: int, policy: str = "echelon", rng=None) -> fmpq_mat:
    """Rows (in m's degree-d coordinates) spanning a complement of (A^+ M)^(d).

    ``echelon`` picks standard basis vectors greedily; ``perturbed`` mixes
    them with each other and adds random decomposable elements, giving a
    different but equally valid choice.
    """
    k = m.dim(d)
    dec = m.decomposables(d)
    if len(dec) == k:
        return fmpq_mat(0, k)
    full = la.Basis(la.identity(k), list(range(k)), k)
    picked = la.extend_to_basis(dec, full)
    rows = fmpq_mat(len(picked), k)
    for r, c in enumerate(picked):
        rows[r, c] = 1
    if policy == "echelon":
        return rows
    if policy != "perturbed":
        raise ValueError(f"unknown lift policy {policy!r}")
    import random
    rng = rng or random.Random(0)
    g = len(picked)
    # unitriangular mix keeps the rows independent modulo decomposables
    mix = la.identity(g)
    for i in range(g):
        for j in range(i + 1, g):
            mix[i, j] = rng.randint(-2, 2)
    rows = mix * rows
    if len(dec):
        noise = fmpq_mat(g, len(dec), [rng.randint(-3, 3) for _ in range(g * len(dec))])
        rows = rows + noise * dec.rows
    return rows


def hilbert(m: GradedModule) -> GradedDims:
    return m.hilbert()


def free_hilbert(gens: GradedDims, k: int, cap: int) -> GradedDims:
    """Hilbert function of a free module over k variables (degree 2 each)."""
    out = {}
    for e, c in gens.items():
        d = e
        j = 0
        while d <= cap:
            size = math.comb(j + k - 1, k - 1) if k else int(j == 0)
            if size:
                out[d] = out.get(d, 0) + c * size
            j += 1
            d += 2
            if k == 0:
                break
    return GradedDims(out)


@dataclass
class FreenessResult:
    free: bool
    gens: GradedDims
    evidence: dict | None = None
    forms: tuple | None = None  # acting forms (rows of coefficients) used for the certificate

    def __bool__(self) -> bool:
        return self.free

    def to_json(self) -> dict:
        if self.free:
            return {"free_with_gens": self.gens.to_json()}
        return {"not_free_evidence": self.evidence}


def _candidate_forms(n: int, k: int):
    for sub in itertools.combinations(range(n), k):
        yield tuple(tuple(int(i == j) for i in range(n)) for j in sub)
    import random
    rng = random.Random(12345)
    for _ in range(8):
        yield tuple(tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(k))


def _form_action(m: GradedModule, form: Sequence, d: int) -> fmpq_mat:
    out = fmpq_mat(m.dim(d + 2), m.dim(d))
    for i, c in enumerate(form):
        if c:
            out += la.to_fmpq(c) * m.act(i, d)
    return out


def _products_independent(m: GradedModule, forms, gen_rows: dict) -> bool:
    """Are all monomials in ``forms`` times the generators independent up to the cap?"""
    k = len(forms)
    # layer[d] = list of (last form index used, row vector in degree d)
    layer: dict[int, list] = {}
    for d in m.degrees():
        current = list(layer.pop(d, []))
        if d in gen_rows:
            rows = gen_rows[d]
            current.extend((0, la.row(rows, i)) for i in range(rows.nrows()))
        if not current:
            continue
        mat = la.vstack([v for _, v in current], ncols=m.dim(d))
        if la.rank(mat) != len(current):
            return False
        if d + 2 > m.cap:
            continue
        acts = [_form_action(m, f, d).transpose() for f in forms]
        nxt = layer.setdefault(d + 2, [])
        for last, v in current:
            for j in range(last, k):
                nxt.append((j, v * acts[j]))
    return True


def check_free(m: GradedModule, over_dim: int) -> FreenessResult:
    """Cap-certified freeness over a polynomial algebra in ``over_dim`` variables.

    Certificate: the Hilbert function equals that of the free module on the
    minimal generators, and for some choice of ``over_dim`` acting linear
    forms the induced map from that free module is injective in every
    degree up to the cap (hence bijective).
    """
    gens = minimal_generators(m)
    if gens.near_cap:
        raise CapTooSmall("generators found at the degree cap",
                          witness={"generators": gens.dims.to_json(), "cap": m.cap})
    expected = free_hilbert(gens.dims, over_dim, m.cap)
    actual = m.hilbert()
    for d in m.degrees():
        if expected[d] != actual[d]:
            return FreenessResult(False, gens.dims, {"reason": "hilbert", "degree": d,
                                                     "expected": expected[d], "actual": actual[d]})
    if gens.dims.total() == 0:
        return FreenessResult(True, gens.dims, forms=())
    gen_rows = {d: generator_vectors(m, d) for d in gens.dims.coeffs}
    for forms in _candidate_forms(m.n, over_dim):
        if _products_independent(m, forms, gen_rows):
            return FreenessResult(True, gens.dims, forms=forms)
    return FreenessResult(False, gens.dims, {"reason": "no injective free cover found"})
