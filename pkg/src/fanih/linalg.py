"""Exact linear algebra over the rationals.

Thin layer over FLINT's ``fmpq_mat``.  Vectors are stored as rows; a
subspace is described by a :class:`Basis`, i.e. a matrix of independent
rows together with a set of *coordinate columns* on which the basis
restricts to the identity.  Reading a vector of the subspace at those
columns gives its coordinates, which is all the module code needs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat

__all__ = [
    "Basis",
    "to_fmpq",
    "to_fraction",
    "matrix",
    "zeros",
    "identity",
    "hstack",
    "vstack",
    "block_diag",
    "rank",
    "rref",
    "nullspace",
    "row_basis",
    "solve",
    "solve_left",
    "extend_to_basis",
    "is_zero",
]


def to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, int):
        return fmpq(x)
    if isinstance(x, str):
        return to_fmpq(Fraction(x))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    x = to_fmpq(x)
    return Fraction(int(x.p), int(x.q))


def matrix(rows: Sequence[Sequence], ncols: int | None = None) -> fmpq_mat:
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    flat = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
        flat.extend(to_fmpq(x) for x in r)
    return fmpq_mat(len(rows), ncols, flat)


def zeros(r: int, c: int) -> fmpq_mat:
    return fmpq_mat(r, c)


def identity(n: int) -> fmpq_mat:
    m = fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def _entries(m: fmpq_mat) -> list:
    return m.entries() if m.nrows() and m.ncols() else []


def hstack(mats: Sequence[fmpq_mat], nrows: int | None = None) -> fmpq_mat:
    mats = [m for m in mats]
    if not mats:
        return fmpq_mat(nrows or 0, 0)
    r = mats[0].nrows()
    if any(m.nrows() != r for m in mats):
        raise ValueError("row counts differ")
    c = sum(m.ncols() for m in mats)
    out = fmpq_mat(r, c)
    off = 0
    for m in mats:
        for (i, j), x in _nonzeros(m):
            out[i, off + j] = x
        off += m.ncols()
    return out


def vstack(mats: Sequence[fmpq_mat], ncols: int | None = None) -> fmpq_mat:
    mats = [m for m in mats]
    if not mats:
        return fmpq_mat(0, ncols or 0)
    c = mats[0].ncols()
    if any(m.ncols() != c for m in mats):
        raise ValueError("column counts differ")
    flat = []
    for m in mats:
        flat.extend(_entries(m))
    return fmpq_mat(sum(m.nrows() for m in mats), c, flat)


def block_diag(mats: Sequence[fmpq_mat]) -> fmpq_mat:
    r = sum(m.nrows() for m in mats)
    c = sum(m.ncols() for m in mats)
    out = fmpq_mat(r, c)
    ro = co = 0
    for m in mats:
        for (i, j), x in _nonzeros(m):
            out[ro + i, co + j] = x
        ro += m.nrows()
        co += m.ncols()
    return out


def _nonzeros(m: fmpq_mat):
    nc = m.ncols()
    for k, x in enumerate(_entries(m)):
        if x != 0:
            yield divmod(k, nc), x


def is_zero(m: fmpq_mat) -> bool:
    return all(x == 0 for x in _entries(m))


def rank(m: fmpq_mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def rref(m: fmpq_mat) -> tuple[fmpq_mat, list[int]]:
    """Reduced row echelon form with zero rows dropped, and pivot columns."""
    if m.nrows() == 0 or m.ncols() == 0:
        return fmpq_mat(0, m.ncols()), []
    r, rk = m.rref()
    nc = m.ncols()
    ent = r.entries()
    pivots = []
    for i in range(rk):
        row = ent[i * nc:(i + 1) * nc]
        j = next(j for j, x in enumerate(row) if x != 0)
        pivots.append(j)
    return fmpq_mat(rk, nc, ent[: rk * nc]), pivots


class Basis:
    """Row basis of a subspace of Q^dim with identity coordinate columns."""

    __slots__ = ("rows", "cols", "dim")

    def __init__(self, rows: fmpq_mat, cols: list[int], dim: int):
        self.rows = rows
        self.cols = cols
        self.dim = dim

    def __len__(self) -> int:
        return len(self.cols)

    def coords(self, vectors: fmpq_mat) -> fmpq_mat:
        """Coordinates of row vectors that are known to lie in the span."""
        n = vectors.nrows()
        out = fmpq_mat(n, len(self.cols))
        if n == 0 or not self.cols:
            return out
        nc = vectors.ncols()
        ent = vectors.entries()
        for i in range(n):
            base = i * nc
            for k, c in enumerate(self.cols):
                x = ent[base + c]
                if x != 0:
                    out[i, k] = x
        return out

    def contains(self, vectors: fmpq_mat) -> bool:
        if vectors.nrows() == 0:
            return True
        if not self.cols:
            return is_zero(vectors)
        return is_zero(vectors - self.coords(vectors) * self.rows)

    @classmethod
    def empty(cls, dim: int) -> "Basis":
        return cls(fmpq_mat(0, dim), [], dim)


def row_basis(m: fmpq_mat) -> Basis:
    r, piv = rref(m)
    return Basis(r, piv, m.ncols())


def nullspace(m: fmpq_mat) -> Basis:
    """Right kernel ``{x : m x = 0}`` as a row basis.

    The free columns of the echelon form serve as coordinate columns.
    """
    nc = m.ncols()
    r, piv = rref(m)
    pset = set(piv)
    free = [j for j in range(nc) if j not in pset]
    out = fmpq_mat(len(free), nc)
    if free and piv:
        ent = r.entries()
        for k, f in enumerate(free):
            out[k, f] = 1
            for i, p in enumerate(piv):
                x = ent[i * nc + f]
                if x != 0:
                    out[k, p] = -x
    else:
        for k, f in enumerate(free):
            out[k, f] = 1
    return Basis(out, free, nc)


def solve(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat | None:
    """A particular solution X of ``a X = b`` (free variables set to 0).

    Returns None when the system is inconsistent.
    """
    k = a.ncols()
    if b.ncols() == 0:
        return fmpq_mat(k, 0)
    aug = hstack([a, b])
    r, piv = rref(aug)
    if any(p >= k for p in piv):
        return None
    ent = r.entries()
    nc = aug.ncols()
    sol = fmpq_mat(k, b.ncols())
    for i, p in enumerate(piv):
        for j in range(b.ncols()):
            x = ent[i * nc + k + j]
            if x != 0:
                sol[p, j] = x
    return sol


def solve_left(rows: fmpq_mat, vectors: fmpq_mat) -> fmpq_mat | None:
    """Solve ``X * rows = vectors`` for X, or None if inconsistent."""
    if vectors.nrows() == 0:
        return fmpq_mat(0, rows.nrows())
    x = solve(rows.transpose(), vectors.transpose())
    return None if x is None else x.transpose()


def extend_to_basis(sub: Basis, space: Basis) -> list[int]:
    """Indices of rows of ``space.rows`` that extend ``sub`` to all of space.

    Greedy in row order (pivot columns of the transposed stack), so the
    choice is deterministic.
    """
    k = len(sub)
    if k == len(space):
        return []
    stacked = vstack([sub.rows, space.rows]) if k else space.rows
    _, piv = rref(stacked.transpose())
    return [p - k for p in piv if p >= k]


def vectors_from(rows: Iterable[Sequence], ncols: int) -> fmpq_mat:
    return matrix(list(rows), ncols)


def row(m: fmpq_mat, i: int) -> fmpq_mat:
    nc = m.ncols()
    return fmpq_mat(1, nc, [m[i, j] for j in range(nc)])


def select_rows(m: fmpq_mat, idx: Sequence[int]) -> fmpq_mat:
    nc = m.ncols()
    return fmpq_mat(len(idx), nc, [m[i, j] for i in idx for j in range(nc)])


def select_cols(m: fmpq_mat, idx: Sequence[int]) -> fmpq_mat:
    nr = m.nrows()
    return fmpq_mat(nr, len(idx), [m[i, j] for i in range(nr) for j in idx])
