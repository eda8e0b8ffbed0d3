"""Independent reference computations used to freeze expected values.

Nothing here imports the package: ranks are computed by Fraction Gaussian
elimination and conewise polynomials are counted by point evaluation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb


def frac_rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    rank, ncols = 0, len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                k = m[i][c] / m[rank][c]
                m[i] = [x - k * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def exponents(n: int, m: int):
    for combo in itertools.combinations_with_replacement(range(n), m):
        e = [0] * n
        for j in combo:
            e[j] += 1
        yield tuple(e)


def _eval_monomial(e, x):
    out = Fraction(1)
    for a, b in zip(e, x):
        out *= Fraction(b) ** a
    return out


def _independent(vectors):
    out = []
    for v in vectors:
        if frac_rank(out + [v]) > len(out):
            out.append(v)
    return out


def _coords(basis, x):
    """Coordinates of x in an independent list of vectors (x must lie in their span)."""
    k, n = len(basis), len(x)
    aug = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(n)]
    r = 0
    piv = []
    for c in range(k):
        p = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        aug[r] = [v / aug[r][c] for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
    out = [Fraction(0)] * k
    for i, c in enumerate(piv):
        out[c] = aug[i][k]
    return out


def conewise_polynomial_dim(rays, max_cones, m: int) -> int:
    """Dimension of tuples (p_sigma) of degree-m forms on span(sigma), one per
    maximal cone, that agree on every pairwise intersection of maximal cones.

    Forms are written in the coordinates of an independent subset of each
    cone's rays.  Agreement on span(F) is tested at the principal lattice
    points sum a_i b_i (a_i >= 0, sum a_i = m) of a basis b of span(F),
    which is unisolvent for forms of degree m.
    """
    cones = [frozenset(c) for c in max_cones]
    bases = [_independent([list(rays[i]) for i in sorted(c)]) for c in cones]
    mons = [list(exponents(len(b), m)) if b else ([()] if m == 0 else []) for b in bases]
    offs = [0]
    for ms in mons:
        offs.append(offs[-1] + len(ms))
    cols = offs[-1]
    rows = []
    for a, b in itertools.combinations(range(len(cones)), 2):
        common = cones[a] & cones[b]
        basis = _independent([list(rays[i]) for i in sorted(common)])
        if m == 0:
            pts = [[0] * len(rays[0])]
        elif not basis:
            continue
        else:
            pts = [[sum(c * v[j] for c, v in zip(coeffs, basis)) for j in range(len(rays[0]))]
                   for coeffs in exponents(len(basis), m)]
        for p in pts:
            row = [Fraction(0)] * cols
            for side, sign in ((a, 1), (b, -1)):
                y = _coords(bases[side], p) if bases[side] else []
                for i, e in enumerate(mons[side]):
                    row[offs[side] + i] += sign * _eval_monomial(e, y)
            rows.append(row)
    return cols - frac_rank(rows)


def conewise_hilbert(rays, max_cones, cap: int) -> dict:
    out = {}
    for d in range(0, cap + 1, 2):
        v = conewise_polynomial_dim(rays, max_cones, d // 2)
        if v:
            out[d] = v
    return out


def h_from_f(f):
    """f = (f_0, ..., f_(d-1)) of a simplicial complex -> (h_0..h_d)."""
    d = len(f)
    fv = [1] + list(f)
    return [sum((-1) ** (k - i) * comb(d - i, k - i) * fv[i] for i in range(k + 1)) for k in range(d + 1)]


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_add(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def poly_pow(a, k):
    out = [1]
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def to_q2(coeffs) -> dict:
    """[c0, c1, ...] in t -> {2j: cj} in q, dropping zeros."""
    return {2 * j: c for j, c in enumerate(coeffs) if c}


def global_local_expansion(n: int, counts: dict) -> dict:
    """sum over dims k of counts[k] * (q^2 - 1)^(n - k) * ip, with counts[k]
    a list of ip coefficient lists (in t = q^2)."""
    total = [0]
    for k, ips in counts.items():
        for ipv in ips:
            total = poly_add(total, poly_mul(poly_pow([-1, 1], n - k), ipv))
    return to_q2(total)
