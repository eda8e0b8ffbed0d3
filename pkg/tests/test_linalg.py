from fractions import Fraction

from hypothesis import given, settings, strategies as st

from fanih import linalg as la
from oracles import frac_rank

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_fraction_elimination(rows):
    assert la.rank(la.matrix(rows)) == frac_rank(rows)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_nullspace_is_kernel_with_identity_coordinates(rows):
    m = la.matrix(rows)
    ns = la.nullspace(m)
    assert len(ns) == m.ncols() - frac_rank(rows)
    if len(ns):
        assert la.is_zero(m * ns.rows.transpose())
        assert ns.coords(ns.rows) == la.identity(len(ns))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_returns_exact_solution_or_none(rows, xs):
    a = la.matrix(rows)
    x = la.matrix([[v] for v in xs[: a.ncols()]])
    b = a * x
    sol = la.solve(a, b)
    assert sol is not None and a * sol == b
    # perturb into an inconsistent right-hand side when the image is proper
    if frac_rank(rows) < a.nrows():
        found_inconsistent = False
        for i in range(a.nrows()):
            e = la.zeros(a.nrows(), 1)
            e[i, 0] = 1
            if la.solve(a, e) is None:
                found_inconsistent = True
        assert found_inconsistent


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_extend_to_basis_completes_span(rows):
    n = len(rows[0])
    sub = la.row_basis(la.matrix(rows))
    full = la.Basis(la.identity(n), list(range(n)), n)
    picked = la.extend_to_basis(sub, full)
    assert len(picked) + len(sub) == n
    stacked = la.vstack([sub.rows, la.select_rows(la.identity(n), picked)], ncols=n)
    assert la.rank(stacked) == n


def test_conversions_round_trip():
    for x in (Fraction(-3, 7), 5, "2/3"):
        assert la.to_fraction(la.to_fmpq(x)) == Fraction(x)


def test_stack_helpers_shapes():
    a = la.matrix([[1, 2]])
    b = la.matrix([[3, 4]])
    assert la.vstack([a, b]).tolist() == [[1, 2], [3, 4]]
    assert la.hstack([a, b]).tolist() == [[1, 2, 3, 4]]
    assert la.block_diag([a, b]).nrows() == 2 and la.block_diag([a, b]).ncols() == 4
