from fractions import Fraction

from hypothesis import given, settings
import hypothesis.strategies as st

from tracecalc.linalg import (
    Matrix, rref, rank, nullspace, solve, invert, quotient_presentation,
    sparse_rank_ff, intertwiner_basis,
)

fractions_st = st.fractions(min_value=-30, max_value=30, max_denominator=7)


def test_matrix_basics():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    assert (a * b).rows == ((Fraction(2), Fraction(1)),
                            (Fraction(4), Fraction(3)))
    assert (a + b - b) == a
    assert a.transpose().transpose() == a
    assert a.trace() == 5
    assert Matrix.identity(3) * Matrix.identity(3) == Matrix.identity(3)


def test_zero_shapes():
    p = Matrix([], ncols=4)
    assert p.nrows == 0 and p.ncols == 4
    assert p.apply((1, 2, 3, 4)) == ()
    assert p.transpose().nrows == 4 and p.transpose().ncols == 0
    q = Matrix.zeros(3, 0)
    assert (q * p).nrows == 3 and (q * p).ncols == 4


def test_kron_associative_and_unital():
    a = Matrix([[1, 2], [0, 1]])
    b = Matrix([[2, 0], [1, 1]])
    c = Matrix([[1, 1], [1, 0]])
    assert a.kron(b).kron(c) == a.kron(b.kron(c))
    one = Matrix([[1]])
    assert one.kron(a) == a and a.kron(one) == a


def test_rref_rank_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(rows) == 2
    ns = nullspace(rows)
    assert len(ns) == 1
    for row in rows:
        assert sum(x * v for x, v in zip(row, ns[0])) == 0


def test_solve_and_invert():
    a = [[2, 1], [1, 1]]
    x = solve(a, (3, 2))
    assert x == (Fraction(1), Fraction(1))
    assert solve([[1, 1], [1, 1]], (0, 1)) is None
    m = Matrix(a)
    mi = invert(m)
    assert m * mi == Matrix.identity(2)
    assert invert(Matrix([[1, 1], [1, 1]])) is None


def test_quotient_presentation():
    # Q^3 modulo span{(1,-1,0),(0,1,-1)}: one dimensional
    q, P, S = quotient_presentation([(1, -1, 0), (0, 1, -1)], 3)
    assert q == 1
    assert P * S == Matrix.identity(1)
    assert P.apply((1, -1, 0)) == (Fraction(0),)
    assert P.apply((0, 1, -1)) == (Fraction(0),)
    # all three basis vectors map to the same class
    v0, v1, v2 = (P.apply(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert v0 == v1 == v2


def test_quotient_presentation_trivial_cases():
    q, P, S = quotient_presentation([], 3)
    assert q == 3 and P * S == Matrix.identity(3)
    q, P, S = quotient_presentation([(1, 0), (0, 1)], 2)
    assert q == 0
    assert P.nrows == 0 and P.ncols == 2
    assert S.nrows == 2 and S.ncols == 0


def test_sparse_rank_ff_matches_dense():
    rows = [[1, 2, 3, 1], [2, 4, 6, 2], [0, 1, 1, 0], [1, 1, 2, 1]]
    cols = []
    for j in range(4):
        cols.append({i: rows[i][j] for i in range(4) if rows[i][j]})
    assert sparse_rank_ff(cols) == rank(rows)


@given(st.lists(st.lists(fractions_st, min_size=3, max_size=3),
                min_size=1, max_size=4))
@settings(max_examples=50, deadline=None)
def test_rref_idempotent(rows):
    red, piv = rref(rows)
    red2, piv2 = rref(red)
    assert red == red2 and piv == piv2


@given(st.lists(st.lists(fractions_st, min_size=4, max_size=4),
                min_size=2, max_size=5))
@settings(max_examples=50, deadline=None)
def test_nullspace_is_kernel(rows):
    for v in nullspace(rows):
        for row in rows:
            assert sum(x * c for x, c in zip(row, v)) == 0


def test_intertwiner_basis_commutant():
    # commutant of the swap on Q^2 is 2 dimensional
    swap = Matrix([[0, 1], [1, 0]])
    basis = intertwiner_basis([(swap, swap)], 2, 2)
    assert len(basis) == 2
    for t in basis:
        assert t * swap == swap * t
