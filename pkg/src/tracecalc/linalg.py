"""Exact linear algebra over the rationals.

Everything runs on fractions.Fraction; there is no floating point
anywhere.  Dense matrices are tuples of tuples.  The elimination
routines that feed the bar-complex ranks work on sparse integer
columns with fraction-free (cross-multiplication) updates so that
coefficient growth stays controlled without ever leaving Z.
"""

from fractions import Fraction
from math import gcd

ZERO = Fraction(0)
ONE = Fraction(1)


def fr(x):
    """Coerce ints/strings/Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Matrix:
    """Immutable dense matrix of Fractions, shape (nrows, ncols).

    ncols must be passed explicitly for matrices with zero rows, since
    it cannot be inferred from the data.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(fr(x) for x in row) for row in rows)
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else (ncols or 0)
        for row in rows:
            assert len(row) == self.ncols, "ragged matrix"

    @staticmethod
    def zeros(nrows, ncols):
        return Matrix([[ZERO] * ncols for _ in range(nrows)], ncols=ncols)

    @staticmethod
    def identity(n):
        return Matrix([[ONE if i == j else ZERO for j in range(n)]
                       for i in range(n)])

    @staticmethod
    def from_cols(cols, nrows):
        cols = list(cols)
        m = [[ZERO] * len(cols) for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, v in col.items() if isinstance(col, dict) else enumerate(col):
                m[i][j] = fr(v)
        return Matrix(m, ncols=len(cols))

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows)

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Matrix(%dx%d)" % (self.nrows, self.ncols)

    def __add__(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        return Matrix([[a + b for a, b in zip(r, s)]
                       for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        return Matrix([[a - b for a, b in zip(r, s)]
                       for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, c):
        c = fr(c)
        return Matrix([[c * a for a in r] for r in self.rows])

    def __mul__(self, other):
        """Matrix product (self * other)."""
        assert isinstance(other, Matrix), "use .scale for scalars"
        assert self.ncols == other.nrows, \
            "shape mismatch %dx%d * %dx%d" % (self.nrows, self.ncols,
                                              other.nrows, other.ncols)
        out = []
        for r in self.rows:
            row = [ZERO] * other.ncols
            for k, v in enumerate(r):
                if v:
                    orow = other.rows[k]
                    for j, w in enumerate(orow):
                        if w:
                            row[j] += v * w
            out.append(row)
        return Matrix(out, ncols=other.ncols)

    def apply(self, vec):
        """Matrix times column vector (tuple)."""
        assert len(vec) == self.ncols
        nzv = [(j, v) for j, v in enumerate(vec) if v]
        return tuple(sum((row[j] * v for j, v in nzv), ZERO)
                     for row in self.rows)

    def transpose(self):
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)], ncols=self.nrows)

    def trace(self):
        assert self.nrows == self.ncols
        return sum((self.rows[i][i] for i in range(self.nrows)), ZERO)

    def is_zero(self):
        return all(not v for row in self.rows for v in row)

    def kron(self, other):
        """Kronecker product with row-major index flattening.

        Flattening is (i, k) -> i * other.nrows + k, which makes the
        product strictly associative and strictly unital for 1x1
        factors.
        """
        out = []
        for i in range(self.nrows):
            for k in range(other.nrows):
                row = []
                for j in range(self.ncols):
                    a = self.rows[i][j]
                    if a:
                        row.extend(a * b for b in other.rows[k])
                    else:
                        row.extend([ZERO] * other.ncols)
                out.append(row)
        if not out:
            return Matrix.zeros(0, self.ncols * other.ncols)
        return Matrix(out)

    def col(self, j):
        return tuple(row[j] for row in self.rows)

    def hstack(self, other):
        assert self.nrows == other.nrows
        return Matrix([ra + rb for ra, rb in zip(self.rows, other.rows)])


def rref(rows):
    """Reduced row echelon form.

    Returns (rref_rows, pivot_columns).  rows is a list of tuples or
    lists of Fractions; the input is not mutated.
    """
    m = [list(map(fr, r)) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                mi, mr = m[i], m[r]
                for j in range(c, ncols):
                    if mr[j]:
                        mi[j] -= f * mr[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(r_) for r_ in m], pivots


def rank(rows):
    _, pivots = rref(rows)
    return len(pivots)


def nullspace(rows, ncols=None):
    """Basis of the right kernel of the matrix given by rows."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [tuple(ONE if i == j else ZERO for j in range(ncols))
                for i in range(ncols)]
    red, pivots = rref(rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def solve(rows, rhs):
    """One exact solution of A x = b, or None if inconsistent.

    rows give A (list of rows), rhs is the target vector.  When the
    system is underdetermined the solution with zero free coordinates
    is returned, which makes the output canonical.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    red, pivots = rref(aug)
    for i, row in enumerate(red):
        if i < len(pivots) and pivots[i] == ncols:
            return None
        if i >= len(pivots) and row[ncols]:
            return None
    x = [ZERO] * ncols
    for i, p in enumerate(pivots):
        if p < ncols:
            x[p] = red[i][ncols]
    # fix: with free columns the pivot value also picks up free terms,
    # but free coords are zero so the pivot entry is already right
    return tuple(x)


def invert(mat):
    """Inverse of a square Matrix, or None if singular."""
    n = mat.nrows
    assert n == mat.ncols
    aug = [list(mat.rows[i]) + [ONE if i == j else ZERO for j in range(n)]
           for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return Matrix([row[n:] for row in red[:n]])


class SparseEliminator:
    """Incremental sparse Gaussian elimination over Q.

    Rows are dicts {column: Fraction}.  Feeding rows one at a time
    keeps memory bounded; pivot rows are stored normalized with
    leading coefficient one.  Deterministic: pivot is always the
    smallest column of the reduced row.
    """

    def __init__(self):
        self.pivots = {}  # col -> normalized row dict

    def reduce(self, row):
        row = dict(row)
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                return c, row
            f = row[c]
            for j, v in piv.items():
                nv = row.get(j, ZERO) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
        return None, row

    def add_row(self, row):
        """Returns True if the row added a new pivot."""
        c, red = self.reduce(row)
        if c is None:
            return False
        lead = red[c]
        self.pivots[c] = {j: v / lead for j, v in red.items()}
        return True

    @property
    def rank(self):
        return len(self.pivots)

    def back_substitute(self):
        """Fully reduce pivot rows against each other (RREF)."""
        for c in sorted(self.pivots, reverse=True):
            piv = self.pivots[c]
            for c2, row in self.pivots.items():
                if c2 == c or c not in row:
                    continue
                f = row.pop(c)
                for j, v in piv.items():
                    if j == c:
                        continue
                    nv = row.get(j, ZERO) - f * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
                row[c] = ZERO
                row.pop(c)
        return self.pivots


def sparse_rank_ff(columns, reduce_gcd=True):
    """Rank of a sparse integer matrix given as columns.

    columns: iterable of dicts {row_index: int}.  Elimination is
    fraction-free: updates use cross-multiplication and stay in Z,
    with per-column gcd reduction to keep entries small.
    """
    pivots = {}  # row index -> column dict (integer entries)
    rk = 0
    for col in columns:
        col = {i: int(v) for i, v in col.items() if v}
        while col:
            i = min(col)
            piv = pivots.get(i)
            if piv is None:
                if reduce_gcd:
                    g = 0
                    for v in col.values():
                        g = gcd(g, abs(v))
                    if g > 1:
                        col = {k: v // g for k, v in col.items()}
                pivots[i] = col
                rk += 1
                col = None
                break
            a, b = piv[i], col[i]
            new = {}
            for k in set(col) | set(piv):
                v = a * col.get(k, 0) - b * piv.get(k, 0)
                if v:
                    new[k] = v
            if reduce_gcd and new:
                g = 0
                for v in new.values():
                    g = gcd(g, abs(v))
                if g > 1:
                    new = {k: v // g for k, v in new.items()}
            col = new
    return rk


def quotient_presentation(relations, n):
    """Canonical presentation of Q^n modulo the span of relations.

    relations: iterable of sparse dicts or dense vectors of length n.
    Returns (q, P, S) with P an (q x n) projection, S an (n x q)
    section, P*S = I, and P*r = 0 for every relation r.  The basis of
    the quotient corresponds to the non-pivot coordinates of the RREF
    of the relation matrix, so the result is deterministic.
    """
    elim = SparseEliminator()
    for rel in relations:
        if not isinstance(rel, dict):
            rel = {i: v for i, v in enumerate(rel) if v}
        if rel:
            elim.add_row(rel)
    pivrows = elim.back_substitute()
    pivcols = sorted(pivrows)
    pivset = set(pivcols)
    free = [c for c in range(n) if c not in pivset]
    q = len(free)
    free_pos = {c: i for i, c in enumerate(free)}
    # P: e_free -> unit, e_pivot -> -(free part of its pivot row)
    P = [[ZERO] * n for _ in range(q)]
    for c in free:
        P[free_pos[c]][c] = ONE
    for c in pivcols:
        row = pivrows[c]
        for j, v in row.items():
            if j != c:
                P[free_pos[j]][c] = -v
    S = [[ZERO] * q for _ in range(n)]
    for c in free:
        S[c][free_pos[c]] = ONE
    return q, Matrix(P, ncols=n), Matrix(S, ncols=q)


def intertwiner_basis(pairs, dim_src, dim_tgt):
    """Basis of {T : T * A_i = B_i * T for all (A_i, B_i) in pairs}.

    T is (dim_tgt x dim_src); the result is a list of Matrix.  The
    basis is the canonical nullspace basis of the stacked constraint
    system, hence deterministic.
    """
    nvars = dim_tgt * dim_src

    def tvar(i, j):
        return i * dim_src + j

    rows = []
    for A, B in pairs:
        # (T A - B T)[i][j] = 0
        for i in range(dim_tgt):
            for j in range(dim_src):
                row = {}
                for k in range(dim_src):
                    v = A.rows[k][j]
                    if v:
                        row[tvar(i, k)] = row.get(tvar(i, k), ZERO) + v
                for k in range(dim_tgt):
                    v = B.rows[i][k]
                    if v:
                        row[tvar(k, j)] = row.get(tvar(k, j), ZERO) - v
                if row:
                    rows.append(row)
    elim = SparseEliminator()
    for row in rows:
        elim.add_row(row)
    pivrows = elim.back_substitute()
    pivset = set(pivrows)
    basis = []
    for f in range(nvars):
        if f in pivset:
            continue
        vec = [ZERO] * nvars
        vec[f] = ONE
        for c, row in pivrows.items():
            v = row.get(f)
            if v:
                vec[c] = -v
        basis.append(Matrix([[vec[tvar(i, j)] for j in range(dim_src)]
                             for i in range(dim_tgt)]))
    return basis
