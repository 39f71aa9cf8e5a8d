"""Small exact linear algebra kernel over a computation field.

Matrices are immutable-by-convention lists of lists of field elements.
Zero-row and zero-column matrices are first-class citizens: most of the
module theory downstream lives at the boundary cases.
"""


class Mat:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, nrows, ncols, rows):
        assert len(rows) == nrows and all(len(r) == ncols for r in rows)
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(field, nrows, ncols):
        z = field.zero
        return Mat(field, nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @staticmethod
    def identity(field, n):
        z, o = field.zero, field.one
        return Mat(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def from_rows(field, rows, ncols=None):
        nrows = len(rows)
        if ncols is None:
            if nrows == 0:
                raise ValueError("ncols required for an empty row list")
            ncols = len(rows[0])
        return Mat(field, nrows, ncols, [list(r) for r in rows])

    @staticmethod
    def from_int_rows(field, rows, ncols=None):
        nrows = len(rows)
        if ncols is None:
            if nrows == 0:
                raise ValueError("ncols required for an empty row list")
            ncols = len(rows[0])
        return Mat(field, nrows, ncols, [[field.of_int(x) for x in r] for r in rows])

    @staticmethod
    def col_vector(field, entries):
        return Mat(field, len(entries), 1, [[x] for x in entries])

    # -- basic ops -----------------------------------------------------

    def copy(self):
        return Mat(self.field, self.nrows, self.ncols, [list(r) for r in self.rows])

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols}, {self.rows})"

    def is_zero(self):
        z = self.field.is_zero
        return all(z(x) for row in self.rows for x in row)

    def transpose(self):
        return Mat(
            self.field,
            self.ncols,
            self.nrows,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
        )

    def add(self, other):
        f = self.field
        return Mat(
            f,
            self.nrows,
            self.ncols,
            [
                [f.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def neg(self):
        f = self.field
        return Mat(f, self.nrows, self.ncols, [[f.neg(x) for x in r] for r in self.rows])

    def scale(self, c):
        f = self.field
        return Mat(f, self.nrows, self.ncols, [[f.mul(c, x) for x in r] for r in self.rows])

    def mul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        f = self.field
        z = f.zero
        ot = other.transpose().rows
        out = []
        for r in self.rows:
            row = []
            for c in ot:
                acc = z
                for a, b in zip(r, c):
                    acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            out.append(row)
        return Mat(f, self.nrows, other.ncols, out)

    def __matmul__(self, other):
        return self.mul(other)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        return Mat(
            self.field,
            self.nrows,
            self.ncols + other.ncols,
            [ra + rb for ra, rb in zip(self.rows, other.rows)],
        )

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch in vstack")
        return Mat(
            self.field,
            self.nrows + other.nrows,
            self.ncols,
            [list(r) for r in self.rows] + [list(r) for r in other.rows],
        )

    def cols(self, indices):
        return Mat(
            self.field,
            self.nrows,
            len(indices),
            [[r[j] for j in indices] for r in self.rows],
        )

    def row_slice(self, lo, hi):
        return Mat(self.field, hi - lo, self.ncols, [list(r) for r in self.rows[lo:hi]])

    def col_slice(self, lo, hi):
        return Mat(self.field, self.nrows, hi - lo, [r[lo:hi] for r in self.rows])


def hstack_all(field, mats, nrows):
    out = Mat(field, nrows, 0, [[] for _ in range(nrows)])
    for m in mats:
        out = out.hstack(m)
    return out


def vstack_all(field, mats, ncols):
    out = Mat(field, 0, ncols, [])
    for m in mats:
        out = out.vstack(m)
    return out


def rref(m):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    f = m.field
    rows = [list(r) for r in m.rows]
    pivots = []
    prow = 0
    for col in range(m.ncols):
        if prow >= m.nrows:
            break
        sel = None
        for i in range(prow, m.nrows):
            if not f.is_zero(rows[i][col]):
                sel = i
                break
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        inv = f.inv(rows[prow][col])
        rows[prow] = [f.mul(inv, x) for x in rows[prow]]
        for i in range(m.nrows):
            if i != prow and not f.is_zero(rows[i][col]):
                c = rows[i][col]
                rows[i] = [f.sub(a, f.mul(c, b)) for a, b in zip(rows[i], rows[prow])]
        pivots.append(col)
        prow += 1
    return Mat(f, m.nrows, m.ncols, rows), pivots


def rank(m):
    return len(rref(m)[1])


def nullspace(m):
    """Basis of the right kernel, as the columns of an (ncols x k) matrix."""
    f = m.field
    R, pivots = rref(m)
    free = [j for j in range(m.ncols) if j not in pivots]
    basis_cols = []
    for fc in free:
        v = [f.zero] * m.ncols
        v[fc] = f.one
        for prow, pcol in enumerate(pivots):
            v[pcol] = f.neg(R.rows[prow][fc])
        basis_cols.append(v)
    return Mat(f, m.ncols, len(basis_cols), [[c[i] for c in basis_cols] for i in range(m.ncols)])


def solve(a, b):
    """Solve a @ x = b for a matrix x; returns None if inconsistent."""
    if a.nrows != b.nrows:
        raise ValueError("shape mismatch in solve")
    f = a.field
    R, pivots = rref(a.hstack(b))
    # Any pivot in the b-block means inconsistency.
    for p in pivots:
        if p >= a.ncols:
            return None
    x = Mat.zero(f, a.ncols, b.ncols)
    for prow, pcol in enumerate(pivots):
        x.rows[pcol] = list(R.rows[prow][a.ncols:])
    return x


def col_basis(m):
    """Pivot columns of m: a full-column-rank matrix with the same image."""
    _, pivots = rref(m)
    return m.cols(pivots)


def extend_to_basis(b):
    """Complete a full-column-rank (n x k) matrix to a basis of F^n.

    Returns (E, T_inv) where E is an (n x (n-k)) complement and T_inv is the
    inverse of [b | E].
    """
    f = b.field
    n = b.nrows
    full = b.hstack(Mat.identity(f, n))
    _, pivots = rref(full)
    if len(pivots) != n:
        raise ValueError("input columns are not independent")
    extra = [p for p in pivots if p >= b.ncols]
    if len(extra) != n - b.ncols:
        raise ValueError("input columns are not independent")
    e = full.cols(extra)
    t = b.hstack(e)
    t_inv = invert(t)
    return e, t_inv


def invert(m):
    if m.nrows != m.ncols:
        raise ValueError("only square matrices invert")
    f = m.field
    R, pivots = rref(m.hstack(Mat.identity(f, m.nrows)))
    if len(pivots) != m.nrows:
        raise ValueError("singular matrix")
    return R.col_slice(m.nrows, 2 * m.nrows)


def is_invertible(m):
    return m.nrows == m.ncols and rank(m) == m.nrows
