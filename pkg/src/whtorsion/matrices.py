"""Matrices over Z[G] and their determinants."""
from .group_ring import involute, is_trivial_unit


class GRMatrix:
    """An immutable nrows x ncols matrix of RingElements.

    Maps act on column vectors, so composition g after f is G @ F.
    """

    __slots__ = ("group", "nrows", "ncols", "rows")

    def __init__(self, group, rows, nrows=None, ncols=None):
        rows = tuple(tuple(r) for r in rows)
        self.group = group
        self.nrows = len(rows) if nrows is None else nrows
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        self.ncols = ncols
        if len(rows) != self.nrows or any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        for r in rows:
            for x in r:
                if x.group != group:
                    raise ValueError("matrix entry over the wrong group")
        self.rows = rows

    @classmethod
    def zeros(cls, group, nrows, ncols):
        z = group.zero()
        return cls(group, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, group, n):
        z, o = group.zero(), group.one()
        return cls(group, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def scalar(cls, group, n, x):
        z = group.zero()
        return cls(group, [[x if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, group, entries):
        n = len(entries)
        z = group.zero()
        return cls(group, [[entries[i] if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def blocks(cls, group, grid, row_sizes, col_sizes):
        """Assemble from a grid of blocks; None stands for a zero block."""
        z = group.zero()
        rows = []
        for bi, rs in enumerate(row_sizes):
            for i in range(rs):
                row = []
                for bj, cs in enumerate(col_sizes):
                    B = grid[bi][bj]
                    if B is None:
                        row.extend([z] * cs)
                    else:
                        if B.nrows != rs or B.ncols != cs:
                            raise ValueError("block has the wrong shape")
                        row.extend(B.rows[i])
                rows.append(row)
        return cls(group, rows, sum(row_sizes), sum(col_sizes))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, GRMatrix):
            return NotImplemented
        return self.group == other.group and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.group, self.shape, self.rows))

    def is_zero(self):
        return all(not x for r in self.rows for x in r)

    def __add__(self, other):
        self._same_shape(other)
        return GRMatrix(self.group, [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                        self.nrows, self.ncols)

    def __sub__(self, other):
        self._same_shape(other)
        return GRMatrix(self.group, [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                        self.nrows, self.ncols)

    def __neg__(self):
        return GRMatrix(self.group, [[-x for x in r] for r in self.rows], self.nrows, self.ncols)

    def _same_shape(self, other):
        if other.group != self.group:
            raise ValueError("mismatched groups")
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __matmul__(self, other):
        if other.group != self.group:
            raise ValueError("mismatched groups")
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.group.zero()
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for c in cols:
                acc = z
                for k, x in nz:
                    y = c[k]
                    if y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return GRMatrix(self.group, out, self.nrows, other.ncols)

    def scale(self, x):
        return GRMatrix(self.group, [[x * y for y in r] for r in self.rows], self.nrows, self.ncols)

    def transpose(self):
        return GRMatrix(self.group, list(zip(*self.rows)) if self.nrows else [], self.ncols, self.nrows)

    def conj_t(self):
        """Involute-transpose: the matrix of the dual map on dual bases."""
        if not self.nrows or not self.ncols:
            return GRMatrix.zeros(self.group, self.ncols, self.nrows)
        return GRMatrix(self.group, [[involute(x) for x in c] for c in zip(*self.rows)], self.ncols, self.nrows)

    def map_entries(self, fn, group=None):
        group = group or self.group
        return GRMatrix(group, [[fn(x) for x in r] for r in self.rows], self.nrows, self.ncols)

    def submatrix(self, r0, r1, c0, c1):
        return GRMatrix(self.group, [r[c0:c1] for r in self.rows[r0:r1]], r1 - r0, c1 - c0)

    def t_span(self):
        spans = [x.t_span() for r in self.rows for x in r if x]
        if not spans:
            return None
        return min(s[0] for s in spans), max(s[1] for s in spans)

    def det(self):
        return determinant(self)

    def to_strings(self):
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"GRMatrix({self.group}, {self.to_strings()})"


def direct_sum(A, B):
    return GRMatrix.blocks(A.group, [[A, None], [None, B]], [A.nrows, B.nrows], [A.ncols, B.ncols])


def determinant(A):
    """Exact determinant over the commutative ring Z[G].

    Gaussian elimination on trivial-unit pivots (+-g), which is exact and keeps
    entries small; whatever block is left without such a pivot is finished by
    the division-free Berkowitz algorithm.
    """
    if A.nrows != A.ncols:
        raise ValueError("determinant of a non-square matrix")
    G = A.group
    M = [list(r) for r in A.rows]
    acc = G.one()
    while M:
        piv = None
        for i, r in enumerate(M):
            for j, x in enumerate(r):
                if x and len(x._t) == 1:
                    ok, w = is_trivial_unit(x)
                    if ok:
                        piv = (i, j, w)
                        break
            if piv:
                break
        if piv is None:
            break
        i, j, (sign, (a, b)) = piv
        p = M[i][j]
        pinv = G.mono(-a, -b, sign)
        # sign of moving (i, j) to the top-left corner
        if (i + j) % 2:
            acc = -acc
        acc = acc * p
        prow = M[i]
        rest = []
        for k, r in enumerate(M):
            if k == i:
                continue
            f = r[j]
            if f:
                f = f * pinv
                r = [x - f * y if y else x for x, y in zip(r, prow)]
            rest.append(r[:j] + r[j + 1:])
        M = rest
    if not M:
        return acc
    return acc * _berkowitz(M, G)


def _berkowitz(M, G):
    """Determinant via the Berkowitz characteristic-polynomial recursion."""
    n = len(M)
    z = G.zero()
    # poly coefficients, highest degree first: charpoly of the leading 1x1 block
    poly = [G.one(), -M[0][0]]
    for k in range(1, n):
        # A_k = [[M_kk, R], [C, A]] with A the leading k x k block
        A = [row[:k] for row in M[:k]]
        R = M[k][:k]
        C = [M[i][k] for i in range(k)]
        a = M[k][k]
        # Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
        col = [G.one(), -a]
        v = C
        for _ in range(k):
            s = z
            for x, y in zip(R, v):
                if x and y:
                    s = s + x * y
            col.append(-s)
            v = [_dot(A[i], v, z) for i in range(k)]
        # new poly = Toeplitz(col) * poly, length k + 2
        new = []
        for i in range(k + 2):
            s = z
            for j in range(len(poly)):
                if 0 <= i - j < len(col):
                    x = col[i - j]
                    y = poly[j]
                    if x and y:
                        s = s + x * y
            new.append(s)
        poly = new
    d = poly[-1]
    return d if n % 2 == 0 else -d


def _dot(r, v, z):
    s = z
    for x, y in zip(r, v):
        if x and y:
            s = s + x * y
    return s
