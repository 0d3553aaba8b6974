"""Exact integer linear algebra: Hermite normal form solving and determinants.

Matrices are given column-wise as sparse dicts {row: value}, which is the
natural shape once a group-ring system has been flattened.
"""
import heapq


class HermiteSolver:
    """Column Hermite reduction A U = H of a sparse integer matrix.

    After construction, solve(b) returns an integer x with A x = b, or None
    when no integer solution exists.  The reduction is computed once and can
    be reused for many right-hand sides.
    """

    def __init__(self, columns, nrows):
        self.ncols = len(columns)
        cols = [dict(c) for c in columns]
        trans = [{j: 1} for j in range(self.ncols)]
        # row -> set of active column indices touching it
        pivots = []
        k = 0
        for r in range(nrows):
            if k >= len(cols):
                break
            active = [j for j in range(k, len(cols)) if cols[j].get(r)]
            if not active:
                continue
            while len(active) > 1:
                p = min(active, key=lambda j: abs(cols[j][r]))
                pv = cols[p][r]
                nxt = [p]
                for j in active:
                    if j == p:
                        continue
                    q = cols[j][r] // pv
                    _axpy(cols[j], -q, cols[p])
                    _axpy(trans[j], -q, trans[p])
                    if cols[j].get(r):
                        nxt.append(j)
                active = nxt
            p = active[0]
            cols[k], cols[p] = cols[p], cols[k]
            trans[k], trans[p] = trans[p], trans[k]
            if cols[k][r] < 0:
                cols[k] = {i: -v for i, v in cols[k].items()}
                trans[k] = {i: -v for i, v in trans[k].items()}
            pivots.append(r)
            k += 1
        self.pivots = pivots
        self.H = cols[:k]
        self.U = trans[:k]

    def solve(self, b):
        res = {i: v for i, v in b.items() if v}
        z = []
        for j, r in enumerate(self.pivots):
            v = res.get(r, 0)
            if v:
                h = self.H[j][r]
                if v % h:
                    return None
                q = v // h
                _axpy(res, -q, self.H[j])
            else:
                q = 0
            z.append(q)
        if res:
            return None
        x = {}
        for q, u in zip(z, self.U):
            if q:
                _axpy(x, q, u)
        return x


class IntSolver:
    """Integer solver that first eliminates on +-1 pivots.

    Each +-1 entry lets one unknown be written in terms of the others, which
    is exact over Z.  Pivots are picked Markowitz style to limit fill-in.
    Whatever is left without a unit entry goes to HermiteSolver.
    """

    SCAN = 6
    # rows with larger entries are left to the Hermite step
    GROWTH = 1 << 20

    def __init__(self, columns, nrows):
        self.ncols = len(columns)
        rows = [{} for _ in range(nrows)]
        for j, c in enumerate(columns):
            for r, v in c.items():
                if v:
                    rows[r][j] = v
        occ = [set(c) for c in columns]
        alive = {r for r in range(nrows) if rows[r]}
        # lazy heap of (length, row); stale entries are skipped on pop
        heap = [(len(rows[r]), r) for r in alive]
        heapq.heapify(heap)
        steps = []
        while heap:
            best = None
            seen = []
            while heap and len(seen) < self.SCAN:
                n, r = heapq.heappop(heap)
                if r not in alive or n != len(rows[r]):
                    continue
                row = rows[r]
                units = [(c, v) for c, v in row.items() if v == 1 or v == -1]
                if not units:
                    # revisited only if an update changes the row
                    continue
                seen.append((n, r))
                big = max(abs(v) for v in row.values())
                if big > self.GROWTH:
                    continue
                for c, v in units:
                    cost = (n - 1) * (len(occ[c]) - 1) * big
                    if best is None or cost < best[0]:
                        best = (cost, r, c, v)
                if best[0] == 0:
                    break
            for e in seen:
                heapq.heappush(heap, e)
            if best is None:
                break
            _, r, c, v = best
            prow = rows[r]
            alive.discard(r)
            for k in prow:
                occ[k].discard(r)
            updates = []
            for r2 in list(occ[c]):
                row2 = rows[r2]
                f = row2[c] * v
                for k, w in prow.items():
                    x = row2.get(k, 0) - f * w
                    if x:
                        if k not in row2:
                            occ[k].add(r2)
                        row2[k] = x
                    elif k in row2:
                        del row2[k]
                        occ[k].discard(r2)
                updates.append((r2, f))
                if row2:
                    heapq.heappush(heap, (len(row2), r2))
                else:
                    alive.discard(r2)
            steps.append((r, c, v, prow, updates))
        self.steps = steps
        pivoted = {c for _, c, _, _, _ in steps}
        self.free = [j for j in range(self.ncols) if j not in pivoted and occ[j]]
        rest = [{r: rows[r][j] for r in occ[j]} for j in self.free]
        self.core = HermiteSolver(rest, nrows)

    def solve(self, b):
        b = {i: v for i, v in b.items() if v}
        for r, _, _, _, updates in self.steps:
            br = b.get(r, 0)
            if br:
                for r2, f in updates:
                    x = b.get(r2, 0) - f * br
                    if x:
                        b[r2] = x
                    else:
                        b.pop(r2, None)
        pivot_rows = {r for r, _, _, _, _ in self.steps}
        y = self.core.solve({r: v for r, v in b.items() if r not in pivot_rows})
        if y is None:
            return None
        x = {self.free[j]: v for j, v in y.items()}
        for r, c, v, prow, _ in reversed(self.steps):
            acc = b.get(r, 0)
            for k, w in prow.items():
                if k != c:
                    xk = x.get(k)
                    if xk:
                        acc -= w * xk
            if acc:
                x[c] = v * acc
        return x


def _axpy(y, a, x):
    """y += a * x for sparse dicts, in place."""
    if not a:
        return
    for i, v in x.items():
        w = y.get(i, 0) + a * v
        if w:
            y[i] = w
        else:
            y.pop(i, None)


def solve_integer(columns, nrows, b):
    return IntSolver(columns, nrows).solve(b)


def bareiss_det(M):
    """Fraction-free determinant of a square integer matrix (list of rows)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]
