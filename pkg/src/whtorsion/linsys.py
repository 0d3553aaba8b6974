"""Linear systems over Z[G], flattened to integer systems.

An unknown ring element is expanded into integer coefficients of s^a t^q
for 0 <= a < m and q in a t-degree window.  Over C_m the window is just {0}
and the flattening is the regular representation; with a t factor the
window is widened by doubling until a cap.
"""
from .group_ring import RingElement, DEFAULT_WINDOW_CAP, is_trivial_unit, kill_t, _finite_unit
from .verdict import Trivial
from .intlin import IntSolver
from .matrices import GRMatrix


class RingSystem:
    """equations: {eq_key: [(coeff, unknown_key), ...]}; solve(rhs) for many rhs."""

    def __init__(self, equations, group, window=(0, 0)):
        self.group = group
        m = group.m
        lo, hi = window if group.has_t else (0, 0)
        self.window = (lo, hi)
        occ = {}
        for eq, terms in equations.items():
            for coeff, u in terms:
                if coeff:
                    occ.setdefault(u, []).append((eq, coeff))
        self.unknowns = list(occ)
        self.row_index = {}
        columns = []
        colkeys = []
        for u in self.unknowns:
            for q in range(lo, hi + 1):
                for a in range(m):
                    col = {}
                    for eq, coeff in occ[u]:
                        for (a2, b2), c in coeff.items():
                            key = (eq, (a + a2) % m, q + b2)
                            r = self.row_index.get(key)
                            if r is None:
                                r = self.row_index[key] = len(self.row_index)
                            col[r] = col.get(r, 0) + c
                    columns.append({r: v for r, v in col.items() if v})
                    colkeys.append((u, a, q))
        self.colkeys = colkeys
        self.solver = IntSolver(columns, len(self.row_index))

    def solve(self, rhs):
        b = {}
        for eq, x in rhs.items():
            for (a, q), c in x.items():
                r = self.row_index.get((eq, a, q))
                if r is None:
                    return None
                b[r] = c
        sol = self.solver.solve(b)
        if sol is None:
            return None
        vals = {u: {} for u in self.unknowns}
        for idx, c in sol.items():
            u, a, q = self.colkeys[idx]
            vals[u][(a, q)] = c
        return {u: RingElement(self.group, t) for u, t in vals.items()}


def solve_ring_system(equations, rhs, group, window=(0, 0)):
    return RingSystem(equations, group, window).solve(rhs)


def _span_union(*spans):
    spans = [s for s in spans if s is not None]
    if not spans:
        return None
    return min(s[0] for s in spans), max(s[1] for s in spans)


def initial_window(coeff_span, rhs_span):
    if coeff_span is None or rhs_span is None:
        return (0, 0)
    return (rhs_span[0] - coeff_span[1], rhs_span[1] - coeff_span[0])


def windows(group, base, cap=DEFAULT_WINDOW_CAP):
    """The sequence of t-windows to try: base, then padded by 1, 2, 4, ... <= cap."""
    if not group.has_t:
        yield (0, 0)
        return
    lo, hi = base
    yield (lo, hi)
    pad = 1
    while pad <= cap:
        yield (lo - pad, hi + pad)
        pad *= 2


def unit_inverse(x, cache=None):
    """The inverse of x when x is a unit of Z[G], else None.

    Over a Laurent ring only single-t-degree elements can be units, so this
    reduces to a finite regular-representation check.
    """
    if cache is not None:
        key = frozenset(x._t.items())
        if key in cache:
            return cache[key]
    inv = None
    ok, w = is_trivial_unit(x)
    if ok:
        sign, (a, b) = w
        inv = x.group.mono(-a, -b, sign)
    elif x.augmentation() in (1, -1) and len(x._t) <= x.group.m:
        G = x.group
        lo, hi = x.t_span()
        if lo == hi:
            v = _finite_unit(kill_t(x)) if G.has_t else _finite_unit(x)
            if isinstance(v, Trivial):
                inv = RingElement(G, {(a, -lo): c for (a, _), c in v.witness._t.items()})
    if cache is not None:
        cache[key] = inv
    return inv


def _eliminate(rows, rhs):
    """Gaussian elimination on unit pivots, in place.

    rows: {eq: {unknown: coeff}}; rhs: {eq: [RingElement, ...]} (one entry per
    right-hand side).  Returns the pivot records, in elimination order, as
    (unknown, row, rhs_row, pivot_inverse); the pivot equations are removed
    from rows and their unknown from every remaining row.  Trivial units are
    preferred since they cause no coefficient growth.
    """
    col = {}
    for eq, r in rows.items():
        for u in r:
            col.setdefault(u, set()).add(eq)
    pivots = []
    cache = {}
    while True:
        best = None
        for eq, r in rows.items():
            for u, c in r.items():
                pinv = unit_inverse(c, cache)
                if pinv is None:
                    continue
                cost = ((len(r) - 1) * (len(col[u]) - 1), len(pinv._t))
                if best is None or cost < best[0]:
                    best = (cost, eq, u, pinv)
            if best is not None and best[0] == (0, 1):
                break
        if best is None:
            return pivots
        _, eq, u, pinv = best
        prow = rows.pop(eq)
        prhs = rhs.pop(eq)
        for v in prow:
            col[v].discard(eq)
        for other in list(col[u]):
            r = rows[other]
            f = r[u] * pinv
            for v, c in prow.items():
                x = r.get(v)
                x = -(f * c) if x is None else x - f * c
                if x:
                    if v not in r:
                        col[v].add(other)
                    r[v] = x
                elif v in r:
                    del r[v]
                    col[v].discard(other)
            orhs = rhs[other]
            rhs[other] = [y - f * z if z else y for y, z in zip(orhs, prhs)]
        del col[u]
        pivots.append((u, prow, prhs, pinv))


def solve_ring_equations(equations, rhs_list, group, cap=DEFAULT_WINDOW_CAP):
    """Solve sparse Z[G]-linear equations for several right-hand sides.

    equations: {eq: [(coeff, unknown), ...]}; rhs_list: list of {eq: RingElement}.
    Returns a list with, per right-hand side, {unknown: RingElement} or None.
    Trivial-unit pivots are eliminated at the ring level; what is left is
    flattened to an integer system.
    """
    G = group
    z = G.zero()
    rows = {}
    unknowns = []
    seen = set()
    for eq, terms in equations.items():
        r = {}
        for c, u in terms:
            if u not in seen:
                seen.add(u)
                unknowns.append(u)
            if c:
                r[u] = r.get(u, z) + c
                if not r[u]:
                    del r[u]
        rows[eq] = r
    k = len(rhs_list)
    rhs = {eq: [b.get(eq, z) for b in rhs_list] for eq in rows}
    extra = set()
    for b in rhs_list:
        extra.update(e for e, v in b.items() if v and e not in rows)
    for e in extra:
        # an equation with no unknowns
        rows[e] = {}
        rhs[e] = [b.get(e, z) for b in rhs_list]
    pivots = _eliminate(rows, rhs)
    results = [None] * k
    pending = []
    for c in range(k):
        if any(rhs[eq][c] for eq, r in rows.items() if not r):
            continue
        pending.append(c)
    core = {eq: [(x, u) for u, x in r.items()] for eq, r in rows.items() if r}
    core_sol = {}
    if core and pending:
        spans = [x.t_span() for r in core.values() for x, _ in r]
        cspan = (min(s[0] for s in spans), max(s[1] for s in spans))
        rspans = [rhs[eq][c].t_span() for c in pending for eq in core if rhs[eq][c]]
        rspan = (min(s[0] for s in rspans), max(s[1] for s in rspans)) if rspans else None
        for win in windows(G, initial_window(cspan, rspan), cap):
            system = RingSystem(core, G, win)
            still = []
            for c in pending:
                sol = system.solve({eq: rhs[eq][c] for eq in core if rhs[eq][c]})
                if sol is None:
                    still.append(c)
                else:
                    core_sol[c] = sol
            pending = still
            if not pending:
                break
    else:
        for c in pending:
            core_sol[c] = {}
        pending = []
    failed = set(pending)
    for c in range(k):
        if c in failed or c not in core_sol:
            continue
        x = dict(core_sol[c])
        for u, prow, prhs, pinv in reversed(pivots):
            acc = prhs[c]
            for v, coeff in prow.items():
                if v != u:
                    y = x.get(v)
                    if y:
                        acc = acc - coeff * y
            x[u] = pinv * acc
        results[c] = {u: x.get(u, z) for u in unknowns}
    return results


def solve_left(A, B, cap=DEFAULT_WINDOW_CAP):
    """Find X with A @ X = B, or None if none exists within the t-windows."""
    G = A.group
    if B.nrows != A.nrows:
        raise ValueError("shape mismatch")
    k = A.ncols
    if B.ncols == 0:
        return GRMatrix.zeros(G, k, 0)
    if k == 0:
        return GRMatrix.zeros(G, 0, B.ncols) if B.is_zero() else None
    eqs = {i: [(A.rows[i][j], j) for j in range(k) if A.rows[i][j]] for i in range(A.nrows)}
    rhs_list = [{i: B.rows[i][c] for i in range(A.nrows) if B.rows[i][c]} for c in range(B.ncols)]
    sols = solve_ring_equations(eqs, rhs_list, G, cap)
    if any(s is None for s in sols):
        return None
    return GRMatrix(G, [[sols[c].get(j, G.zero()) for c in range(B.ncols)] for j in range(k)], k, B.ncols)
