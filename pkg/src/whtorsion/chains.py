"""Based chain complexes over Z[G] and Whitehead torsion of chain equivalences.

Conventions
-----------
* C_i is free on rank(i) basis elements; d_i : C_i -> C_{i-1} is a
  rank(i-1) x rank(i) matrix acting on column vectors.
* dual_complex(C, n) has C_{n-i}^* in degree i with differential the
  involute-transpose of d_{n-i+1}; no signs.
* cone(f)_i = S_{i-1} (+) T_i with differential [[-d_S, 0], [f, d_T]].
* The torsion of an acyclic complex with contraction delta is the class of
  d + delta : C_odd -> C_even, and tau(f) is the torsion of cone(f).
"""
from .group_ring import kill_t, DEFAULT_WINDOW_CAP
from .linsys import solve_left, solve_ring_equations
from .matrices import GRMatrix, direct_sum as mat_sum
from .verdict import Absent, NOT_ACYCLIC, NOT_NULLHOMOTOPIC, UNKNOWN
from .whitehead import wh_of_matrix


class NotAnEquivalence(ValueError):
    pass


class Inconclusive(RuntimeError):
    """A bounded search ran out before reaching a decision."""


def _span(*mats):
    spans = [M.t_span() for M in mats if M is not None]
    spans = [s for s in spans if s is not None]
    if not spans:
        return None
    return min(s[0] for s in spans), max(s[1] for s in spans)


class BasedComplex:
    """A finite free based chain complex concentrated in degrees 0..top."""

    def __init__(self, group, ranks, diffs=None, check=True):
        self.group = group
        self.ranks = tuple(int(r) for r in ranks)
        if not self.ranks or any(r < 0 for r in self.ranks):
            raise ValueError("ranks must be a nonempty list of nonnegative integers")
        diffs = diffs or {}
        if isinstance(diffs, (list, tuple)):
            diffs = {i + 1: M for i, M in enumerate(diffs)}
        self._d = {}
        for i in range(1, len(self.ranks)):
            M = diffs.get(i)
            shape = (self.ranks[i - 1], self.ranks[i])
            if M is None:
                M = GRMatrix.zeros(group, *shape)
            if M.shape != shape:
                raise ValueError(f"d_{i} has shape {M.shape}, expected {shape}")
            if M.group != group:
                raise ValueError(f"d_{i} is over the wrong group")
            self._d[i] = M
        extra = [i for i in diffs if i < 1 or i >= len(self.ranks)]
        if any(not diffs[i].is_zero() for i in extra):
            raise ValueError("differential outside the degree range")
        if check:
            for i in range(2, len(self.ranks)):
                if not (self._d[i - 1] @ self._d[i]).is_zero():
                    raise ValueError(f"d_{i - 1} d_{i} != 0")

    @property
    def top(self):
        return len(self.ranks) - 1

    def rank(self, i):
        return self.ranks[i] if 0 <= i < len(self.ranks) else 0

    def d(self, i):
        M = self._d.get(i)
        if M is None:
            return GRMatrix.zeros(self.group, self.rank(i - 1), self.rank(i))
        return M

    def support(self):
        return [i for i, r in enumerate(self.ranks) if r]

    def euler_characteristic(self):
        return sum((-1) ** i * r for i, r in enumerate(self.ranks))

    def is_zero(self):
        return not any(self.ranks)

    def with_top(self, top):
        """Same complex, padded with zero modules (or trimmed of them) up to top."""
        if any(self.rank(i) for i in range(top + 1, len(self.ranks))):
            raise ValueError("cannot trim nonzero modules")
        ranks = [self.rank(i) for i in range(top + 1)]
        return BasedComplex(self.group, ranks, {i: self.d(i) for i in range(1, top + 1)}, check=False)

    def __eq__(self, other):
        if not isinstance(other, BasedComplex):
            return NotImplemented
        return (self.group == other.group and self.ranks == other.ranks
                and all(self.d(i) == other.d(i) for i in range(1, len(self.ranks))))

    def __hash__(self):
        return hash((self.group, self.ranks))

    def __repr__(self):
        return f"BasedComplex({self.group}, ranks={list(self.ranks)})"


class ChainMap:
    def __init__(self, source, target, mats=None, check=True):
        if source.group != target.group:
            raise ValueError("chain map between complexes over different groups")
        self.source = source
        self.target = target
        self.group = source.group
        self.top = max(source.top, target.top)
        mats = mats or {}
        if isinstance(mats, (list, tuple)):
            mats = dict(enumerate(mats))
        self._f = {}
        for i in range(self.top + 1):
            shape = (target.rank(i), source.rank(i))
            M = mats.get(i)
            if M is None:
                M = GRMatrix.zeros(self.group, *shape)
            if M.shape != shape:
                raise ValueError(f"f_{i} has shape {M.shape}, expected {shape}")
            self._f[i] = M
        if check:
            for i in range(1, self.top + 1):
                if target.d(i) @ self._f[i] != self._f[i - 1] @ source.d(i):
                    raise ValueError(f"not a chain map in degree {i}")

    def f(self, i):
        M = self._f.get(i)
        if M is None:
            return GRMatrix.zeros(self.group, self.target.rank(i), self.source.rank(i))
        return M

    __getitem__ = f

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and all(self.f(i) == other.f(i) for i in range(self.top + 1)))

    def __hash__(self):
        return hash((self.source, self.target))

    def __add__(self, other):
        self._same_ends(other)
        return ChainMap(self.source, self.target, {i: self.f(i) + other.f(i) for i in range(self.top + 1)},
                        check=False)

    def __sub__(self, other):
        self._same_ends(other)
        return ChainMap(self.source, self.target, {i: self.f(i) - other.f(i) for i in range(self.top + 1)},
                        check=False)

    def __neg__(self):
        return ChainMap(self.source, self.target, {i: -self.f(i) for i in range(self.top + 1)}, check=False)

    def __matmul__(self, other):
        """Composition self after other."""
        return compose(self, other)

    def _same_ends(self, other):
        if self.source != other.source or self.target != other.target:
            raise ValueError("maps have different source or target")

    def is_zero(self):
        return all(self.f(i).is_zero() for i in range(self.top + 1))

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


class ChainHomotopy:
    """h with g - f = d h + h d, where f, g : S -> T and h_i : S_i -> T_{i+1}."""

    def __init__(self, f, g, mats, check=True):
        f._same_ends(g)
        self.f, self.g = f, g
        S, T = f.source, f.target
        top = max(S.top, T.top)
        self._h = {}
        for i in range(top + 1):
            shape = (T.rank(i + 1), S.rank(i))
            M = mats.get(i) if isinstance(mats, dict) else (mats[i] if i < len(mats) else None)
            if M is None:
                M = GRMatrix.zeros(S.group, *shape)
            if M.shape != shape:
                raise ValueError(f"h_{i} has shape {M.shape}, expected {shape}")
            self._h[i] = M
        if check:
            for i in range(top + 1):
                lhs = g.f(i) - f.f(i)
                rhs = T.d(i + 1) @ self.h(i)
                if i > 0:
                    rhs = rhs + self.h(i - 1) @ S.d(i)
                if lhs != rhs:
                    raise ValueError(f"homotopy identity fails in degree {i}")

    def h(self, i):
        M = self._h.get(i)
        if M is None:
            S, T = self.f.source, self.f.target
            return GRMatrix.zeros(S.group, T.rank(i + 1), S.rank(i))
        return M


class Contraction:
    """delta with d delta + delta d = 1."""

    def __init__(self, complex, mats, check=True):
        C = complex
        self.complex = C
        self._delta = {}
        for i in range(C.top + 1):
            M = mats.get(i)
            shape = (C.rank(i + 1), C.rank(i))
            if M is None:
                M = GRMatrix.zeros(C.group, *shape)
            if M.shape != shape:
                raise ValueError(f"delta_{i} has shape {M.shape}, expected {shape}")
            self._delta[i] = M
        if check:
            for i in range(C.top + 1):
                lhs = C.d(i + 1) @ self.delta(i)
                if i > 0:
                    lhs = lhs + self.delta(i - 1) @ C.d(i)
                if lhs != GRMatrix.identity(C.group, C.rank(i)):
                    raise ValueError(f"contraction identity fails in degree {i}")

    def delta(self, i):
        M = self._delta.get(i)
        if M is None:
            C = self.complex
            return GRMatrix.zeros(C.group, C.rank(i + 1), C.rank(i))
        return M


# -- constructions ----------------------------------------------------------

def zero_complex(group, top=0):
    return BasedComplex(group, [0] * (top + 1))


def identity_map(C):
    return ChainMap(C, C, {i: GRMatrix.identity(C.group, C.rank(i)) for i in range(C.top + 1)}, check=False)


def zero_map(S, T):
    return ChainMap(S, T, {}, check=False)


def scalar_map(C, u):
    """u times the identity; a chain map because Z[G] is commutative."""
    return ChainMap(C, C, {i: GRMatrix.scalar(C.group, C.rank(i), u) for i in range(C.top + 1)}, check=False)


def compose(g, f):
    """g after f."""
    if f.target != g.source:
        raise ValueError("maps are not composable")
    top = max(f.top, g.top)
    return ChainMap(f.source, g.target, {i: g.f(i) @ f.f(i) for i in range(top + 1)}, check=False)


def direct_sum(C, D):
    if C.group != D.group:
        raise ValueError("direct sum over different groups")
    top = max(C.top, D.top)
    ranks = [C.rank(i) + D.rank(i) for i in range(top + 1)]
    return BasedComplex(C.group, ranks, {i: mat_sum(C.d(i), D.d(i)) for i in range(1, top + 1)}, check=False)


def direct_sum_map(f, g):
    S = direct_sum(f.source, g.source)
    T = direct_sum(f.target, g.target)
    top = max(S.top, T.top)
    return ChainMap(S, T, {i: mat_sum(f.f(i), g.f(i)) for i in range(top + 1)}, check=False)


def homotopy_perturb(f, h):
    """f + d h + h d for a family h_i : S_i -> T_{i+1}."""
    S, T = f.source, f.target
    out = {}
    for i in range(f.top + 1):
        hi = h.get(i) if h.get(i) is not None else GRMatrix.zeros(S.group, T.rank(i + 1), S.rank(i))
        M = f.f(i) + T.d(i + 1) @ hi
        if i > 0 and h.get(i - 1) is not None:
            M = M + h[i - 1] @ S.d(i)
        out[i] = M
    return ChainMap(S, T, out, check=False)


def dual_complex(C, n):
    """C^{n-*}: degree i holds the dual of C_{n-i}."""
    if n < C.top and any(C.rank(i) for i in range(n + 1, C.top + 1)):
        raise ValueError(f"ambient dimension {n} is below the top degree {C.top}")
    ranks = [C.rank(n - i) for i in range(n + 1)]
    diffs = {i: C.d(n - i + 1).conj_t() for i in range(1, n + 1)}
    return BasedComplex(C.group, ranks, diffs, check=False)


def dual_map(f, n):
    """f^* : T^{n-*} -> S^{n-*} for f : S -> T."""
    S, T = f.source, f.target
    return ChainMap(dual_complex(T, n), dual_complex(S, n),
                    {i: f.f(n - i).conj_t() for i in range(n + 1)}, check=False)


def shift(C, k):
    """The complex C_{k+*}, i.e. degree i holds C_{i+k}."""
    if any(C.rank(i) for i in range(min(k, C.top + 1))):
        raise ValueError(f"shifting by {k} pushes nonzero modules below degree 0")
    top = max(C.top - k, 0)
    ranks = [C.rank(i + k) for i in range(top + 1)]
    return BasedComplex(C.group, ranks, {i: C.d(i + k) for i in range(1, top + 1)}, check=False)


def shift_map(f, k):
    S, T = shift(f.source, k), shift(f.target, k)
    top = max(S.top, T.top)
    return ChainMap(S, T, {i: f.f(i + k) for i in range(top + 1)}, check=False)


def transport_complex(C, theta):
    G = theta.target
    return BasedComplex(G, C.ranks, {i: C.d(i).map_entries(theta, G) for i in range(1, C.top + 1)}, check=False)


def transport_map(f, theta):
    G = theta.target
    S, T = transport_complex(f.source, theta), transport_complex(f.target, theta)
    return ChainMap(S, T, {i: f.f(i).map_entries(theta, G) for i in range(f.top + 1)}, check=False)


def kill_t_complex(C):
    F = C.group.finite_part()
    return BasedComplex(F, C.ranks, {i: C.d(i).map_entries(kill_t, F) for i in range(1, C.top + 1)}, check=False)


def kill_t_map(f):
    F = f.group.finite_part()
    S, T = kill_t_complex(f.source), kill_t_complex(f.target)
    return ChainMap(S, T, {i: f.f(i).map_entries(kill_t, F) for i in range(f.top + 1)}, check=False)


def cone(f):
    S, T = f.source, f.target
    G = f.group
    top = max(S.top + 1, T.top)
    ranks = [S.rank(i - 1) + T.rank(i) for i in range(top + 1)]
    diffs = {}
    for i in range(1, top + 1):
        rows = [S.rank(i - 2), T.rank(i - 1)]
        cols = [S.rank(i - 1), T.rank(i)]
        grid = [[-S.d(i - 1), None], [f.f(i - 1), T.d(i)]]
        diffs[i] = GRMatrix.blocks(G, grid, rows, cols)
    return BasedComplex(G, ranks, diffs, check=False)


# -- solving ----------------------------------------------------------------

def find_contraction(C, cap=DEFAULT_WINDOW_CAP):
    """A contraction of C, or Absent(NotAcyclic) / Absent(Unknown).

    Degree by degree: delta_i solves d_{i+1} delta_i = 1 - delta_{i-1} d_i.  For
    an acyclic complex the right side always lies in ker d_i = im d_{i+1}, so
    any earlier choice extends; a failure over C_m therefore proves that C is
    not acyclic.
    """
    G = C.group
    deltas = {}
    prev = None
    for i in range(C.top + 1):
        rhs = GRMatrix.identity(G, C.rank(i))
        if prev is not None and C.rank(i):
            rhs = rhs - prev @ C.d(i)
        if not C.rank(i):
            X = GRMatrix.zeros(G, C.rank(i + 1), 0)
        elif not C.rank(i + 1):
            X = GRMatrix.zeros(G, 0, C.rank(i)) if rhs.is_zero() else None
        else:
            X = solve_left(C.d(i + 1), rhs, cap)
        if X is None:
            if not G.has_t:
                return Absent(NOT_ACYCLIC, f"no solution in degree {i}")
            if isinstance(find_contraction(kill_t_complex(C)), Absent):
                return Absent(NOT_ACYCLIC, "not acyclic after t -> 1")
            return Absent(UNKNOWN, f"no solution in degree {i} within the t-window cap {cap}")
        deltas[i] = X
        prev = X
    return Contraction(C, deltas, check=False)


def _greedy_nullhomotopy(f, cap):
    S, T = f.source, f.target
    G = f.group
    hs = {}
    prev = None
    for i in range(f.top + 1):
        rhs = f.f(i)
        if prev is not None and S.rank(i):
            rhs = rhs - prev @ S.d(i)
        if not S.rank(i):
            X = GRMatrix.zeros(G, T.rank(i + 1), 0)
        elif not T.rank(i + 1):
            X = GRMatrix.zeros(G, 0, S.rank(i)) if rhs.is_zero() else None
        else:
            X = solve_left(T.d(i + 1), rhs, cap)
        if X is None:
            return None
        hs[i] = X
        prev = X
    return hs


def _global_nullhomotopy(f, cap):
    S, T = f.source, f.target
    G = f.group
    eqs = {}
    rhs = {}
    for i in range(f.top + 1):
        dT = T.d(i + 1)
        dS = S.d(i)
        Fi = f.f(i)
        for a in range(T.rank(i)):
            for b in range(S.rank(i)):
                terms = []
                for c in range(T.rank(i + 1)):
                    terms.append((dT.rows[a][c], ("h", i, c, b)))
                if i > 0:
                    for c in range(S.rank(i - 1)):
                        terms.append((dS.rows[c][b], ("h", i - 1, a, c)))
                eqs[(i, a, b)] = terms
                if Fi.rows[a][b]:
                    rhs[(i, a, b)] = Fi.rows[a][b]
    sol, = solve_ring_equations(eqs, [rhs], G, cap)
    if sol is None:
        return None
    hs = {}
    for i in range(f.top + 1):
        rows = [[sol.get(("h", i, c, b), G.zero()) for b in range(S.rank(i))] for c in range(T.rank(i + 1))]
        hs[i] = GRMatrix(G, rows, T.rank(i + 1), S.rank(i))
    return hs


def is_nullhomotopic(f, cap=DEFAULT_WINDOW_CAP):
    """A ChainHomotopy from 0 to f, or Absent(NotNullhomotopic) / Absent(Unknown)."""
    zero = zero_map(f.source, f.target)
    if f.is_zero():
        return ChainHomotopy(zero, f, {}, check=False)
    hs = _greedy_nullhomotopy(f, cap)
    if hs is None:
        hs = _global_nullhomotopy(f, cap)
    if hs is not None:
        return ChainHomotopy(zero, f, hs)
    if not f.group.has_t:
        return Absent(NOT_NULLHOMOTOPIC, "the linear system dh + hd = f has no integer solution")
    if isinstance(is_nullhomotopic(kill_t_map(f)), Absent):
        return Absent(NOT_NULLHOMOTOPIC, "not nullhomotopic after t -> 1")
    return Absent(UNKNOWN, f"no homotopy within the t-window cap {cap}")


def homotopic(f, g, cap=DEFAULT_WINDOW_CAP):
    """A ChainHomotopy from f to g, or Absent."""
    h = is_nullhomotopic(g - f, cap)
    if isinstance(h, Absent):
        return h
    return ChainHomotopy(f, g, h._h, check=False)


# -- torsion ----------------------------------------------------------------

def torsion_matrix(C, contraction):
    """The square matrix d + delta : C_odd -> C_even."""
    G = C.group
    top = C.top
    odd = [i for i in range(1, top + 1, 2)]
    even = [i for i in range(0, top + 1, 2)]
    grid = []
    for j in even:
        row = []
        for i in odd:
            if j == i - 1:
                row.append(C.d(i))
            elif j == i + 1:
                row.append(contraction.delta(i))
            else:
                row.append(None)
        grid.append(row)
    rs = [C.rank(j) for j in even]
    cs = [C.rank(i) for i in odd]
    return GRMatrix.blocks(G, grid, rs, cs)


def torsion_acyclic(C, contraction=None):
    if contraction is None:
        contraction = require_contraction(C)
    A = torsion_matrix(C, contraction)
    if A.nrows != A.ncols:
        raise AssertionError("d + delta is not square: the contraction is broken")
    return wh_of_matrix(A, invertible=True)


def require_contraction(C, cap=DEFAULT_WINDOW_CAP):
    c = find_contraction(C, cap)
    if isinstance(c, Absent):
        if c.reason == NOT_ACYCLIC:
            raise NotAnEquivalence(c.detail)
        raise Inconclusive(c.detail)
    return c


def torsion_map(f, cap=DEFAULT_WINDOW_CAP):
    """Whitehead torsion of a chain homotopy equivalence, via its cone."""
    C = cone(f)
    return torsion_acyclic(C, require_contraction(C, cap))


def homotopy_inverse(f, cap=DEFAULT_WINDOW_CAP):
    """A homotopy inverse of f, read off from a contraction of cone(f).

    With cone_i = S_{i-1} + T_i, the T_i -> S_i block of delta_i is a chain map
    g : T -> S, and the contraction identity gives g f ~ 1 and f g ~ 1.
    """
    C = cone(f)
    delta = require_contraction(C, cap)
    S, T = f.source, f.target
    mats = {}
    for i in range(max(S.top, T.top) + 1):
        D = delta.delta(i)
        mats[i] = D.submatrix(0, S.rank(i), S.rank(i - 1), S.rank(i - 1) + T.rank(i))
    return ChainMap(T, S, mats)
