"""Randomised property suites.

Every trial is a pure function of (seed, suite, index): its generator is
random.Random(f"{seed}:{suite}:{index}").  Instances are built so that the
expected torsion is known independently of the cone computation:

* complexes are direct sums of small pieces (a free cell, a map between two
  cells, a lens-type chain), followed by a change of basis;
* equivalences are changes of basis, with torsion the alternating sum of
  the classes of their determinants, composed with unit scalings of whole
  pieces, stabilisations and homotopy perturbations.
"""
import random
from dataclasses import dataclass, field

from .chains import (BasedComplex, ChainMap, cone, compose, direct_sum, direct_sum_map, dual_complex, dual_map, find_contraction,
                     homotopy_inverse, homotopy_perturb, shift_map, torsion_acyclic, torsion_map, transport_complex,
                     Contraction, Inconclusive)
from .doubles import (ThickeningModel, isolated_cells, build_generalised_double, build_trivial_double, build_twisted_double,
                      hcobordism_swap, manifold_base_vanishing_check, swap_prediction, theoremB_check)
from .group_ring import GroupSpec, RingIso, involute, is_unit, small_units
from .matrices import GRMatrix
from .split_duality import DualityPair, reassemble, split_formula_check, lower
from .whitehead import WhElement, wh_involute, wh_is_trivial
from . import tlx

SUITES = ("calculus", "split", "theoremB", "parity", "doubles")


# -- random ring data -------------------------------------------------------

class Gen:
    # t-degrees compound under composition, so most monomials stay at t^0
    P_T = 0.3

    def __init__(self, rng, group, tmax=1):
        self.rng = rng
        self.G = group
        self.tmax = tmax if group.has_t else 0

    def _tdeg(self):
        r = self.rng
        if not self.tmax or r.random() >= self.P_T:
            return 0
        return r.choice([b for b in range(-self.tmax, self.tmax + 1) if b])

    def mono(self):
        r = self.rng
        a = r.randrange(self.G.m)
        return self.G.mono(a, self._tdeg(), r.choice((1, -1)))

    def small(self, terms=2):
        x = self.G.zero()
        for _ in range(self.rng.randint(1, terms)):
            x = x + self.mono()
        return x

    def trivial_unit(self):
        r = self.rng
        a = r.randrange(self.G.m)
        b = self._tdeg()
        sgn = r.choice((1, -1))
        return self.G.mono(a, b, sgn), self.G.mono(-a, -b, sgn)

    def unit(self, p_nontrivial=0.6):
        """A unit with its inverse; nontrivial when the group has any to offer."""
        u, ui = self.trivial_unit()
        pool = small_units(self.G) if self.G.has_s else []
        if pool and self.rng.random() < p_nontrivial:
            v = self.rng.choice(pool)
            vi = is_unit(v).witness
            if self.rng.random() < 0.5:
                v, vi = vi, v
            u, ui = u * v, ui * vi
        return u, ui

    def wh(self, p_nontrivial=0.8):
        u, ui = self.unit(p_nontrivial)
        return WhElement(u, ui)

    def automorphism(self, r, elementary=2, p_unit=0.5, protect=()):
        """A random invertible r x r matrix with its inverse and the class of its determinant.

        Elementary operations avoid the indices in protect (after the
        permutation), so a coordinate that no differential touches stays so.
        """
        G = self.G
        B = GRMatrix.identity(G, r)
        Bi = GRMatrix.identity(G, r)
        det, deti = G.one(), G.one()
        if r == 0:
            return B, Bi, WhElement(det, deti, check=False)
        # diagonal units
        diag, diagi = [], []
        for _ in range(r):
            if self.rng.random() < p_unit:
                u, ui = self.unit()
            else:
                u, ui = self.trivial_unit()
            diag.append(u)
            diagi.append(ui)
            det, deti = det * u, deti * ui
        B = GRMatrix.diag(G, diag)
        Bi = GRMatrix.diag(G, diagi)
        if r > 1:
            perm = list(range(r))
            self.rng.shuffle(perm)
            Pm = GRMatrix(G, [[G.one() if perm[i] == j else G.zero() for j in range(r)] for i in range(r)])
            B, Bi = Pm @ B, Bi @ Pm.transpose()
            free = [i for i in range(r) if perm[i] not in protect]
            for _ in range(elementary if len(free) > 1 else 0):
                i, j = self.rng.sample(free, 2)
                x = self.small(1)
                E = _elementary(G, r, i, j, x)
                Ei = _elementary(G, r, i, j, -x)
                B, Bi = E @ B, Bi @ Ei
        return B, Bi, WhElement(det, deti, check=False)


def _elementary(G, r, i, j, x):
    rows = [[G.one() if a == b else G.zero() for b in range(r)] for a in range(r)]
    rows[i][j] = x
    return GRMatrix(G, rows, r, r)


# -- complexes with known structure -----------------------------------------

@dataclass
class Piece:
    kind: str          # "cell", "pair", "chain"
    degrees: tuple     # degrees of its cells, top first
    entries: tuple     # differentials along the piece, top first
    acyclic_unit: bool = False

    @property
    def chi(self):
        return sum((-1) ** d for d in self.degrees)


@dataclass
class FuzzComplex:
    """complex = B(block sum of pieces)."""
    group: GroupSpec
    pieces: list
    top: int
    B: dict = field(default_factory=dict)
    Bi: dict = field(default_factory=dict)
    block: BasedComplex = None
    complex: BasedComplex = None

    def cells(self):
        """Per piece, its (degree, index) cells in the block layout."""
        counters = [0] * (self.top + 1)
        out = []
        for p in self.pieces:
            cs = []
            for d in p.degrees:
                cs.append((d, counters[d]))
                counters[d] += 1
            out.append(cs)
        return out


def _assemble_block(G, pieces, top):
    ranks = [0] * (top + 1)
    for p in pieces:
        for d in p.degrees:
            ranks[d] += 1
    layout = []
    counters = [0] * (top + 1)
    for p in pieces:
        cs = []
        for d in p.degrees:
            cs.append((d, counters[d]))
            counters[d] += 1
        layout.append(cs)
    diffs = {i: [[G.zero()] * ranks[i] for _ in range(ranks[i - 1])] for i in range(1, top + 1)}
    for p, cs in zip(pieces, layout):
        for (d_hi, i_hi), (d_lo, i_lo), x in zip(cs, cs[1:], p.entries):
            diffs[d_hi][i_lo][i_hi] = x
    mats = {i: GRMatrix(G, rows, ranks[i - 1], ranks[i]) for i, rows in diffs.items()}
    return BasedComplex(G, ranks, mats)


def change_basis(C, B, Bi):
    """The complex with differentials B_{i-1} d_i B_i^{-1}."""
    return BasedComplex(C.group, C.ranks, {i: B[i - 1] @ C.d(i) @ Bi[i] for i in range(1, C.top + 1)})


def random_pieces(g, top, rank_max=3, count=None, kinds=("cell", "pair", "chain")):
    G = g.G
    rng = g.rng
    ranks = [0] * (top + 1)
    pieces = []
    count = count if count is not None else rng.randint(1, 4)
    for _ in range(count * 3):
        if len(pieces) >= count:
            break
        kind = rng.choice(kinds)
        if kind == "cell":
            d = rng.randint(0, top)
            p = Piece("cell", (d,), ())
        elif kind == "pair":
            if top < 1:
                continue
            d = rng.randint(1, top)
            if rng.random() < 0.6:
                x, _ = g.unit()
                p = Piece("pair", (d, d - 1), (x,), True)
            else:
                x = g.small(2)
                if not x:
                    continue
                p = Piece("pair", (d, d - 1), (x,))
        else:
            if G.has_s and top >= 3:
                d = rng.randint(3, top)
                s1 = G.mono(1, 0) - G.one()
                p = Piece("chain", (d, d - 1, d - 2, d - 3), (s1, G.norm(), s1))
            elif G.has_t and top >= 1:
                d = rng.randint(1, top)
                p = Piece("pair", (d, d - 1), (G.mono(0, 1) - G.one(),))
            else:
                continue
        if any(ranks[d] + 1 > rank_max for d in p.degrees):
            continue
        for d in p.degrees:
            ranks[d] += 1
        pieces.append(p)
    if not pieces:
        pieces.append(Piece("cell", (0,), ()))
    return pieces


def random_complex(g, top, rank_max=3, count=None, kinds=("cell", "pair", "chain"), basis_change=True,
                   protect_isolated=False):
    G = g.G
    pieces = random_pieces(g, top, rank_max, count, kinds)
    block = _assemble_block(G, pieces, top)
    return _with_basis(g, pieces, block, top, basis_change, protect_isolated)


def _protected(C, i, on):
    return {b for (j, b) in isolated_cells(C) if j == i} if on else ()


def _with_basis(g, pieces, block, top, basis_change=True, protect_isolated=False):
    G = g.G
    B, Bi = {}, {}
    for i in range(top + 1):
        if basis_change:
            M, Mi, _ = g.automorphism(block.rank(i), p_unit=0.0, protect=_protected(block, i, protect_isolated))
        else:
            M = Mi = GRMatrix.identity(G, block.rank(i))
        B[i], Bi[i] = M, Mi
    return FuzzComplex(G, pieces, top, B, Bi, block, change_basis(block, B, Bi))


def piece_scaling(g, X, p_scale=0.5):
    """A self-equivalence of X scaling whole pieces by units, conjugated into X's basis.

    Returns (map, torsion): scaling a piece by v has torsion chi(piece) [v].
    """
    G = g.G
    diag = {i: [G.one()] * X.block.rank(i) for i in range(X.top + 1)}
    tau = WhElement.zero(G)
    for p, cs in zip(X.pieces, X.cells()):
        if g.rng.random() >= p_scale:
            continue
        w = g.wh()
        if p.chi == 0:
            v = w.rep
        else:
            v = w.rep
            tau = tau + w * p.chi
        for d, idx in cs:
            diag[d][idx] = v
    mats = {i: X.B[i] @ GRMatrix.diag(G, diag[i]) @ X.Bi[i] for i in range(X.top + 1)}
    return ChainMap(X.complex, X.complex, mats), tau


def random_homotopy(g, S, T, density=0.3):
    G = g.G
    h = {}
    for i in range(max(S.top, T.top) + 1):
        r, c = T.rank(i + 1), S.rank(i)
        if not r or not c:
            continue
        rows = [[g.small(1) if g.rng.random() < density else G.zero() for _ in range(c)] for _ in range(r)]
        h[i] = GRMatrix(G, rows, r, c)
    return h


@dataclass
class Equivalence:
    map: ChainMap
    target: FuzzComplex
    tau: WhElement


def random_equivalence(g, X, stabilise=0.3, perturb=0.5, protect_isolated=False):
    """f : X -> Y built from a basis change, piece scalings, stabilisation and a homotopy."""
    G = g.G
    sigma, tau = piece_scaling(g, X)
    B, Bi = {}, {}
    for i in range(X.top + 1):
        M, Mi, dt = g.automorphism(X.complex.rank(i), protect=_protected(X.complex, i, protect_isolated))
        B[i], Bi[i] = M, Mi
        tau = tau + dt * ((-1) ** i)
    Y = change_basis(X.complex, B, Bi)
    f = compose(ChainMap(X.complex, Y, B, check=False), sigma)
    YB = {i: B[i] @ X.B[i] for i in range(X.top + 1)}
    YBi = {i: X.Bi[i] @ Bi[i] for i in range(X.top + 1)}
    FY = FuzzComplex(G, list(X.pieces), X.top, YB, YBi, X.block, Y)
    if X.top >= 1 and g.rng.random() < stabilise:
        d = g.rng.randint(1, X.top)
        x, _ = g.trivial_unit()
        E = Piece("pair", (d, d - 1), (x,), True)
        pieces = FY.pieces + [E]
        block = _assemble_block(G, pieces, X.top)
        # the new cells sit last in their degrees
        nb, nbi = {}, {}
        for i in range(X.top + 1):
            extra = block.rank(i) - Y.rank(i)
            nb[i] = _pad_identity(YB[i], extra)
            nbi[i] = _pad_identity(YBi[i], extra)
        Y2 = change_basis(block, nb, nbi)
        inc = {i: GRMatrix.blocks(G, [[GRMatrix.identity(G, Y.rank(i))], [None]],
                                  [Y.rank(i), Y2.rank(i) - Y.rank(i)], [Y.rank(i)]) for i in range(X.top + 1)}
        f = compose(ChainMap(Y, Y2, inc), f)
        FY = FuzzComplex(G, pieces, X.top, nb, nbi, block, Y2)
    if g.rng.random() < perturb:
        f = homotopy_perturb(f, random_homotopy(g, f.source, f.target))
        f = ChainMap(f.source, f.target, {i: f.f(i) for i in range(f.top + 1)})
    return Equivalence(f, FY, tau)


def _pad_identity(M, extra):
    from .matrices import direct_sum as msum
    return msum(M, GRMatrix.identity(M.group, extra))


# -- trial bookkeeping ------------------------------------------------------

@dataclass
class TrialResult:
    index: int
    passed: bool
    checks: dict
    params: dict
    counterexample: str = None
    inconclusive: bool = False

    def to_json(self):
        out = {"index": self.index, "passed": self.passed, "checks": self.checks, "params": self.params}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _eq(x, y):
    return wh_is_trivial(x - y)


def trial_rng(seed, suite, index):
    return random.Random(f"{seed}:{suite}:{index}")


def _pick_group(rng, m_range, product_p=0.25, allow_w=True):
    m = rng.choice(list(m_range))
    ws = -1 if allow_w and m % 2 == 0 and rng.random() < 0.2 else 1
    if rng.random() < product_p:
        return GroupSpec.product(m, ws)
    return GroupSpec.cyclic(m, ws)


def _echo(group, **named):
    doc = tlx.TLXDocument(group=group)
    seen = {}
    for name, obj in named.items():
        if isinstance(obj, BasedComplex):
            doc.add_complex(name, obj)
            seen[id(obj)] = name
    for name, obj in named.items():
        if isinstance(obj, ChainMap):
            src = _find(doc, obj.source, f"{name}_source")
            tgt = _find(doc, obj.target, f"{name}_target")
            doc.add_map(name, obj, src, tgt)
    return tlx.emit(doc)


def _find(doc, C, fallback):
    for k, v in doc.complexes.items():
        if v == C:
            return k
    doc.add_complex(fallback, C)
    return fallback


def _finish(index, checks, params, echo):
    passed = all(v == "Trivial" for v in checks.values())
    inconclusive = not passed and all(v in ("Trivial", "Unknown") for v in checks.values())
    return TrialResult(index, passed, checks, params, None if passed else echo(), inconclusive)


# -- suites -----------------------------------------------------------------

def calculus_trial(seed, index, m_range=range(2, 10), n_range=None):
    rng = trial_rng(seed, "calculus", index)
    G = _pick_group(rng, m_range)
    g = Gen(rng, G)
    top = rng.randint(1, 3 if G.has_t else 5)
    X = random_complex(g, top)
    e1 = random_equivalence(g, X)
    e2 = random_equivalence(g, e1.target)
    f, h = e1.map, e2.map
    checks = {}
    tf = torsion_map(f)
    th = torsion_map(h)
    checks["oracle"] = _eq(tf, e1.tau).name
    checks["composition"] = _eq(torsion_map(compose(h, f)), tf + th).name
    checks["shift_1"] = _eq(torsion_map(shift_map(f, -1)), -tf).name
    checks["shift_2"] = _eq(torsion_map(shift_map(f, -2)), tf).name
    n = max(f.source.top, f.target.top) + rng.randint(0, 1)
    dual_expected = wh_involute(tf) if n % 2 == 0 else -wh_involute(tf)
    checks["duality"] = _eq(torsion_map(dual_map(f, n)), dual_expected).name
    f2 = homotopy_perturb(f, random_homotopy(g, f.source, f.target, 0.5))
    checks["homotopy"] = _eq(torsion_map(f2), tf).name
    Z = random_complex(g, rng.randint(1, 4), rank_max=2)
    e3 = random_equivalence(g, Z)
    checks["additivity"] = _eq(torsion_map(direct_sum_map(f, e3.map)), tf + e3.tau).name
    checks["contraction_choice"] = _contraction_choice(g, cone(f)).name
    params = {"group": str(G), "top": top, "ranks": list(f.source.ranks), "dual_n": n}
    return _finish(index, checks, params, lambda: _echo(G, X=f.source, Y=f.target, f=f, Y2=h.target, g=h))


def _contraction_choice(g, C):
    """Two contractions, delta and delta + d k d, must give the same torsion."""
    d1 = find_contraction(C)
    G = C.group
    k = {}
    for i in range(C.top + 1):
        r, c = C.rank(i + 3), C.rank(i)
        if r and c:
            k[i] = GRMatrix(G, [[g.small(1) for _ in range(c)] for _ in range(r)], r, c)
    mats = {}
    for i in range(C.top + 1):
        M = d1.delta(i)
        if i - 1 in k:
            M = M + C.d(i + 2) @ k[i - 1] @ C.d(i)
        mats[i] = M
    d2 = Contraction(C, mats)
    return _eq(torsion_acyclic(C, d1), torsion_acyclic(C, d2))


def split_trial(seed, index, m_range=range(2, 10), n_range=range(4, 9)):
    rng = trial_rng(seed, "split", index)
    G = _pick_group(rng, m_range, product_p=0.15)
    g = Gen(rng, G)
    n = rng.choice(list(n_range))
    k = rng.randint(0, max(0, (n - 2) // 2))
    k = min(k, 2)
    X = random_complex(g, k, rank_max=2, count=rng.randint(1, 3))
    # second complex: a change of basis of the first
    e = random_equivalence(g, X, stabilise=0.0, perturb=0.0)
    P = _random_duality(g, X, n)
    Q = _random_duality(g, e.target, n)
    # lower block of f: the basis change composed with a piece scaling, perturbed
    sigma, _ = piece_scaling(g, X, 0.5)
    fl = compose(e.map, sigma)
    fl = ChainMap(lower(P.complex, n), lower(Q.complex, n), {i: fl.f(i) for i in range(fl.top + 1)})
    Pu, Qu = P.restricted(), Q.restricted()
    fu = compose(Qu, compose(dual_map(homotopy_inverse(fl), n), homotopy_inverse(Pu)))
    f = reassemble(fl, fu, P.complex, Q.complex)
    if rng.random() < 0.5:
        f = homotopy_perturb(f, random_homotopy(g, f.source, f.target, 0.3))
        f = ChainMap(f.source, f.target, {i: f.f(i) for i in range(f.top + 1)})
    rep = split_formula_check(f, P, Q)
    checks = {"split_formula": rep.verdict.name}
    params = {"group": str(G), "n": n, "k": k, "ranks": list(P.complex.ranks)}
    return _finish(index, checks, params,
                   lambda: _echo(G, C=P.complex, D=Q.complex, P=P.P, Q=Q.P, f=f))


def _random_duality(g, X, n):
    """A symmetric P on A (+) A^{n-*}: a random lower block and its dual above."""
    A = X.complex.with_top(n)
    C = direct_sum(A, dual_complex(A, n))
    sig, _ = piece_scaling(g, X, 0.5)
    low = ChainMap(A, A, {i: sig.f(i) for i in range(sig.top + 1)})
    if g.rng.random() < 0.5:
        low = homotopy_perturb(low, random_homotopy(g, A, A, 0.3))
        low = ChainMap(A, A, {i: low.f(i) for i in range(low.top + 1)})
    P = reassemble(low, dual_map(low, n), C, C)
    return DualityPair(C, n, P)


def _j_twist(g, X, n):
    """A self-equivalence of X whose torsion lies in I_n, hence in J_n.

    Scales an isolated cell in degree j by x * xbar^{-(-1)^n}; torsion
    (-1)^j (x - (-1)^n xbar).
    """
    G = g.G
    cells = [cs[0] for p, cs in zip(X.pieces, X.cells()) if p.kind == "cell"]
    if not cells:
        return None
    j, idx = g.rng.choice(cells)
    x, xi = g.unit()
    v = x * involute(xi) if n % 2 == 0 else x * involute(x)
    diag = {i: [G.one()] * X.block.rank(i) for i in range(X.top + 1)}
    diag[j][idx] = v
    mats = {i: X.B[i] @ GRMatrix.diag(G, diag[i]) @ X.Bi[i] for i in range(X.top + 1)}
    return ChainMap(X.complex, X.complex, mats)


def _random_double(g, X, n, kind):
    T = ThickeningModel(X.complex, n)
    if kind == "trivial":
        return build_trivial_double(T)
    alpha = _j_twist(g, X, n)
    if alpha is None:
        alpha = ChainMap(X.complex, X.complex, {i: GRMatrix.identity(g.G, X.complex.rank(i))
                                                for i in range(X.top + 1)})
    if kind == "twisted":
        return build_twisted_double(T, alpha)
    return build_generalised_double(T, alpha, g.wh())


def _base_with_cell(g, k):
    """A random base complex of dimension <= k that has at least one free cell."""
    pieces = random_pieces(g, k, 2, g.rng.randint(1, 3))
    if not any(p.kind == "cell" for p in pieces):
        pieces.append(Piece("cell", (g.rng.randint(0, k),), ()))
    block = _assemble_block(g.G, pieces, k)
    return _with_basis(g, pieces, block, k, protect_isolated=True)


def theoremB_trial(seed, index, m_range=range(2, 10), n_range=range(6, 11)):
    rng = trial_rng(seed, "theoremB", index)
    G = _pick_group(rng, m_range, product_p=0.15)
    g = Gen(rng, G)
    n = rng.choice(list(n_range))
    k = rng.randint(0, min(2, (n - 2) // 2))
    X = _base_with_cell(g, k)
    units = [a for a in range(1, max(G.m, 2)) if _coprime(a, G.m)]
    a = rng.choice(units) if G.m > 1 else 1
    try:
        theta = RingIso(G, G, a=a)
    except ValueError:
        theta = RingIso.identity(G)
    # the base of N is a basis change of the transported base of M, with the same pieces
    thX = _transport_fuzz(X, theta)
    kinds = ("trivial", "twisted", "generalised")
    kM, kN = kinds[index % 3], rng.choice(kinds)
    DM = _random_double(g, X, n, kM)
    e = random_equivalence(g, thX, stabilise=0.0, perturb=0.3, protect_isolated=True)
    DN = _random_double(g, e.target, n, kN)
    rep = theoremB_check(DM, DN, e.map, theta)
    checks = {"theoremB": rep.verdict.name, "lower_oracle": _eq(rep.lower_torsion, e.tau).name}
    params = {"group": str(G), "n": n, "k": k, "theta_a": theta.a, "kinds": [kM, kN]}
    return _finish(index, checks, params, lambda: _echo(G, K=X.complex, L=e.target.complex, alpha=e.map))


def _coprime(a, m):
    from math import gcd
    return gcd(a, m) == 1


def _transport_fuzz(X, theta):
    G = theta.target
    pieces = [Piece(p.kind, p.degrees, tuple(theta(x) for x in p.entries), p.acyclic_unit) for p in X.pieces]
    B = {i: M.map_entries(theta, G) for i, M in X.B.items()}
    Bi = {i: M.map_entries(theta, G) for i, M in X.Bi.items()}
    return FuzzComplex(G, pieces, X.top, B, Bi, transport_complex(X.block, theta), transport_complex(X.complex, theta))


def _manifold_base(g, copies):
    """copies of R_1 --0--> R_0 with the identity duality, and a duality-preserving automorphism."""
    from .doubles import wedge_circle_base, wedge_circle_duality
    G = g.G
    K = wedge_circle_base(G, copies)
    PK = wedge_circle_duality(G, copies)
    B, Bi, det = g.automorphism(copies, p_unit=0.7)
    # alpha_0 = B, alpha_1 = (B^*)^{-1}: alpha P alpha^* = P on the nose
    alpha = ChainMap(K, K, {0: B, 1: Bi.conj_t()})
    tau = det + wh_involute(det)
    return K, PK, alpha, tau


def parity_trial(seed, index, m_range=range(2, 10), n_range=range(4, 11)):
    rng = trial_rng(seed, "parity", index)
    G = _pick_group(rng, m_range, product_p=0.2)
    g = Gen(rng, G)
    copies = rng.randint(1, 2)
    K, PK, alpha, tau_a = _manifold_base(g, copies)
    n_odd_k = [n for n in n_range if (n - 1) % 2 == 1 and n >= 4]
    n_even_k = [n for n in n_range if (n - 1) % 2 == 0 and n >= 4]
    checks = {}
    n = rng.choice(n_odd_k)
    T = ThickeningModel(K, n, PK)
    D = build_trivial_double(T)
    rep = manifold_base_vanishing_check(D, D, alpha)
    checks["formula_odd"] = rep.verdict.name
    checks["simple"] = wh_is_trivial(rep.direct).name
    checks["lower_oracle"] = _eq(rep.lower_torsion, tau_a).name
    params = {"group": str(G), "copies": copies, "n": n, "tau_alpha": str(tau_a)}
    if n_even_k:
        n2 = rng.choice(n_even_k)
        D2 = build_trivial_double(ThickeningModel(K, n2, PK))
        rep2 = manifold_base_vanishing_check(D2, D2, alpha)
        checks["formula_even"] = rep2.verdict.name
        checks["doubling"] = _eq(rep2.direct, tau_a * 2).name
        params["n_control"] = n2
    return _finish(index, checks, params, lambda: _echo(G, K=K, alpha=alpha))


def doubles_trial(seed, index, m_range=range(2, 10), n_range=range(6, 11)):
    rng = trial_rng(seed, "doubles", index)
    G = _pick_group(rng, m_range, product_p=0.15)
    g = Gen(rng, G)
    n = rng.choice(list(n_range))
    k = rng.randint(0, min(2, (n - 2) // 2))
    X = _base_with_cell(g, k)
    T = ThickeningModel(X.complex, n)
    checks = {}
    D0 = build_trivial_double(T)
    checks["trivial"] = wh_is_trivial(torsion_map(D0.duality.restricted())).name
    alpha = _j_twist(g, X, n)
    ta = torsion_map(alpha)
    D1 = build_twisted_double(T, alpha)
    checks["twisted"] = _eq(torsion_map(D1.duality.restricted()), -ta).name
    u = g.wh()
    D2 = build_generalised_double(T, alpha, u)
    checks["generalised"] = _eq(torsion_map(D2.duality.restricted()), u - ta).name
    ident = ChainMap(X.complex, X.complex, {i: GRMatrix.identity(G, X.complex.rank(i)) for i in range(k + 1)})
    D3 = build_generalised_double(T, ident, u)
    sw = hcobordism_swap(D3)
    checks["hcobordism_swap"] = _eq(torsion_map(sw), swap_prediction(u, n)).name
    params = {"group": str(G), "n": n, "k": k, "u": str(u), "tau_alpha": str(ta)}
    return _finish(index, checks, params, lambda: _echo(G, K=X.complex, alpha=alpha))


TRIALS = {"calculus": calculus_trial, "split": split_trial, "theoremB": theoremB_trial,
          "parity": parity_trial, "doubles": doubles_trial}

DEFAULT_N = {"calculus": None, "split": range(4, 9), "theoremB": range(6, 11), "parity": range(4, 11),
             "doubles": range(6, 11)}


def run_trial(suite, seed, index, m_range, n_range):
    fn = TRIALS[suite]
    try:
        if n_range is None:
            n_range = DEFAULT_N[suite]
        return fn(seed, index, m_range, n_range)
    except Inconclusive as exc:
        return TrialResult(index, False, {"solver": "Unknown"}, {"error": str(exc)}, None, True)


def _run_one(args):
    return run_trial(*args)


def run_suite(suite, trials, seed, m_range=range(2, 10), n_range=None, workers=1):
    if suite not in TRIALS:
        raise ValueError(f"unknown suite {suite!r}")
    jobs = [(suite, seed, i, m_range, n_range) for i in range(trials)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_one, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        results = [_run_one(j) for j in jobs]
    results.sort(key=lambda r: r.index)
    return summarise(suite, trials, seed, m_range, n_range, results)


def summarise(suite, trials, seed, m_range, n_range, results):
    passed = sum(r.passed for r in results)
    inconclusive = sum(r.inconclusive for r in results)
    per_check = {}
    for r in results:
        for k, v in r.checks.items():
            c = per_check.setdefault(k, {"Trivial": 0, "Nontrivial": 0, "Unknown": 0})
            c[v] = c.get(v, 0) + 1
    first = next((r for r in results if not r.passed), None)
    return {
        "suite": suite,
        "seed": seed,
        "trials": trials,
        "m_range": [min(m_range), max(m_range)],
        "n_range": None if n_range is None else [min(n_range), max(n_range)],
        "passed": passed,
        "failed": trials - passed - inconclusive,
        "inconclusive": inconclusive,
        "checks": per_check,
        "first_counterexample": None if first is None else first.to_json(),
    }
