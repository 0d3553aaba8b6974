"""Split complexes, their lower and upper halves, and duality pairs.

For ambient dimension n the lower half keeps degrees i < n/2 and the upper
half keeps degrees i > n/2.  A complex splits when it is the direct sum of
its halves, which happens exactly when the middle module vanishes (n even)
or the middle differential vanishes (n odd).
"""
from dataclasses import dataclass

from .chains import (BasedComplex, ChainMap, cone, compose, dual_complex, dual_map, find_contraction,
                     is_nullhomotopic, torsion_map, NotAnEquivalence, Inconclusive)
from .verdict import Absent, Trivial, Nontrivial, Unknown, NOT_ACYCLIC, NOT_NULLHOMOTOPIC
from .whitehead import wh_involute, wh_is_trivial


def _in_lower(i, n):
    return 2 * i < n


def _in_upper(i, n):
    return 2 * i > n


def lower(C, n):
    ranks = [r if _in_lower(i, n) else 0 for i, r in enumerate(C.ranks)]
    diffs = {i: C.d(i) for i in range(1, C.top + 1) if _in_lower(i, n)}
    return BasedComplex(C.group, ranks, diffs, check=False)


def upper(C, n):
    ranks = [r if _in_upper(i, n) else 0 for i, r in enumerate(C.ranks)]
    diffs = {i: C.d(i) for i in range(1, C.top + 1) if _in_upper(i - 1, n)}
    return BasedComplex(C.group, ranks, diffs, check=False)


def is_split(C, n):
    if n % 2 == 0:
        return C.rank(n // 2) == 0
    return C.d((n + 1) // 2).is_zero()


def _restrict(f, n, keep, half):
    for X in (f.source, f.target):
        if not is_split(X, n):
            raise ValueError(f"restriction needs split complexes (n = {n})")
    S, T = half(f.source, n), half(f.target, n)
    return ChainMap(S, T, {i: f.f(i) for i in range(f.top + 1) if keep(i, n)}, check=False)


def restrict_lower(f, n):
    return _restrict(f, n, _in_lower, lower)


def restrict_upper(f, n):
    return _restrict(f, n, _in_upper, upper)


def reassemble(f_low, f_up, source, target):
    """Glue a lower and an upper map back into a map source -> target."""
    top = max(source.top, target.top)
    mats = {}
    for i in range(top + 1):
        mats[i] = f_low.f(i) if f_low.source.rank(i) or f_low.target.rank(i) else f_up.f(i)
    return ChainMap(source, target, mats)


class DualityPair:
    """A chain equivalence P : C^{n-*} -> C, certified by a contraction of its cone."""

    def __init__(self, complex, n, P, certify=True):
        C = complex
        if P.source != dual_complex(C, n) or P.target != C:
            raise ValueError("P must map the n-dual of the complex to the complex")
        self.complex = C
        self.n = n
        self.P = P
        self.certificate = None
        if certify:
            c = find_contraction(cone(P))
            if isinstance(c, Absent):
                if c.reason == NOT_ACYCLIC:
                    raise NotAnEquivalence("duality map is not a chain equivalence")
                raise Inconclusive(c.detail)
            self.certificate = c

    @property
    def group(self):
        return self.complex.group

    def restricted(self):
        """P restricted to (C^l)^{n-*} -> C^u."""
        C, n = self.complex, self.n
        if not is_split(C, n):
            raise ValueError("duality restriction needs a split complex")
        src = dual_complex(lower(C, n), n)
        tgt = upper(C, n)
        top = max(src.top, tgt.top)
        return ChainMap(src, tgt, {i: self.P.f(i) for i in range(top + 1) if _in_upper(i, n)})


def alpha_invariant(pair):
    try:
        return torsion_map(pair.restricted())
    except NotAnEquivalence as exc:
        raise ValueError(f"restricted duality is not an equivalence: {exc}") from None


def in_cheq_PQ(f, P, Q):
    """Does f P f^* agree with Q up to chain homotopy?"""
    if P.n != Q.n:
        raise ValueError(f"ambient dimensions differ ({P.n} vs {Q.n})")
    if f.source != P.complex or f.target != Q.complex:
        raise ValueError("f must map the complex of P to the complex of Q")
    n = P.n
    around = compose(f, compose(P.P, dual_map(f, n)))
    h = is_nullhomotopic(around - Q.P)
    if isinstance(h, Absent):
        if h.reason == NOT_NULLHOMOTOPIC:
            return Nontrivial({"reason": "f P f^* - Q is not nullhomotopic"})
        return Unknown(h.detail)
    return Trivial({"homotopy_degrees": sorted(i for i, M in h._h.items() if not M.is_zero())})


@dataclass
class SplitReport:
    direct: object
    formula: object
    lower_torsion: object
    alpha: object
    beta: object
    verdict: object

    @property
    def ok(self):
        return isinstance(self.verdict, Trivial)

    def to_json(self):
        return {"direct": str(self.direct), "formula": str(self.formula),
                "lower_torsion": str(self.lower_torsion), "alpha": str(self.alpha), "beta": str(self.beta),
                **self.verdict.to_json()}


def split_prediction(x, n, alpha, beta):
    """x - (-1)^n xbar + beta - alpha."""
    xb = wh_involute(x)
    core = x - xb if n % 2 == 0 else x + xb
    return core + beta - alpha


def split_formula_check(f, P, Q, certify=True):
    n = P.n
    if certify:
        v = in_cheq_PQ(f, P, Q)
        if not isinstance(v, Trivial):
            raise ValueError(f"f is not in chEq(P, Q): {v.name}")
    direct = torsion_map(f)
    x = torsion_map(restrict_lower(f, n))
    a, b = alpha_invariant(P), alpha_invariant(Q)
    formula = split_prediction(x, n, a, b)
    return SplitReport(direct, formula, x, a, b, wh_is_trivial(direct - formula))
