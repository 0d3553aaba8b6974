"""Elements of the Whitehead group Wh(G, w) = K_1(Z[G]) / (+-G).

Classes are stored through a determinant representative, a unit of Z[G],
put in a normal form modulo trivial units.  The group law is written
additively, so adding classes multiplies representatives.

Over C_m the determinant detects the class exactly because SK_1(Z[C_m])
vanishes (Bass-Milnor-Serre).  With a t factor only the projection t -> 1
onto Wh(C_m) is used to prove nontriviality.
"""
from itertools import product

from .group_ring import (RingElement, PRODUCT, INFINITE, augment_inf, involute, is_unit,
                         is_trivial_unit, format_element, parse_element, kill_t)
from .verdict import Trivial, Nontrivial, Unknown

DEFAULT_TATE_BOUND = 8


def _normal_form(u):
    """Canonical representative of u modulo +-s^a t^b.

    Returns (v, (sign, a, b)) with v = sign * s^a t^b * u.  Among all such v we
    take the one whose sorted term list is lexicographically least, with a
    positive leading coefficient.
    """
    G = u.group
    lo, _ = u.t_span()
    best = None
    for a in range(G.m):
        v = u.shift(a, -lo)
        order = sorted(v._t, key=lambda k: (k[1], k[0]))
        sign = 1 if v._t[order[0]] > 0 else -1
        key = tuple((b, x, sign * v._t[(x, b)]) for (x, b) in order)
        if best is None or key < best[0]:
            best = (key, a, sign)
    _, a, sign = best
    return u.shift(a, -lo) * sign, (sign, a, -lo)


class WhElement:
    __slots__ = ("group", "rep", "_inv")

    def __init__(self, rep, inverse=None, check=True):
        self.group = rep.group
        if check and inverse is None:
            v = is_unit(rep)
            if not isinstance(v, Trivial):
                raise ValueError(f"representative {rep} is not a certified unit ({v.name})")
            inverse = v.witness
        self.rep, (sign, a, b) = _normal_form(rep)
        self._inv = None if inverse is None else inverse.shift(-a, -b) * sign

    @property
    def representative(self):
        return self.rep

    @classmethod
    def zero(cls, group):
        return cls(group.one(), group.one())

    def inverse_rep(self):
        if self._inv is None:
            self._inv = is_unit(self.rep).witness
        return self._inv

    def __eq__(self, other):
        if not isinstance(other, WhElement):
            return NotImplemented
        return self.group == other.group and self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __add__(self, other):
        return wh_add(self, other)

    def __neg__(self):
        return wh_neg(self)

    def __sub__(self, other):
        return wh_add(self, wh_neg(other))

    def __mul__(self, k):
        return wh_scale(self, k)

    __rmul__ = __mul__

    def is_zero(self):
        return self.rep.is_one()

    def __str__(self):
        return f"[{format_element(self.rep)}]"

    def __repr__(self):
        return f"WhElement({self.group}, {format_element(self.rep)!r})"

    def to_json(self):
        return {"group": str(self.group), "representative": format_element(self.rep)}


def wh_class(u):
    """The class of a unit u."""
    return WhElement(u)


def wh_from_string(text, group):
    return WhElement(parse_element(text, group))


def wh_of_matrix(A, group=None, invertible=False):
    """Class of an invertible square matrix, through its determinant.

    With invertible=True the caller vouches for invertibility, and over a
    Laurent ring the determinant is taken after t -> 1.  Units of
    Z[C_m][t, 1/t] are u t^k with u a unit of Z[C_m], so the class survives.
    """
    if A.nrows != A.ncols:
        raise ValueError("wh_of_matrix needs a square matrix")
    G = A.group
    if invertible and G.has_t:
        d = A.map_entries(kill_t, G.finite_part()).det()
        d = RingElement(G, {(a, 0): c for (a, _), c in d._t.items()})
    else:
        d = A.det()
    v = is_unit(d)
    if isinstance(v, Nontrivial):
        raise ValueError(f"matrix is not invertible: determinant {d} ({v.obstruction})")
    if isinstance(v, Unknown):
        raise ValueError(f"invertibility unknown: {v.reason}")
    return WhElement(d, v.witness)


def _same_group(x, y):
    if x.group != y.group:
        raise ValueError(f"mismatched groups {x.group} and {y.group}")


def wh_add(x, y):
    _same_group(x, y)
    inv = None
    if x._inv is not None and y._inv is not None:
        inv = x._inv * y._inv
    return WhElement(x.rep * y.rep, inv, check=False)


def wh_neg(x):
    return WhElement(x.inverse_rep(), x.rep)


def wh_scale(x, k):
    if k < 0:
        return wh_scale(wh_neg(x), -k)
    inv = None if x._inv is None else x._inv ** k
    return WhElement(x.rep ** k, inv, check=False)


def wh_sum(items, group):
    acc = WhElement.zero(group)
    for x in items:
        acc = wh_add(acc, x)
    return acc


def wh_involute(x):
    inv = None if x._inv is None else involute(x._inv)
    return WhElement(involute(x.rep), inv, check=False)


def wh_is_trivial(x):
    ok, w = is_trivial_unit(x.rep)
    if ok:
        sign, (a, b) = w
        return Trivial({"sign": sign, "s": a, "t": b})
    G = x.group
    if not G.has_t:
        return Nontrivial({"representative": format_element(x.rep),
                           "reason": "not of the form +-g, and SK_1 of Z[C_m] vanishes"})
    if G.family == INFINITE:
        # units of Z[t, t^-1] are +-t^k, so this cannot happen for a certified unit
        return Unknown("representative is not a trivial unit")
    proj = kill_t(x.rep)
    if not is_trivial_unit(proj)[0]:
        return Nontrivial({"representative": format_element(x.rep),
                           "projection": format_element(proj),
                           "reason": "image in Wh(C_m) under t -> 1 is nontrivial"})
    return Unknown("representative is not a trivial unit but its Wh(C_m) projection is")


def wh_equal(x, y):
    """Verdict on x = y, via triviality of x - y."""
    return wh_is_trivial(x - y)


def wh_transport(x, theta):
    if x.group != theta.source:
        raise ValueError("class is not over the source of theta")
    inv = None if x._inv is None else theta(x._inv)
    return WhElement(theta(x.rep), inv, check=False)


def antisymmetrize(x, n):
    """x - (-1)^n xbar, a generator of I_n."""
    xb = wh_involute(x)
    return x - xb if n % 2 == 0 else x + xb


def in_J(y, n):
    """Is y = -(-1)^n ybar, i.e. is y + (-1)^n ybar trivial?"""
    yb = wh_involute(y)
    return wh_is_trivial(y + yb if n % 2 == 0 else y - yb)


def bhs_project_fin(x):
    """Projection Wh(C_inf x C_m) -> Wh(C_m) induced by t -> 1."""
    if x.group.family != PRODUCT:
        raise ValueError("bhs_project_fin needs the product family")
    inv = None if x._inv is None else augment_inf(x._inv)
    return WhElement(augment_inf(x.rep), inv, check=False)


class TateClass:
    """An element of J_n / I_n, relative to a finite context of generators."""

    def __init__(self, n, rep, context=(), bound=DEFAULT_TATE_BOUND, complete=False):
        if isinstance(in_J(rep, n), Nontrivial):
            raise ValueError(f"{rep} does not lie in J_{n}")
        if bound < 1:
            raise ValueError("search bound must be positive")
        self.n = n
        self.rep = rep
        self.group = rep.group
        self.context = tuple(context)
        self.bound = bound
        self.complete = complete

    def to_json(self):
        return {"n": self.n, "representative": self.rep.to_json(),
                "context": [str(g) for g in self.context], "bound": self.bound,
                "complete": self.complete}


def tate_equal(a, b):
    """Decide a - b in I_n by a bounded search over the context generators."""
    if a.n != b.n or a.group != b.group:
        raise ValueError("Tate classes over different n or groups")
    if a.context != b.context or a.bound != b.bound:
        raise ValueError("Tate classes with different contexts")
    diff = a.rep - b.rep
    if isinstance(wh_is_trivial(diff), Trivial):
        return Trivial({"combination": [0] * len(a.context)})
    gens = [antisymmetrize(g, a.n) for g in a.context]
    if not gens:
        return Unknown("empty context")
    B = a.bound
    # meet in the middle would be faster; contexts are tiny
    powers = []
    for g in gens:
        row = {0: WhElement.zero(a.group)}
        for k in range(1, B + 1):
            row[k] = row[k - 1] + g
        neg = wh_neg(g)
        for k in range(1, B + 1):
            row[-k] = row[-k + 1] + neg
        powers.append(row)
    best = None
    for combo in product(range(-B, B + 1), repeat=len(gens)):
        if not any(combo):
            continue
        acc = diff
        for row, k in zip(powers, combo):
            acc = acc - row[k]
        if isinstance(wh_is_trivial(acc), Trivial):
            if best is None or sum(map(abs, combo)) < sum(map(abs, best)):
                best = combo
    if best is not None:
        return Trivial({"combination": list(best)})
    if a.complete and b.complete:
        return Nontrivial({"searched": f"|coefficients| <= {B}",
                           "context": [str(g) for g in a.context]})
    return Unknown(f"no combination with |coefficients| <= {B}")
