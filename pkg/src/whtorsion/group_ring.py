"""Exact arithmetic in the integral group ring Z[G].

G is one of C_m (generator s, s^m = 1), C_inf (generator t) or C_inf x C_m.
Elements are stored as a map (a, b) -> c meaning c * s^a * t^b with
0 <= a < m.  For C_inf we use m = 1 internally, so a is always 0.

    >>> G = GroupSpec.cyclic(5)
    >>> u = parse_element("s + s^4 - 1", G)
    >>> str(u * parse_element("s^2 + s^3 - 1", G))
    '1'
"""
from dataclasses import dataclass
from math import gcd

from .verdict import Trivial, Nontrivial, Unknown

CYCLIC = "cyclic"
INFINITE = "infinite"
PRODUCT = "product"

DEFAULT_WINDOW_CAP = 16


@dataclass(frozen=True)
class GroupSpec:
    family: str
    m: int = 1
    w_s: int = 1
    w_t: int = 1

    def __post_init__(self):
        if self.family not in (CYCLIC, INFINITE, PRODUCT):
            raise ValueError(f"unknown group family {self.family!r}")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.family == INFINITE and self.m != 1:
            raise ValueError("the infinite cyclic group has no finite factor")
        if self.w_s not in (1, -1) or self.w_t not in (1, -1):
            raise ValueError("orientation character values must be +1 or -1")
        if self.w_s == -1 and self.m % 2 == 1:
            raise ValueError("w(s) must be +1 when s has odd order")
        if self.family == CYCLIC and self.w_t != 1:
            raise ValueError("w(t) is meaningless without an infinite factor")
        assert self.w_s ** self.m == 1

    @classmethod
    def cyclic(cls, m, w_s=1):
        return cls(CYCLIC, m, w_s, 1)

    @classmethod
    def infinite(cls, w_t=1):
        return cls(INFINITE, 1, 1, w_t)

    @classmethod
    def product(cls, m, w_s=1, w_t=1):
        return cls(PRODUCT, m, w_s, w_t)

    @property
    def has_s(self):
        return self.family != INFINITE

    @property
    def has_t(self):
        return self.family != CYCLIC

    def finite_part(self):
        """The group C_m obtained by killing t (for the product family)."""
        return GroupSpec.cyclic(self.m, self.w_s)

    def zero(self):
        return RingElement(self, {})

    def one(self):
        return RingElement(self, {(0, 0): 1})

    def const(self, c):
        return RingElement(self, {(0, 0): c})

    def mono(self, a=0, b=0, c=1):
        if b and not self.has_t:
            raise ValueError("t-monomial in a group without infinite factor")
        return RingElement(self, {(a % self.m, b): c})

    def norm(self):
        """N = 1 + s + ... + s^(m-1)."""
        return RingElement(self, {(a, 0): 1 for a in range(self.m)})

    def __str__(self):
        ws = "" if self.w_s == 1 else ",ws=-1"
        wt = "" if self.w_t == 1 else ",wt=-1"
        if self.family == CYCLIC:
            return f"C{self.m}{ws}"
        if self.family == INFINITE:
            return f"Cinf{wt}"
        return f"CinfxC{self.m}{ws}{wt}"

    def to_json(self):
        d = {"family": self.family, "m": self.m}
        if self.has_s:
            d["w_s"] = self.w_s
        if self.has_t:
            d["w_t"] = self.w_t
        return d


class RingElement:
    """An element of Z[G] in canonical form.  Immutable."""

    __slots__ = ("group", "_t", "_hash")

    def __init__(self, group, terms, _clean=False):
        self.group = group
        if _clean:
            self._t = terms
        else:
            m = group.m
            t = {}
            for (a, b), c in terms.items():
                if b and not group.has_t:
                    raise ValueError("t-monomial in a group without infinite factor")
                key = (a % m, b)
                t[key] = t.get(key, 0) + c
            self._t = {k: c for k, c in t.items() if c}
        self._hash = None

    @property
    def terms(self):
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    def is_one(self):
        return len(self._t) == 1 and self._t.get((0, 0)) == 1

    def __eq__(self, other):
        if isinstance(other, int):
            return self._t == ({(0, 0): other} if other else {})
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.group == other.group and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.group, frozenset(self._t.items())))
        return self._hash

    def _check(self, other):
        if isinstance(other, int):
            return self.group.const(other)
        if other.group != self.group:
            raise ValueError(f"mismatched groups {self.group} and {other.group}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                del t[k]
        return RingElement(self.group, t, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.group, {k: -c for k, c in self._t.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.group.zero()
            return RingElement(self.group, {k: c * other for k, c in self._t.items()}, _clean=True)
        other = self._check(other)
        if not self._t or not other._t:
            return self.group.zero()
        m = self.group.m
        t = {}
        for (a1, b1), c1 in self._t.items():
            for (a2, b2), c2 in other._t.items():
                a = a1 + a2
                if a >= m:
                    a -= m
                key = (a, b1 + b2)
                t[key] = t.get(key, 0) + c1 * c2
        return RingElement(self.group, {k: c for k, c in t.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            v = is_unit(self)
            if not isinstance(v, Trivial):
                raise ValueError("negative power of a non-unit")
            return v.witness ** (-k)
        result = self.group.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, a=0, b=0):
        """Multiply by the monomial s^a t^b."""
        m = self.group.m
        return RingElement(self.group, {((x + a) % m, y + b): c for (x, y), c in self._t.items()}, _clean=True)

    def augmentation(self):
        """Image under the total augmentation Z[G] -> Z."""
        return sum(self._t.values())

    def t_span(self):
        if not self._t:
            return None
        bs = [b for (_, b) in self._t]
        return min(bs), max(bs)

    def coefficient(self, a=0, b=0):
        return self._t.get((a % self.group.m, b), 0)

    def height(self):
        return max((abs(c) for c in self._t.values()), default=0)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"RingElement({self.group}, {format_element(self)!r})"


# -- formatting and parsing -------------------------------------------------

def _mono_str(a, b):
    parts = []
    if a:
        parts.append("s" if a == 1 else f"s^{a}")
    if b:
        parts.append("t" if b == 1 else f"t^{b}")
    return "*".join(parts)


def format_element(x):
    if not x._t:
        return "0"
    out = []
    for (a, b) in sorted(x._t, key=lambda k: (k[1], k[0])):
        c = x._t[(a, b)]
        mono = _mono_str(a, b)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class _Parser:
    def __init__(self, text, group):
        self.text = text
        self.i = 0
        self.group = group

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def integer(self, signed=False):
        self.skip()
        start = self.i
        if signed and self.peek() in "+-":
            self.i += 1
            self.skip()
        j = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if j == self.i:
            raise ParseError("expected integer", start)
        return int(self.text[start:self.i].replace(" ", ""))

    def mono(self):
        self.skip()
        pos = self.i
        ch = self.peek()
        self.i += 1
        e = 1
        if self.peek() == "^":
            self.i += 1
            e = self.integer(signed=True)
        if ch == "s":
            if not self.group.has_s:
                raise ParseError("s-monomial in a group without finite factor", pos)
            return (e, 0)
        if not self.group.has_t:
            raise ParseError("t-monomial in a group without infinite factor", pos)
        return (0, e)

    def monos(self):
        a, b = self.mono()
        while self.peek() == "*":
            self.i += 1
            if self.peek() not in ("s", "t"):
                raise ParseError("expected 's' or 't'", self.i)
            da, db = self.mono()
            a, b = a + da, b + db
        return a, b

    def term(self):
        ch = self.peek()
        if ch in ("s", "t"):
            return 1, self.monos()
        if ch.isdigit():
            c = self.integer()
            if self.peek() == "*":
                self.i += 1
                if self.peek() not in ("s", "t"):
                    raise ParseError("expected 's' or 't'", self.i)
                return c, self.monos()
            return c, (0, 0)
        raise ParseError("expected term", self.i)

    def expr(self):
        terms = {}
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        while True:
            c, (a, b) = self.term()
            key = (a % self.group.m, b)
            terms[key] = terms.get(key, 0) + sign * c
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                raise ParseError(f"unexpected character {ch!r}", self.i)
            sign = -1 if ch == "-" else 1
            self.i += 1
        return RingElement(self.group, terms)


def parse_element(text, group):
    """Parse the element grammar into a canonical RingElement."""
    return _Parser(text, group).expr()


# -- named operations -------------------------------------------------------

def ring_add(x, y):
    return x + y


def ring_neg(x):
    return -x


def ring_mul(x, y):
    return x * y


def involute(x):
    """Linear extension of g -> w(g) g^-1."""
    G = x.group
    m = G.m
    t = {}
    for (a, b), c in x._t.items():
        sign = 1
        if G.w_s == -1 and a % 2:
            sign = -sign
        if G.w_t == -1 and b % 2:
            sign = -sign
        t[((-a) % m, -b)] = sign * c
    return RingElement(G, t, _clean=True)


def augment_inf(x):
    """The ring map Z[C_inf x C_m] -> Z[C_m] given by t -> 1."""
    G = x.group
    if G.family != PRODUCT:
        raise ValueError("augment_inf needs the product family")
    if G.w_t != 1:
        raise ValueError("t -> 1 does not respect the involution when w(t) = -1")
    return kill_t(x)


def kill_t(x):
    """t -> 1 as a plain ring map (no involution check)."""
    F = x.group.finite_part()
    t = {}
    for (a, b), c in x._t.items():
        t[(a, 0)] = t.get((a, 0), 0) + c
    return RingElement(F, t)


def is_trivial_unit(x):
    """Return (True, (sign, (a, b))) if x = +-s^a t^b, else (False, None)."""
    if len(x._t) == 1:
        (k, c), = x._t.items()
        if c in (1, -1):
            return True, (c, k)
    return False, None


def regular_matrix(x):
    """The m x m integer matrix of multiplication by x on Z[C_m] (t-free x)."""
    m = x.group.m
    M = [[0] * m for _ in range(m)]
    for (a, b), c in x._t.items():
        if b:
            raise ValueError("regular_matrix needs a t-free element")
        for j in range(m):
            M[(a + j) % m][j] += c
    return M


def _finite_unit(x):
    from .intlin import bareiss_det, solve_integer
    m = x.group.m
    R = regular_matrix(x)
    det = bareiss_det(R)
    if det not in (1, -1):
        return Nontrivial(f"regular-representation determinant is {det}")
    cols = [{i: R[i][j] for i in range(m) if R[i][j]} for j in range(m)]
    y = solve_integer(cols, m, {0: 1})
    assert y is not None
    inv = RingElement(x.group, {(j, 0): v for j, v in y.items()})
    return Trivial(inv)


def is_unit(x, cap=DEFAULT_WINDOW_CAP):
    """Decide whether x is a unit of Z[G].

    Returns Trivial(inverse), Nontrivial(reason) or Unknown(reason).
    """
    if not x._t:
        return Nontrivial("zero is not a unit")
    ok, w = is_trivial_unit(x)
    if ok:
        sign, (a, b) = w
        return Trivial(x.group.mono(-a, -b, sign))
    aug = x.augmentation()
    if aug not in (1, -1):
        return Nontrivial(f"augmentation is {aug}")
    G = x.group
    if not G.has_t:
        return _finite_unit(x)
    if G.family == PRODUCT:
        fin = _finite_unit(kill_t(x))
        if isinstance(fin, Nontrivial):
            return Nontrivial(f"image under t -> 1 is not a unit ({fin.obstruction})")
    y = _laurent_inverse_search(x, cap)
    if y is not None:
        return Trivial(y)
    lo, hi = x.t_span()
    if hi > lo:
        # R[t,t^-1]^x = R^x t^Z when R is reduced with no idempotents other
        # than 0 and 1, which holds for R = Z[C_m].
        return Nontrivial("unit of a Laurent ring over Z[C_m] has a single t-degree")
    return Unknown(f"no inverse with t-window up to {cap}")


def _laurent_inverse_search(x, cap):
    from .linsys import solve_ring_system
    lo, hi = x.t_span()
    one = x.group.one()
    pad = 0
    while True:
        win = (-hi - pad, -lo + pad)
        sol = solve_ring_system({("e",): [(x, "y")]}, {("e",): one}, x.group, win)
        if sol is not None:
            return sol["y"]
        if pad >= cap:
            return None
        pad = max(1, 2 * pad)


# -- ring isomorphisms -------------------------------------------------------

@dataclass(frozen=True)
class RingIso:
    """theta: s -> s^a, t -> t^e s^c, between two specs of the same shape."""

    source: GroupSpec
    target: GroupSpec
    a: int = 1
    e: int = 1
    c: int = 0

    def __post_init__(self):
        S, T = self.source, self.target
        if S.family != T.family or S.m != T.m:
            raise ValueError("a ring isomorphism needs groups of the same shape")
        if gcd(self.a, S.m) != 1:
            raise ValueError(f"s -> s^{self.a} is not an automorphism of C_{S.m}")
        if self.e not in (1, -1):
            raise ValueError("t must map to t^(+-1) s^c")
        if S.has_s and T.w_s ** (self.a % 2) != S.w_s:
            raise ValueError("theta is not compatible with the orientation characters (s)")
        if S.has_t:
            wt = T.w_t * (T.w_s ** (self.c % 2) if T.has_s else 1)
            if wt != S.w_t:
                raise ValueError("theta is not compatible with the orientation characters (t)")

    @classmethod
    def identity(cls, group):
        return cls(group, group)

    def __call__(self, x):
        if x.group != self.source:
            raise ValueError("element is not over the source group")
        m = self.target.m
        t = {}
        for (a, b), c in x._t.items():
            key = ((self.a * a + self.c * b) % m, self.e * b)
            t[key] = t.get(key, 0) + c
        return RingElement(self.target, t)

    def is_identity(self):
        return self.source == self.target and self.a % self.source.m == 1 % self.source.m \
            and self.e == 1 and self.c % self.source.m == 0

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise ValueError("cannot compose")
        m = self.source.m
        # other: s -> s^a1, t -> t^e1 s^c1 ; self: s -> s^a2, t -> t^e2 s^c2
        a = (self.a * other.a) % m
        e = self.e * other.e
        c = (other.e * self.c + self.a * other.c) % m
        return RingIso(other.source, self.target, a, e, c)

    def to_json(self):
        return {"a": self.a, "e": self.e, "c": self.c}


# -- a supply of units -------------------------------------------------------

def euler_phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def bass_unit(m, k, w_s=1):
    """The Bass cyclotomic unit (1 + s + ... + s^(k-1))^phi(m) + (1 - k^phi(m))/m * N."""
    if gcd(k, m) != 1:
        raise ValueError("k must be prime to m")
    G = GroupSpec.cyclic(m, w_s)
    phi = euler_phi(m)
    base = RingElement(G, {(j, 0): 1 for j in range(k)})
    return base ** phi + G.norm() * ((1 - k ** phi) // m)


_UNIT_CACHE = {}


def small_units(group, limit=3):
    """A few nontrivial units of Z[C_m] with coefficients in {-1, 0, 1}.

    They are returned as elements of Z[group] (t-free), pairwise in distinct
    classes modulo trivial units.  Found by a deterministic search; falls
    back to Bass units if the search comes up empty.
    """
    m = group.m
    key = (m, limit)
    if key not in _UNIT_CACHE:
        _UNIT_CACHE[key] = _search_units(m, limit)
    return [RingElement(group, dict(t)) for t in _UNIT_CACHE[key]]


def _search_units(m, limit):
    from itertools import combinations, product
    from .intlin import bareiss_det
    F = GroupSpec.cyclic(m)
    found = []
    for k in (3, 4, 5):
        for support in combinations(range(m), k):
            if support[0] != 0:
                continue
            for signs in product((1, -1), repeat=k - 1):
                terms = {(0, 0): 1}
                terms.update({(a, 0): c for a, c in zip(support[1:], signs)})
                if abs(sum(terms.values())) != 1:
                    continue
                u = RingElement(F, terms)
                if bareiss_det(regular_matrix(u)) not in (1, -1):
                    continue
                if any(_same_class(u, v) for v in found):
                    continue
                found.append(u)
                if len(found) >= limit:
                    return [tuple(v.items()) for v in found]
    if not found:
        for k in range(2, m):
            if gcd(k, m) == 1:
                u = bass_unit(m, k)
                if len(u._t) > 1 and not any(_same_class(u, v) for v in found):
                    found.append(u)
            if len(found) >= limit:
                break
    return [tuple(v.items()) for v in found]


def _same_class(u, v):
    inv = is_unit(v)
    return is_trivial_unit(u * inv.witness)[0]
