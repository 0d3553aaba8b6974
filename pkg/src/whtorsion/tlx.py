"""TLX: a line-oriented text format for groups, complexes, maps, dualities and doubles.

    group C5
    complex K
      ranks 1 1
      d 1 = [s - 1]
    end
    map f
      source K
      target K
      f 0 = [s + s^4 - 1]
      f 1 = [s + s^4 - 1]
    end
    duality P
      complex C
      n 6
      map Pmap
    end
    double M
      base K
      n 7
      kind generalised
      alpha f
      u s + s^4 - 1
    end

Matrices are written row by row, rows separated by ';' and entries by ','.
Missing differentials and map components are zero.  A map's source or
target may also be written 'dual(NAME, n)'.  '#' starts a comment.
"""
import re
from dataclasses import dataclass, field

from .chains import BasedComplex, ChainMap, dual_complex
from .group_ring import GroupSpec, ParseError, parse_element, format_element
from .matrices import GRMatrix


class TLXError(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


_GROUP_RE = re.compile(r"^(?:C(\d+)|Cinf|CinfxC(\d+))((?:,\s*w[st]\s*=\s*[+-]?1)*)$")


def parse_group(text):
    """Inverse of str(GroupSpec): 'C5', 'Cinf', 'CinfxC5', optionally ',ws=-1' / ',wt=-1'."""
    t = text.replace(" ", "")
    mo = _GROUP_RE.match(t)
    if not mo:
        raise ValueError(f"cannot parse group {text!r}")
    w = dict(re.findall(r"(w[st])=([+-]?1)", mo.group(3)))
    ws, wt = int(w.get("ws", 1)), int(w.get("wt", 1))
    if mo.group(1):
        if "wt" in w:
            raise ValueError("a finite cyclic group has no t")
        return GroupSpec.cyclic(int(mo.group(1)), ws)
    if mo.group(2):
        return GroupSpec.product(int(mo.group(2)), ws, wt)
    if "ws" in w:
        raise ValueError("C_inf has no s")
    return GroupSpec.infinite(wt)


@dataclass
class DualitySpec:
    complex: str
    n: int
    map: str


@dataclass
class DoubleSpec:
    base: str
    n: int
    kind: str
    alpha: str = None
    u: str = None
    base_duality: str = None


@dataclass
class TLXDocument:
    group: GroupSpec = None
    complexes: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    map_ends: dict = field(default_factory=dict)
    dualities: dict = field(default_factory=dict)
    doubles: dict = field(default_factory=dict)

    def add_complex(self, name, C):
        self.complexes[name] = C
        return name

    def add_map(self, name, f, source, target):
        """source and target are names or ('dual', name, n) triples."""
        self.maps[name] = f
        self.map_ends[name] = (source, target)
        return name

    def resolve(self, ref):
        if isinstance(ref, tuple):
            _, name, n = ref
            return dual_complex(self.complexes[name], n)
        return self.complexes[ref]

    def duality_pair(self, name, certify=True):
        from .split_duality import DualityPair
        d = self.dualities[name]
        return DualityPair(self.complexes[d.complex], d.n, self.maps[d.map], certify=certify)

    def build_double(self, name, certify=True):
        from .doubles import (ThickeningModel, build_trivial_double, build_twisted_double,
                              build_generalised_double)
        from .whitehead import WhElement
        spec = self.doubles[name]
        bd = self.duality_pair(spec.base_duality, certify) if spec.base_duality else None
        T = ThickeningModel(self.complexes[spec.base], spec.n, bd)
        if spec.kind == "trivial":
            return build_trivial_double(T, certify=certify)
        alpha = self.maps[spec.alpha]
        if spec.kind == "twisted":
            return build_twisted_double(T, alpha, certify=certify)
        u = WhElement(parse_element(spec.u, self.group))
        return build_generalised_double(T, alpha, u, certify=certify)

    def __eq__(self, other):
        if not isinstance(other, TLXDocument):
            return NotImplemented
        return (self.group == other.group and self.complexes == other.complexes
                and self.maps == other.maps and self.map_ends == other.map_ends
                and self.dualities == other.dualities and self.doubles == other.doubles)


# -- emitting ---------------------------------------------------------------

def _fmt_matrix(M):
    return "[" + "; ".join(", ".join(format_element(x) for x in r) for r in M.rows) + "]"


def _fmt_ref(ref):
    if isinstance(ref, tuple):
        return f"dual({ref[1]}, {ref[2]})"
    return ref


def emit(doc):
    out = [f"group {doc.group}"]
    for name, C in doc.complexes.items():
        out.append(f"complex {name}")
        out.append("  ranks " + " ".join(map(str, C.ranks)))
        for i in range(1, C.top + 1):
            M = C.d(i)
            if not M.is_zero():
                out.append(f"  d {i} = {_fmt_matrix(M)}")
        out.append("end")
    for name, f in doc.maps.items():
        src, tgt = doc.map_ends[name]
        out.append(f"map {name}")
        out.append(f"  source {_fmt_ref(src)}")
        out.append(f"  target {_fmt_ref(tgt)}")
        for i in range(f.top + 1):
            M = f.f(i)
            if not M.is_zero():
                out.append(f"  f {i} = {_fmt_matrix(M)}")
        out.append("end")
    for name, d in doc.dualities.items():
        out += [f"duality {name}", f"  complex {d.complex}", f"  n {d.n}", f"  map {d.map}", "end"]
    for name, d in doc.doubles.items():
        out += [f"double {name}", f"  base {d.base}", f"  n {d.n}", f"  kind {d.kind}"]
        if d.alpha is not None:
            out.append(f"  alpha {d.alpha}")
        if d.u is not None:
            out.append(f"  u {d.u}")
        if d.base_duality is not None:
            out.append(f"  base_duality {d.base_duality}")
        out.append("end")
    return "\n".join(out) + "\n"


# -- parsing ----------------------------------------------------------------

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.-]*$")
_DUAL = re.compile(r"^dual\(\s*([A-Za-z_][A-Za-z0-9_.-]*)\s*,\s*(\d+)\s*\)$")


def _name(tok, line):
    if not _NAME.match(tok):
        raise TLXError(f"bad name {tok!r}", line)
    return tok


def _int(tok, line):
    try:
        return int(tok)
    except ValueError:
        raise TLXError(f"expected an integer, got {tok!r}", line) from None


def _matrix(text, group, nrows, ncols, line):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise TLXError("matrix must be enclosed in [ ]", line)
    body = text[1:-1].strip()
    rows = [] if not body else [r.split(",") for r in body.split(";")]
    if nrows == 0 or ncols == 0:
        if body:
            raise TLXError(f"expected an empty {nrows}x{ncols} matrix", line)
        return GRMatrix.zeros(group, nrows, ncols)
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise TLXError(f"expected a {nrows}x{ncols} matrix", line)
    try:
        return GRMatrix(group, [[parse_element(x, group) for x in r] for r in rows], nrows, ncols)
    except ParseError as exc:
        raise TLXError(f"bad element: {exc}", line) from None


def _blocks(lines):
    """Yield (keyword, name, header_line, [(lineno, key, rest), ...]) blocks."""
    it = iter(lines)
    for lineno, raw in it:
        head = raw.split()
        if head[0] == "group":
            yield "group", " ".join(head[1:]), lineno, []
            continue
        if head[0] not in ("complex", "map", "duality", "double"):
            raise TLXError(f"unknown section {head[0]!r}", lineno)
        if len(head) != 2:
            raise TLXError(f"expected '{head[0]} NAME'", lineno)
        body = []
        for lineno2, raw2 in it:
            parts = raw2.split(None, 1)
            if parts[0] == "end":
                break
            body.append((lineno2, parts[0], parts[1] if len(parts) > 1 else ""))
        else:
            raise TLXError(f"section {head[1]!r} is missing 'end'", lineno)
        yield head[0], head[1], lineno, body


def parse(text, build=True):
    """Parse a TLX document.  With build=True the dualities and doubles are validated."""
    lines = []
    for i, raw in enumerate(text.splitlines(), 1):
        raw = raw.split("#", 1)[0].strip()
        if raw:
            lines.append((i, raw))
    doc = TLXDocument()
    for kind, name, lineno, body in _blocks(lines):
        if kind == "group":
            if doc.group is not None:
                raise TLXError("group given twice", lineno)
            try:
                doc.group = parse_group(name)
            except ValueError as exc:
                raise TLXError(str(exc), lineno) from None
            continue
        if doc.group is None:
            raise TLXError("the group must come first", lineno)
        name = _name(name, lineno)
        if name in doc.complexes or name in doc.maps or name in doc.dualities or name in doc.doubles:
            raise TLXError(f"name {name!r} used twice", lineno)
        try:
            if kind == "complex":
                doc.complexes[name] = _parse_complex(doc, body, lineno)
            elif kind == "map":
                _parse_map(doc, name, body, lineno)
            elif kind == "duality":
                _parse_duality(doc, name, body, lineno)
            else:
                _parse_double(doc, name, body, lineno)
        except TLXError:
            raise
        except ValueError as exc:
            raise TLXError(str(exc), lineno) from None
    if doc.group is None:
        raise TLXError("no group given")
    if build:
        for name in doc.dualities:
            doc.duality_pair(name)
        for name in doc.doubles:
            try:
                doc.build_double(name)
            except ValueError as exc:
                raise TLXError(f"double {name!r}: {exc}") from None
    return doc


def _keyed(body, allowed, lineno):
    vals = {}
    for ln, key, rest in body:
        if key not in allowed:
            raise TLXError(f"unexpected key {key!r}", ln)
        if key in vals:
            raise TLXError(f"key {key!r} given twice", ln)
        vals[key] = (rest.strip(), ln)
    return vals


def _parse_complex(doc, body, lineno):
    G = doc.group
    ranks, diffs = None, {}
    for ln, key, rest in body:
        if key == "ranks":
            ranks = [_int(x, ln) for x in rest.split()]
        elif key == "d":
            if ranks is None:
                raise TLXError("ranks must come before differentials", ln)
            idx, _, mat = rest.partition("=")
            i = _int(idx.strip(), ln)
            if not 1 <= i < len(ranks):
                raise TLXError(f"differential d {i} out of range", ln)
            diffs[i] = _matrix(mat, G, ranks[i - 1], ranks[i], ln)
        else:
            raise TLXError(f"unexpected key {key!r}", ln)
    if ranks is None:
        raise TLXError("complex without ranks", lineno)
    return BasedComplex(G, ranks, diffs)


def _parse_ref(doc, text, ln):
    mo = _DUAL.match(text)
    if mo:
        name, n = mo.group(1), int(mo.group(2))
        if name not in doc.complexes:
            raise TLXError(f"unknown complex {name!r}", ln)
        return ("dual", name, n)
    if text not in doc.complexes:
        raise TLXError(f"unknown complex {text!r}", ln)
    return text


def _parse_map(doc, name, body, lineno):
    G = doc.group
    src = tgt = None
    mats = {}
    for ln, key, rest in body:
        if key == "source":
            src = _parse_ref(doc, rest.strip(), ln)
        elif key == "target":
            tgt = _parse_ref(doc, rest.strip(), ln)
        elif key == "f":
            if src is None or tgt is None:
                raise TLXError("source and target must come before components", ln)
            S, T = doc.resolve(src), doc.resolve(tgt)
            idx, _, mat = rest.partition("=")
            i = _int(idx.strip(), ln)
            if not 0 <= i <= max(S.top, T.top):
                raise TLXError(f"component f {i} out of range", ln)
            mats[i] = _matrix(mat, G, T.rank(i), S.rank(i), ln)
        else:
            raise TLXError(f"unexpected key {key!r}", ln)
    if src is None or tgt is None:
        raise TLXError("map needs a source and a target", lineno)
    f = ChainMap(doc.resolve(src), doc.resolve(tgt), mats)
    doc.add_map(name, f, src, tgt)


def _parse_duality(doc, name, body, lineno):
    v = _keyed(body, ("complex", "n", "map"), lineno)
    for k in ("complex", "n", "map"):
        if k not in v:
            raise TLXError(f"duality needs '{k}'", lineno)
    cname, ln = v["complex"]
    if cname not in doc.complexes:
        raise TLXError(f"unknown complex {cname!r}", ln)
    mname, ln = v["map"]
    if mname not in doc.maps:
        raise TLXError(f"unknown map {mname!r}", ln)
    doc.dualities[name] = DualitySpec(cname, _int(v["n"][0], v["n"][1]), mname)


def _parse_double(doc, name, body, lineno):
    v = _keyed(body, ("base", "n", "kind", "alpha", "u", "base_duality"), lineno)
    for k in ("base", "n", "kind"):
        if k not in v:
            raise TLXError(f"double needs '{k}'", lineno)
    kind, ln = v["kind"]
    if kind not in ("trivial", "twisted", "generalised"):
        raise TLXError(f"unknown kind {kind!r}", ln)
    base, ln = v["base"]
    if base not in doc.complexes:
        raise TLXError(f"unknown complex {base!r}", ln)
    alpha = v.get("alpha", (None, None))[0]
    if kind != "trivial" and alpha is None:
        raise TLXError(f"a {kind} double needs 'alpha'", lineno)
    if alpha is not None and alpha not in doc.maps:
        raise TLXError(f"unknown map {alpha!r}", v["alpha"][1])
    u = v.get("u", (None, None))[0]
    if kind == "generalised" and u is None:
        raise TLXError("a generalised double needs 'u'", lineno)
    if u is not None:
        try:
            u = format_element(parse_element(u, doc.group))
        except ParseError as exc:
            raise TLXError(f"bad element: {exc}", v["u"][1]) from None
    bd = v.get("base_duality", (None, None))[0]
    if bd is not None and bd not in doc.dualities:
        raise TLXError(f"unknown duality {bd!r}", v["base_duality"][1])
    doc.doubles[name] = DoubleSpec(base, _int(v["n"][0], v["n"][1]), kind, alpha, u, bd)
