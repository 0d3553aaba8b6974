"""Command line front end.  Every command prints one JSON document on stdout.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 inconclusive.
"""
import argparse
import json
import sys
from math import gcd

from .chains import Inconclusive, NotAnEquivalence, identity_map, torsion_map
from .group_ring import ParseError
from .verdict import Absent, Nontrivial, Unknown
from .whitehead import in_J, wh_is_trivial

OK, FAILED, BAD_INPUT, INCONCLUSIVE = 0, 1, 2, 3


class InputError(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(msg)
        self.line = line


def _dump(obj, out):
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def parse_range(text):
    """'2..9' -> range(2, 10); a single number gives a one-element range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _flag(text):
    if text not in ("0", "1"):
        raise argparse.ArgumentTypeError("expected 0 (vanishes) or 1 (nonzero)")
    return text == "1"


def _load_tlx(path):
    from . import tlx
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return tlx.parse(text)
    except tlx.TLXError as exc:
        raise InputError(str(exc), exc.line) from None


def _verdict_json(v):
    out = v.to_json()
    out["verdict"] = v.name
    return out


def _torsion_report(f, label):
    tau = torsion_map(f)
    return {"command": "torsion", "map": label, "group": str(f.group), "tau": str(tau),
            **_verdict_json(wh_is_trivial(tau))}


def cmd_torsion(args, out):
    if args.lens:
        from .doubles import lens_equivalence
        m, q, q2, a = args.lens
        f = lens_equivalence(m, q, q2, a)
        if isinstance(f, Absent):
            _dump({"command": "torsion", "map": f"lens({m},{q},{q2},{a})", "verdict": "Unknown",
                   "reason": f.detail}, out)
            return INCONCLUSIVE
        _dump(_torsion_report(f, f"lens({m},{q},{q2},{a})"), out)
        return OK
    if not args.file or not args.map:
        raise InputError("torsion needs FILE and --map NAME, or --lens M Q Q2 A")
    doc = _load_tlx(args.file)
    if args.map not in doc.maps:
        raise InputError(f"no map named {args.map!r}")
    _dump(_torsion_report(doc.maps[args.map], args.map), out)
    return OK


def cmd_verify(args, out):
    from .fuzz import run_suite
    summary = run_suite(args.suite, args.trials, args.seed, m_range=args.m, n_range=args.n,
                        workers=args.workers)
    _dump({"command": "verify", **summary}, out)
    if summary["failed"]:
        return FAILED
    if summary["inconclusive"]:
        return INCONCLUSIVE
    return OK


def cmd_double(args, out):
    from .doubles import tau_unpolarised
    from .split_duality import in_cheq_PQ, is_split
    doc = _load_tlx(args.file)
    names = [args.name] if args.name else sorted(doc.doubles)
    if not names:
        raise InputError("the document has no double sections")
    reports = []
    code = OK
    for name in names:
        if name not in doc.doubles:
            raise InputError(f"no double named {name!r}")
        D = doc.build_double(name)
        rep = {"name": name, **D.to_json(), "split": is_split(D.complex, D.n)}
        rep["tau_verdict"] = wh_is_trivial(D.tau_polarised).name
        self_cheq = in_cheq_PQ(identity_map(D.complex), D.duality, D.duality)
        rep["self_cheq"] = self_cheq.name
        rep["in_J"] = in_J(D.tau_polarised, D.n).name
        rep["tate_class"] = tau_unpolarised(D).to_json()
        if not rep["split"] or isinstance(self_cheq, Nontrivial):
            code = FAILED
        elif isinstance(self_cheq, Unknown) and code == OK:
            code = INCONCLUSIVE
        reports.append(rep)
    _dump({"command": "double", "doubles": reports}, out)
    return code


def cmd_table(args, out):
    from .tables import GroupProfile, InvalidProfile, all_rows, existence_answers
    if args.all:
        rows = [{"profile": p.to_json(), **{k: v.to_json() for k, v in row.items()}} for p, row in all_rows()]
        _dump({"command": "table", "rows": rows}, out)
        return OK
    if None in (args.In, args.tate, args.psi):
        raise InputError("table needs --In, --tate and --psi (or --all)")
    try:
        p = GroupProfile(not args.In, not args.tate, not args.psi)
    except InvalidProfile as exc:
        raise InputError(str(exc)) from None
    row = existence_answers(p)
    _dump({"command": "table", "profile": p.to_json(), **{k: v.to_json() for k, v in row.items()}}, out)
    return OK


def lens_d2_check(m_max):
    """d o d = 0 for every lens complex L(m, q) with m <= m_max; returns the failures."""
    from .doubles import lens_complex
    bad = []
    for m in range(2, m_max + 1):
        for q in range(1, m):
            if gcd(q, m) != 1:
                continue
            C = lens_complex(m, q)
            if not all((C.d(i - 1) @ C.d(i)).is_zero() for i in range(2, C.top + 1)):
                bad.append([m, q])
    return bad


def cmd_lens(args, out):
    from .doubles import lens_complex, lens_equivalence
    rep = {"command": "lens"}
    code = OK
    if args.check is not None:
        bad = lens_d2_check(args.check)
        rep["d_squared_zero"] = {"m_max": args.check, "failures": bad}
        if bad:
            code = FAILED
    if args.m is not None:
        if args.q is None:
            raise InputError("lens needs --q with --m")
        C = lens_complex(args.m, args.q)
        rep["complex"] = {"m": args.m, "q": args.q,
                          "d": {str(i): str(C.d(i).rows[0][0]) for i in range(1, C.top + 1)}}
        if args.q2 is not None:
            if args.a is None:
                raise InputError("an equivalence search needs --a")
            f = lens_equivalence(args.m, args.q, args.q2, args.a, height=args.height)
            if isinstance(f, Absent):
                rep["equivalence"] = {"found": False, "reason": f.detail}
                code = max(code, INCONCLUSIVE) if code != FAILED else code
            else:
                tau = torsion_map(f)
                rep["equivalence"] = {"found": True, "q2": args.q2, "a": args.a,
                                      "components": {str(i): str(f.f(i).rows[0][0]) for i in range(f.top + 1)},
                                      "tau": str(tau), **_verdict_json(wh_is_trivial(tau))}
    elif args.check is None:
        raise InputError("lens needs --m/--q or --check M")
    _dump(rep, out)
    return code


def build_parser():
    p = argparse.ArgumentParser(prog="whtorsion", description="Exact Whitehead torsion of chain equivalences.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("torsion", help="torsion of a map in a TLX file")
    t.add_argument("file", nargs="?")
    t.add_argument("--map")
    t.add_argument("--lens", nargs=4, type=int, metavar=("M", "Q", "Q2", "A"),
                   help="use the built-in lens equivalence L(M,Q) -> L(M,Q2)")
    t.set_defaults(run=cmd_torsion)

    v = sub.add_parser("verify", help="run a randomised property suite")
    v.add_argument("--suite", required=True, choices=("calculus", "split", "theoremB", "parity", "doubles"))
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--m", type=parse_range, default=range(2, 10))
    v.add_argument("--n", type=parse_range, default=None)
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(run=cmd_verify)

    d = sub.add_parser("double", help="build the doubles of a TLX file and report their invariants")
    d.add_argument("file")
    d.add_argument("--name")
    d.set_defaults(run=cmd_double)

    tb = sub.add_parser("table", help="existence table lookup (0 = vanishes, 1 = nonzero)")
    tb.add_argument("--In", type=_flag)
    tb.add_argument("--tate", type=_flag)
    tb.add_argument("--psi", type=_flag)
    tb.add_argument("--all", action="store_true")
    tb.set_defaults(run=cmd_table)

    ln = sub.add_parser("lens", help="lens complexes and equivalences between them")
    ln.add_argument("--m", type=int)
    ln.add_argument("--q", type=int)
    ln.add_argument("--q2", type=int)
    ln.add_argument("--a", type=int)
    ln.add_argument("--height", type=int, default=8)
    ln.add_argument("--check", type=int, metavar="M", help="check d^2 = 0 for all m <= M")
    ln.set_defaults(run=cmd_lens)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.run(args, out)
    except (InputError, ParseError) as exc:
        err = {"command": args.command, "error": str(exc)}
        if getattr(exc, "line", None):
            err["line"] = exc.line
        _dump(err, out)
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except NotAnEquivalence as exc:
        _dump({"command": args.command, "error": f"not a chain equivalence: {exc}"}, out)
        print(f"error: not a chain equivalence: {exc}", file=sys.stderr)
        return BAD_INPUT
    except Inconclusive as exc:
        _dump({"command": args.command, "verdict": "Unknown", "reason": str(exc)}, out)
        return INCONCLUSIVE
    except ValueError as exc:
        _dump({"command": args.command, "error": str(exc)}, out)
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
