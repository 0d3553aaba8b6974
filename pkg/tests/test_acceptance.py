"""Acceptance criteria, one PASS/FAIL line each.

Run under pytest, or directly with `python tests/test_acceptance.py`.
"""
import io
import random
import time

import pytest

from whtorsion.chains import identity_map, torsion_map
from whtorsion.cli import lens_d2_check, main
from whtorsion.doubles import (ThickeningModel, build_generalised_double, hcobordism_swap, lens_equivalence,
                               point_base, swap_prediction)
from whtorsion.fuzz import run_suite, theoremB_trial
from whtorsion.group_ring import GroupSpec, small_units
from whtorsion.tables import COLUMNS, GroupProfile, InvalidProfile, all_rows
from whtorsion.verdict import Absent, Nontrivial, Trivial
from whtorsion.whitehead import WhElement, wh_is_trivial


def _all_pass(summary, checks=None):
    ok = summary["passed"] == summary["trials"] and not summary["failed"] and not summary["inconclusive"]
    for name in checks or ():
        c = summary["checks"].get(name, {})
        ok = ok and c.get("Trivial", 0) == summary["trials"]
    return ok


def calculus():
    t0 = time.perf_counter()
    s = run_suite("calculus", 200, seed=1)
    dt = time.perf_counter() - t0
    names = ("composition", "shift_1", "shift_2", "duality", "homotopy", "additivity")
    return _all_pass(s, names) and dt < 120, f"{s['passed']}/200 in {dt:.1f}s"


def split():
    s = run_suite("split", 200, seed=1)
    return _all_pass(s, ["split_formula"]), f"{s['passed']}/200"


def theorem_b():
    s = run_suite("theoremB", 100, seed=7, m_range=range(2, 10), n_range=range(6, 11))
    kinds, thetas = set(), set()
    for i in range(100):
        p = theoremB_trial(7, i, range(2, 10), range(6, 11)).params
        kinds.update(p["kinds"])
        thetas.add(p["theta_a"])
    spans = len(kinds) == 3 and any(a != 1 for a in thetas)
    return _all_pass(s, ["theoremB"]) and spans, f"{s['passed']}/100, kinds {sorted(kinds)}, theta a in {sorted(thetas)}"


def kind_consistency():
    s = run_suite("doubles", 100, seed=1)
    return _all_pass(s, ["trivial", "twisted", "generalised"]), f"{s['passed']}/100 per kind"


def parity():
    s = run_suite("parity", 100, seed=1)
    ok = _all_pass(s, ["formula_odd", "simple"])
    even = s["checks"].get("formula_even", {}).get("Trivial", 0)
    doubling = s["checks"].get("doubling", {}).get("Trivial", 0)
    return ok and even == doubling == 100, f"{s['passed']}/100 odd, {doubling}/100 even controls"


def lens():
    t0 = time.perf_counter()
    f = lens_equivalence(7, 1, 2, 3)
    G = GroupSpec.cyclic(7)
    ok = not isinstance(f, Absent)
    if ok:
        tau = torsion_map(f)
        # the oracle: tau differs from every trivial unit +-s^k
        oracle = all(tau.rep != G.mono(k, 0, e) for k in range(7) for e in (1, -1))
        ok = isinstance(wh_is_trivial(tau), Nontrivial) and oracle
    g = lens_equivalence(5, 1, 1, 1)
    ok = ok and isinstance(wh_is_trivial(torsion_map(g)), Trivial)
    ok = ok and lens_d2_check(30) == []
    dt = time.perf_counter() - t0
    return ok and dt < 30, f"{dt:.2f}s"


TABLE = [
    ((True, True, True), ("No all n", "No all n", "No all n")),
    ((True, False, False), ("Yes n >= 5", "No all n", "Yes n >= 5")),
    ((True, False, True), ("Open -", "No all n", "Open -")),
    ((False, True, True), ("Yes n = 9, >= 11", "Yes n = 9, >= 11", "No n >= 5")),
    ((False, False, False), ("Yes n >= 5", "Yes n = 9, >= 11", "Yes n >= 5")),
    ((False, False, True), ("Yes n = 9, >= 11", "Yes n = 9, >= 11", "Open -")),
]


def table():
    got = [(p.key(), tuple(f"{row[c].status} {row[c].dims}" for c in COLUMNS)) for p, row in all_rows()]
    try:
        GroupProfile(False, True, False)
        rejected = False
    except InvalidProfile:
        rejected = True
    return got == TABLE and rejected, "6 rows"


def _prescribed_units(count, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = rng.choice([5, 7, 8, 9, 10, 12])
        G = GroupSpec.cyclic(m, rng.choice([1, -1]) if m % 2 == 0 else 1)
        base = [WhElement(u) for u in small_units(G)]
        u = WhElement.zero(G)
        for b in base:
            u = u + b * rng.randint(-2, 2)
        if not u.is_zero():
            out.append((u, rng.randint(6, 11)))
    return out


def hcobordism():
    good = 0
    pairs = _prescribed_units(50)
    for u, n in pairs:
        G = u.group
        T = ThickeningModel(point_base(G), n)
        D = build_generalised_double(T, identity_map(point_base(G)), u)
        good += isinstance(wh_is_trivial(torsion_map(hcobordism_swap(D)) - swap_prediction(u, n)), Trivial)
    return good == len(pairs), f"{good}/{len(pairs)}"


def determinism():
    outs = []
    for workers in ("1", "1", "2"):
        buf = io.StringIO()
        main(["verify", "--suite", "calculus", "--trials", "20", "--seed", "3", "--workers", workers], out=buf)
        outs.append(buf.getvalue())
    return len(set(outs)) == 1, "3 runs, workers 1/1/2"


CRITERIA = [
    ("calculus suite, 200 trials under 120 s", calculus),
    ("split formula, 200 instances", split),
    ("theorem B, 100 double pairs", theorem_b),
    ("kind consistency, 100 trials per kind", kind_consistency),
    ("parity vanishing with even controls, 100 trials", parity),
    ("lens witnesses and d^2 = 0 for m <= 30", lens),
    ("existence table bit-exact", table),
    ("h-cobordism swap, 50 prescribed u", hcobordism),
    ("verify output deterministic", determinism),
]


def _line(name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})"


@pytest.mark.parametrize("name, check", CRITERIA, ids=[c[1].__name__ for c in CRITERIA])
def test_criterion(name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    for name, check in CRITERIA:
        print(_line(name, *check()), flush=True)
