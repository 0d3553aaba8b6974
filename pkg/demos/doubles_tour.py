"""The three kinds of double over a point base, and the lower-map formula.

For doubles M, N of dimension n and a lower map a, the extended equivalence
f : M -> N has torsion

    tau(a) - (-1)^n conj(tau(a)) + tau(N) - tau(M)

which is checked here against the direct cone computation.
"""
from whtorsion.chains import identity_map, scalar_map
from whtorsion.doubles import (ThickeningModel, build_generalised_double, build_trivial_double, build_twisted_double,
                               point_base, theoremB_check)
from whtorsion.group_ring import GroupSpec, parse_element
from whtorsion.whitehead import WhElement

G = GroupSpec.cyclic(5)
u = parse_element("s + s^4 - 1", G)
K = point_base(G)
n = 7
T = ThickeningModel(K, n)

doubles = {
    "trivial": build_trivial_double(T),
    "twisted by u": build_twisted_double(T, scalar_map(K, u)),
    "generalised, alpha = 1, u": build_generalised_double(T, identity_map(K), WhElement(u)),
}
for name, D in doubles.items():
    print(f"{name:28s} ranks {list(D.complex.ranks)}  tau(M) = {D.tau_polarised}")

print()
for a_name, a in (("1", identity_map(K)), ("u", scalar_map(K, u))):
    for m_name, DM in doubles.items():
        for n_name, DN in doubles.items():
            rep = theoremB_check(DM, DN, a)
            print(f"a = {a_name}  {m_name:>26s} -> {n_name:<26s} direct {str(rep.direct):38s} "
                  f"predicted {str(rep.predicted):38s} {rep.verdict.name}")
