"""Lens complexes over Z[C_7] and a chain equivalence that is not simple.

L(7, 1) and L(7, 2) are homotopy equivalent (2 = 3^2 * 1 mod 7 up to sign),
and the torsion of the equivalence detects that they are not simple
homotopy equivalent.
"""
from whtorsion.chains import torsion_map
from whtorsion.doubles import lens_complex, lens_equivalence
from whtorsion.whitehead import wh_is_trivial


def show(C, label):
    print(label)
    for i in range(1, C.top + 1):
        print(f"  d{i} = {C.d(i).rows[0][0]}")


show(lens_complex(7, 1), "L(7, 1)")
show(lens_complex(7, 2), "L(7, 2)")

f = lens_equivalence(7, 1, 2, 3)
print("\nequivalence components:")
for i in range(f.top + 1):
    print(f"  f{i} = {f.f(i).rows[0][0]}")

tau = torsion_map(f)
print(f"\ntorsion {tau}: {wh_is_trivial(tau).name}")

same = lens_equivalence(5, 1, 1, 1)
print(f"L(5, 1) -> L(5, 1): torsion {torsion_map(same)}, {wh_is_trivial(torsion_map(same)).name}")
