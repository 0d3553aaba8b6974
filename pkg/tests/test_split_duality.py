import random

import pytest
from hypothesis import given, settings, strategies as st

from whtorsion.chains import (BasedComplex, ChainMap, direct_sum, dual_complex, homotopy_perturb, identity_map,
                              torsion_map)
from whtorsion.fuzz import Gen, random_homotopy, split_trial
from whtorsion.group_ring import GroupSpec, parse_element
from whtorsion.matrices import GRMatrix
from whtorsion.split_duality import (DualityPair, alpha_invariant, in_cheq_PQ, is_split, lower, reassemble,
                                     restrict_lower, restrict_upper, split_formula_check, split_prediction, upper)
from whtorsion.verdict import Nontrivial, Trivial
from whtorsion.whitehead import WhElement, wh_involute

C5 = GroupSpec.cyclic(5)
U5 = parse_element("s + s^4 - 1", C5)


def doubled(A, n):
    """A (+) A^{n-*}, self-dual on the nose."""
    return direct_sum(A.with_top(n), dual_complex(A.with_top(n), n))


def diag_map(C, entries):
    """Self-map of a complex of rank <= 1 in each degree, scalar entries per degree."""
    G = C.group
    return ChainMap(C, C, {i: GRMatrix.diag(G, [entries.get(i, G.one())] * C.rank(i)) for i in range(C.top + 1)})


def circle_like(n):
    A = BasedComplex(C5, [1, 1], {1: GRMatrix(C5, [[C5.mono(1) - C5.one()]])})
    return doubled(A, n)


def test_lower_of_top_concentrated_complex_is_zero():
    C = BasedComplex(C5, [0, 0, 0, 2])
    assert lower(C, 3).is_zero()
    assert upper(C, 3).ranks == C.ranks


def test_middle_degree_belongs_to_neither_half():
    C = BasedComplex(C5, [1, 1, 1, 1, 1])
    assert lower(C, 4).ranks == (1, 1, 0, 0, 0)
    assert upper(C, 4).ranks == (0, 0, 0, 1, 1)
    assert not is_split(C, 4)


def test_lower_plus_upper_recovers_split_complex():
    C = circle_like(5)
    assert is_split(C, 5)
    L, U = lower(C, 5), upper(C, 5)
    assert tuple(a + b for a, b in zip(L.ranks, U.ranks)) == C.ranks
    for i in range(1, C.top + 1):
        assert C.d(i) == (L.d(i) if L.rank(i) or L.rank(i - 1) else U.d(i))


def test_is_split_examples():
    assert is_split(BasedComplex(C5, [1, 1, 0, 1, 1]), 4)
    assert not is_split(BasedComplex(C5, [0, 0, 1, 0, 0]), 4)
    # n odd: ranks on both sides of the middle but a zero middle differential
    assert is_split(BasedComplex(C5, [0, 1, 1]), 3)
    one = GRMatrix(C5, [[C5.one()]])
    assert not is_split(BasedComplex(C5, [0, 1, 1], {2: one}), 3)


def test_restrictions():
    C = circle_like(4)
    assert restrict_lower(identity_map(C), 4) == identity_map(lower(C, 4))
    f = diag_map(C, {0: U5, 1: U5, 3: C5.mono(2), 4: C5.mono(2)})
    lo, up = restrict_lower(f, 4), restrict_upper(f, 4)
    assert lo.f(0) == GRMatrix(C5, [[U5]]) and up.f(4) == GRMatrix(C5, [[C5.mono(2)]])
    assert reassemble(lo, up, C, C) == f
    assert torsion_map(f) == torsion_map(lo) + torsion_map(up)
    with pytest.raises(ValueError):
        restrict_lower(identity_map(BasedComplex(C5, [1, 1, 1])), 2)


def test_identity_is_in_its_own_cheq():
    C = circle_like(4)
    P = DualityPair(C, 4, identity_map(C))
    assert isinstance(in_cheq_PQ(identity_map(C), P, P), Trivial)
    rep = split_formula_check(identity_map(C), P, P)
    assert rep.ok and rep.direct.is_zero() and rep.formula.is_zero()


def test_homology_obstruction_detected():
    # point (+) its 2-dual: zero differentials, so f P f^* = P must hold on the nose
    C = doubled(BasedComplex(C5, [1]), 2)
    P = DualityPair(C, 2, identity_map(C))
    f = diag_map(C, {0: C5.mono(1)})
    assert isinstance(in_cheq_PQ(f, P, P), Nontrivial)
    with pytest.raises(ValueError):
        split_formula_check(f, P, P)
    Q = DualityPair(doubled(BasedComplex(C5, [1]), 3), 3, identity_map(doubled(BasedComplex(C5, [1]), 3)))
    with pytest.raises(ValueError):
        in_cheq_PQ(f, P, Q)


def test_duality_pair_validates():
    C = circle_like(4)
    with pytest.raises(ValueError):
        DualityPair(C, 5, identity_map(C))


def test_alpha_of_swap_duality_is_zero():
    C = circle_like(4)
    assert alpha_invariant(DualityPair(C, 4, identity_map(C))).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_alpha_of_unit_twist(n):
    C = doubled(BasedComplex(C5, [1]), n)
    P = DualityPair(C, n, diag_map(C, {n: U5, 0: U5}))
    # the twist sits in degree n of the upper half
    expected = WhElement(U5) if n % 2 == 0 else -WhElement(U5)
    assert alpha_invariant(P) == expected


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_alpha_is_homotopy_invariant(seed):
    g = Gen(random.Random(seed), C5)
    C = circle_like(4)
    low = diag_map(C, {0: U5, 1: U5, 3: U5, 4: U5})
    P = homotopy_perturb(low, random_homotopy(g, C, C, 0.8))
    P = ChainMap(C, C, {i: P.f(i) for i in range(P.top + 1)})
    a0 = alpha_invariant(DualityPair(C, 4, low))
    assert alpha_invariant(DualityPair(C, 4, P)) == a0


def test_split_prediction_parity():
    x = WhElement(U5)
    z = WhElement.zero(C5)
    assert split_prediction(x, 4, z, z) == x - wh_involute(x)
    assert split_prediction(x, 5, z, z) == x + wh_involute(x)
    assert split_prediction(z, 4, x, z) == -x


def test_lower_twist_in_trivial_double():
    # f scales the lower cells by u and the upper ones by the inverse conjugate
    C = doubled(BasedComplex(C5, [1]), 3)
    P = DualityPair(C, 3, identity_map(C))
    v = parse_element("s^2 + s^3 - 1", C5)
    f = diag_map(C, {0: U5, 3: v})
    rep = split_formula_check(f, P, P)
    assert rep.ok
    assert rep.lower_torsion == WhElement(U5)
    assert rep.direct == WhElement(U5) * 2


@settings(max_examples=10)
@given(st.integers(0, 10 ** 6))
def test_random_split_instances(index):
    assert split_trial(11, index).passed
