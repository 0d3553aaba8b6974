from itertools import permutations

from hypothesis import given, strategies as st

from whtorsion.intlin import HermiteSolver, IntSolver, bareiss_det


def _perm_det(M):
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= M[i][p[i]]
        total += sign * prod
    return total


small_ints = st.integers(-4, 4)


@st.composite
def systems(draw):
    n = draw(st.integers(1, 6))
    k = draw(st.integers(1, 6))
    A = [[draw(st.sampled_from([0, 0, 1, -1, 2, -3, 5])) for _ in range(k)]
         for _ in range(n)]
    x0 = [draw(small_ints) for _ in range(k)]
    b = [sum(A[i][j] * x0[j] for j in range(k)) for i in range(n)]
    if draw(st.booleans()):
        i = draw(st.integers(0, n - 1))
        b[i] += draw(st.integers(1, 3))
    return A, b


def _cols(A):
    n, k = len(A), len(A[0])
    return [{i: A[i][j] for i in range(n) if A[i][j]} for j in range(k)]


def _check(A, b, x):
    return all(sum(A[i][j] * x.get(j, 0) for j in range(len(A[0]))) == b[i] for i in range(len(A)))


def _has_integer_solution_bruteforce(A, b, bound=6):
    # exhaustive search over a box; only used on tiny systems
    from itertools import product
    k = len(A[0])
    if k > 4:
        return None
    for x in product(range(-bound, bound + 1), repeat=k):
        if all(sum(A[i][j] * x[j] for j in range(k)) == b[i] for i in range(len(A))):
            return True
    return None


@given(systems())
def test_int_solver_agrees_with_hermite(sys_):
    A, b = sys_
    bd = {i: v for i, v in enumerate(b) if v}
    x1 = IntSolver(_cols(A), len(A)).solve(bd)
    x2 = HermiteSolver(_cols(A), len(A)).solve(bd)
    assert (x1 is None) == (x2 is None)
    if x1 is not None:
        assert _check(A, b, x1) and _check(A, b, x2)


@given(systems())
def test_solution_found_when_one_exists_in_a_box(sys_):
    A, b = sys_
    if _has_integer_solution_bruteforce(A, b):
        x = IntSolver(_cols(A), len(A)).solve({i: v for i, v in enumerate(b) if v})
        assert x is not None and _check(A, b, x)


def test_rational_but_not_integer_solution():
    # 2x = 1 is solvable over Q only
    assert IntSolver([{0: 2}], 1).solve({0: 1}) is None
    assert HermiteSolver([{0: 2}, {0: 4}], 1).solve({0: 1}) is None
    # gcd(6, 10) = 2 divides 4
    x = IntSolver([{0: 6}, {0: 10}], 1).solve({0: 4})
    assert 6 * x.get(0, 0) + 10 * x.get(1, 0) == 4


def test_solver_reuse_for_many_right_hand_sides():
    A = [[1, 2, 0], [0, 3, 1], [2, 0, 5]]
    S = IntSolver(_cols(A), 3)
    for b in ([1, 0, 0], [0, 1, 0], [3, 4, 5], [0, 0, 0]):
        x = S.solve({i: v for i, v in enumerate(b) if v})
        if x is not None:
            assert _check(A, b, x)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_bareiss_matches_permutation_expansion(M):
    assert bareiss_det(M) == _perm_det(M)


def test_bareiss_empty_and_singular():
    assert bareiss_det([]) == 1
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    assert bareiss_det([[0, 1], [1, 0]]) == -1


def test_fraction_free_det_is_exact_on_large_entries():
    M = [[10 ** 12 + 1, 3], [7, 10 ** 12 - 1]]
    assert bareiss_det(M) == (10 ** 12 + 1) * (10 ** 12 - 1) - 21
