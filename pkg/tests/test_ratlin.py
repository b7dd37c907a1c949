from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from exactcone.ratlin import SolveStatus, affinely_independent, linearly_independent, matvec, rank, solve_exact, transpose


def chi(mask, n):
    return [mask >> i & 1 for i in range(n)]


small_ints = st.integers(-5, 5)
matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r))
)


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    # a, b, ab on abc
    assert rank([chi(1, 3), chi(2, 3), chi(3, 3)]) == 2
    # a, ab, bc, abd on abcd
    assert rank([chi(1, 4), chi(3, 4), chi(6, 4), chi(11, 4)]) == 4


def test_affine_independence_examples():
    vecs = [chi(m, 4) for m in (0b0001, 0b0010, 0b0011, 0b0111, 0b1011)]
    assert affinely_independent(vecs)
    ab, cd = chi(0b0011, 4), chi(0b1100, 4)
    mid = [Fraction(x + y, 2) for x, y in zip(ab, cd)]
    assert not affinely_independent([ab, cd, mid])
    # a zero vector with x and 2x on a line
    assert not affinely_independent([[0, 0], [1, 1], [2, 2]])


def test_solve_examples():
    assert solve_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 2, 3]) == (SolveStatus.UNIQUE, (1, 2, 3))
    assert solve_exact([[1, 1]], [1]).status is SolveStatus.UNDERDETERMINED
    assert solve_exact([[1], [1]], [0, 1]).status is SolveStatus.NO_SOLUTION


@given(matrices)
def test_rank_equals_rank_of_transpose(m):
    assert rank(m) == rank(transpose(m))


@given(st.lists(st.lists(st.integers(0, 1), min_size=4, max_size=4), min_size=1, max_size=5), st.randoms())
def test_affine_independence_permutation_invariant(vecs, rnd):
    base = affinely_independent(vecs)
    shuffled = vecs[:]
    rnd.shuffle(shuffled)
    cols = list(range(4))
    rnd.shuffle(cols)
    assert affinely_independent([[v[c] for c in cols] for v in shuffled]) == base


@given(matrices, st.data())
def test_unique_solutions_substitute_back(a, data):
    b = data.draw(st.lists(small_ints, min_size=len(a), max_size=len(a)))
    res = solve_exact(a, b)
    if res.status is SolveStatus.UNIQUE:
        assert matvec(a, res.x) == [Fraction(v) for v in b]
    if linearly_independent(transpose(a)) and res.status is not SolveStatus.NO_SOLUTION:
        assert res.status is SolveStatus.UNIQUE
