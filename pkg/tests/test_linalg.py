from fractions import Fraction

from hypothesis import given, strategies as st

from z2contract.linalg import det, matmul, nullspace, rank, rref, schwartz_zippel_bound


def test_rank_small():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([[Fraction(1, 2), 1], [1, 3]]) == 2
    assert rank([]) == 0


def test_nullspace_of_empty_map_is_everything():
    assert len(nullspace([], ncols=3)) == 3


def test_rref_pivots():
    R, piv = rref([[2, 4, 6], [1, 2, 4]])
    assert piv == [0, 2]
    assert R[0] == [1, 2, 0]


def test_schwartz_zippel():
    assert schwartz_zippel_bound(12, 10) == Fraction(12, 21)


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_rank_nullity(A):
    ns = nullspace(A)
    assert rank(A) + len(ns) == len(A[0])
    for v in ns:
        assert all(row[0] == 0 for row in matmul(A, [[x] for x in v]))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_zero_iff_rank_deficient(A):
    assert (det(A) == 0) == (rank(A) < len(A))
