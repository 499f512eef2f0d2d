from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slmod.exact_linalg import (
    Subspace,
    from_triplets,
    identity,
    image,
    intersect,
    kernel,
    matrix,
    member,
    rank,
    rref,
    subspace_sum,
    zero_matrix,
)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def small_matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def test_rref_examples():
    assert rref([[2, 4], [1, 2]]).basis == ((F(1), F(2)),)
    assert rref([[0, 1], [1, 0]]).basis == ((F(1), F(0)), (F(0), F(1)))
    assert rref([[1, 2], [3, 4]]).basis == ((F(1), F(0)), (F(0), F(1)))


def test_kernel_examples():
    assert kernel([[1, 2]]).basis == ((F(1), F(-1, 2)),)
    assert kernel(identity(3)).dim == 0
    assert kernel(zero_matrix(2, 3)) == Subspace.full(3)


def test_image_examples():
    assert image(from_triplets(2, 2, [(0, 1, 1)]), Subspace.full(2)).basis == ((F(1), F(0)),)
    assert image(zero_matrix(2, 2), Subspace.full(2)).dim == 0
    assert image([[1, 1], [1, 1]], Subspace.full(2)).basis == ((F(1), F(1)),)


def test_image_dimension_mismatch():
    with pytest.raises(ValueError):
        image([[1, 2]], Subspace.full(3))


def test_intersect_sum_member_examples():
    e = identity(3)
    a = Subspace(3, [e[0], e[1]])
    b = Subspace(3, [e[1], e[2]])
    assert intersect(a, b).basis == ((F(0), F(1), F(0)),)
    assert subspace_sum(Subspace(2, [(1, 0)]), Subspace(2, [(0, 1)])) == Subspace.full(2)
    assert member(Subspace(2, [(1, 1), (0, 1)]), (1, 0))
    assert not member(Subspace(3, [(1, 0, 0)]), (0, 1, 0))


def test_subspace_canonical_contract():
    s = Subspace(3, [(2, 4, 6), (1, 2, 3), (0, 0, 5)])
    # pivots strictly increasing, pivot entries 1, zeros above pivots
    basis = s.basis
    pivots = s.pivots
    assert list(pivots) == sorted(pivots)
    for i, (row, p) in enumerate(zip(basis, pivots)):
        assert row[p] == 1
        for j, other in enumerate(basis):
            if j != i:
                assert other[p] == 0
    # same span, different presentation -> identical object
    t = Subspace(3, [(1, 2, 3), (0, 0, 1)])
    assert s == t and hash(s) == hash(t)


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rref_idempotent(rows):
    s = rref(rows)
    assert rref(s.basis if s.dim else [[0] * s.ambient_dim]) == s or s.dim == 0


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_nullity(rows):
    m = matrix(rows)
    assert rank(m) + kernel(m).dim == len(m[0])


@settings(max_examples=40, deadline=None)
@given(small_matrices(3, 4), small_matrices(3, 4))
def test_sum_intersect_dimension_formula(rows_a, rows_b):
    cols = max(len(rows_a[0]), len(rows_b[0]))
    a = Subspace(cols, [list(r) + [0] * (cols - len(r)) for r in rows_a])
    b = Subspace(cols, [list(r) + [0] * (cols - len(r)) for r in rows_b])
    assert subspace_sum(a, b).dim + intersect(a, b).dim == a.dim + b.dim


@settings(max_examples=40, deadline=None)
@given(small_matrices(3, 4))
def test_membership_matches_span(rows):
    s = rref(rows)
    for row in rows:
        assert member(s, row)


def test_from_triplets_accumulates():
    m = from_triplets(2, 2, [(0, 0, 1), (0, 0, 2), (1, 1, -1)])
    assert m == ((3, 0), (0, -1))
