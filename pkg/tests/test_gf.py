import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from raolab.gf import (DimensionMismatch, FieldMatrix, FieldSpec, image_sum_dimension,
                       kernel_dimension, left_nullspace, nullspace, rank, rref)

SMALL_PRIMES = (2, 3, 7, 101, 32003, 65537)


def mats(max_side=7):
    shape = st.tuples(st.integers(1, max_side), st.integers(1, max_side))
    return shape.flatmap(lambda s: arrays(np.int64, s, elements=st.integers(0, 10**6)))


@given(mats(), st.sampled_from(SMALL_PRIMES))
def test_rank_nullity(a, p):
    assert rank(a, p) + len(nullspace(a, p)) == a.shape[1]
    assert kernel_dimension(a, p) == len(nullspace(a, p))


@given(mats(), st.sampled_from(SMALL_PRIMES))
def test_nullspace_is_kernel(a, p):
    K = nullspace(a, p)
    assert not ((a % p) @ K.T % p).any()
    assert rank(K, p) == len(K) if len(K) else True


@given(mats(), st.sampled_from(SMALL_PRIMES))
def test_left_nullspace(a, p):
    Y = left_nullspace(a, p)
    assert not (Y @ (a % p) % p).any()
    assert len(Y) == a.shape[0] - rank(a, p)


@given(mats(), st.sampled_from(SMALL_PRIMES))
def test_rank_transpose(a, p):
    assert rank(a, p) == rank(a.T.copy(), p)


@given(mats(), st.integers(0, 2**32), st.sampled_from(SMALL_PRIMES))
def test_rank_invariant_under_invertible_row_ops(a, seed, p):
    rng = np.random.default_rng(seed)
    n = a.shape[0]
    while True:
        g = rng.integers(0, p, size=(n, n))
        if rank(g, p) == n:
            break
    assert rank(g @ (a % p) % p, p) == rank(a, p)


@given(mats(), st.sampled_from(SMALL_PRIMES))
def test_rref_shape(a, p):
    red, piv = rref(a, p)
    assert len(piv) == rank(a, p)
    for i, c in enumerate(piv):
        assert red[i, c] == 1
        assert sum(1 for r in range(len(piv)) if red[r, c]) == 1


@given(mats(5), mats(5), st.sampled_from(SMALL_PRIMES))
def test_image_sum_bounds(a, b, p):
    if a.shape[0] != b.shape[0]:
        with pytest.raises(DimensionMismatch):
            image_sum_dimension(a, b, p)
        return
    d = image_sum_dimension(a, b, p)
    assert max(rank(a, p), rank(b, p)) <= d <= rank(a, p) + rank(b, p)


def test_known_ranks():
    assert rank(np.array([[1, 2], [2, 4]]), 7) == 1
    assert rank(np.array([[1, 1], [1, 3]]), 2) == 1
    assert rank(np.array([[1, 1], [1, 3]]), 3) == 2
    assert rank(np.zeros((3, 3), dtype=np.int64), 5) == 0
    assert rank(np.eye(4, dtype=np.int64), 32003) == 4


def test_field_matrix_roundtrip():
    fm = FieldMatrix.from_array([[1, -1], [32004, 5]], FieldSpec(32003))
    assert fm.to_array().tolist() == [[1, 32002], [1, 5]]
    assert rank(fm) == 2
    assert fm.transpose().to_array().tolist() == [[1, 1], [32002, 5]]


def test_field_spec_rejects_composites():
    with pytest.raises(ValueError):
        FieldSpec(32004)
    assert FieldSpec(7).inv(3) == 5
    with pytest.raises(ZeroDivisionError):
        FieldSpec(7).inv(14)


def test_entries_length_checked():
    with pytest.raises(DimensionMismatch):
        FieldMatrix(2, 2, (1, 2, 3))
