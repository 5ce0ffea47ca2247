import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from udmkit.gf import field_new
from udmkit.linalg import MatrixGF, identity, identity_NK, inverse, kronecker, rank, reversal_NK
from udmkit.udm import UdmFamily, construct_pascal, verify
from udmkit.transforms import (
    TransformError,
    col_transform,
    mirrored,
    normalize_leading_pair,
    pair_reversal,
    permute,
    reduce,
    row_transform,
    tensor_power,
)


def rand_invertible(rng, F, n):
    while True:
        B = MatrixGF(F, [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)], n)
        if rank(B) == n:
            return B


def rand_lower(rng, F, n):
    return MatrixGF(F, [[rng.randrange(1, F.q) if i == j else (rng.randrange(F.q) if j < i else 0)
                         for j in range(n)] for i in range(n)], n)


def test_row_transform(ex22, gf3):
    C = MatrixGF(gf3, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert verify(row_transform(ex22, 2, C)).passed
    assert row_transform(ex22, 2, identity(gf3, 3)).matrices == ex22.matrices
    with pytest.raises(TransformError):
        row_transform(ex22, 2, MatrixGF(gf3, [[0, 0, 0], [0, 1, 0], [0, 0, 1]]))
    with pytest.raises(TransformError):
        row_transform(ex22, 2, MatrixGF(gf3, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]))


def test_col_transform(ex22, gf3):
    assert col_transform(ex22, identity(gf3, 3)).matrices == ex22.matrices
    A2 = ex22[2]
    assert col_transform(ex22, inverse(A2))[2] == identity(gf3, 3)
    B = rand_invertible(random.Random(5), gf3, 3)
    assert verify(col_transform(ex22, B)).passed
    with pytest.raises(TransformError):
        col_transform(ex22, MatrixGF(gf3, [[1, 1, 0], [1, 1, 0], [0, 0, 1]]))


def test_permute(ex22):
    assert permute(ex22, [0, 1, 2, 3]).matrices == ex22.matrices
    assert verify(permute(ex22, [0, 1, 3, 2])).passed
    assert verify(permute(ex22, [3, 2, 1, 0])).passed
    with pytest.raises(TransformError):
        permute(ex22, [0, 0, 1, 2])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_preservation_under_random_transforms(seed):
    rng = random.Random(seed)
    q = rng.choice([2, 3, 4, 5, 7, 8, 9])
    F = field_new(q)
    N = rng.randint(1, 4)
    L = rng.randint(2, min(q + 1, 5))
    K = rng.randint(N, min(4, L * N))
    fam = construct_pascal(L, N, K, q)
    sigma = list(range(L))
    rng.shuffle(sigma)
    out = row_transform(fam, rng.randrange(L), rand_lower(rng, F, N))
    out = col_transform(out, rand_invertible(rng, F, K))
    out = permute(out, sigma)
    assert verify(out).passed


def test_tensor_power_prime_field():
    assert tensor_power(construct_pascal(3, 2, 2, 2), 2).matrices == construct_pascal(3, 4, 4, 2).matrices
    fam = construct_pascal(4, 3, 3, 3, alpha=2)
    assert tensor_power(fam, 1) is fam
    sq = tensor_power(fam, 2)
    rep = verify(sq)
    assert rep.passed and rep.patterns_checked == 220
    assert sq.matrices == construct_pascal(4, 9, 9, 3, alpha=2).matrices
    with pytest.raises(TransformError):
        tensor_power(fam, 0)


@pytest.mark.parametrize("q", [4, 8, 9])
def test_pascal_digit_product_formula(q):
    """Over GF(p^s) the entries factor over radix-p digits with alpha^(p^h) on digit h."""
    F = field_new(q)
    p = F.p
    N = p * p
    fam = construct_pascal(min(q + 1, 6), N, N, q)
    for ell, M in enumerate(fam.matrices[2:]):
        for n in range(N):
            for k in range(N):
                expect = 1
                for h, (kh, nh) in enumerate(((k % p, n % p), (k // p, n // p))):
                    c = F.natural(math.comb(kh, nh))
                    expect = F.mul(expect, F.mul(c, F.pow(F.alpha, ell * (kh - nh) * p ** h)) if c else 0)
                assert M[n, k] == expect


def test_pair_reversal(ex22):
    out = pair_reversal(ex22)
    assert verify(out).passed
    assert mirrored(out, 0, 1) and mirrored(out, 2, 3)
    assert not mirrored(ex22, 2, 3)
    wide = construct_pascal(4, 2, 4, 5)
    assert pair_reversal(wide) is wide


@pytest.mark.parametrize("L,N,K,q", [(5, 3, 4, 4), (6, 4, 5, 5), (4, 2, 3, 3), (8, 4, 7, 7), (5, 3, 3, 4)])
def test_pair_reversal_general(L, N, K, q):
    rng = random.Random(L * 100 + K)
    F = field_new(q)
    fam = col_transform(construct_pascal(L, N, K, q), rand_invertible(rng, F, K))
    out = pair_reversal(fam)
    assert verify(out).passed
    for i in range(0, L - 1, 2):
        assert mirrored(out, i, i + 1)


def test_pair_reversal_on_identity_pair():
    F = field_new(5)
    pair = UdmFamily(F, (identity_NK(F, 4, 4), reversal_NK(F, 4, 4)))
    assert pair_reversal(pair).matrices == pair.matrices


def test_pair_reversal_rejects_non_udm(ex22):
    mats = list(ex22.matrices)
    mats[3] = mats[3].replace_row(1, mats[2].row(1))
    mats[3] = mats[3].replace_row(0, mats[2].row(0))
    with pytest.raises(TransformError, match="step"):
        pair_reversal(ex22.with_matrices(mats))


def test_normalize(ex22, gf3):
    assert normalize_leading_pair(ex22) is ex22
    B = rand_invertible(random.Random(11), gf3, 3)
    moved = col_transform(ex22, B)
    norm = normalize_leading_pair(moved)
    assert norm[0] == identity_NK(gf3, 3, 3) and norm[1] == reversal_NK(gf3, 3, 3)
    assert verify(norm).passed
    assert normalize_leading_pair(norm) is norm
    F2 = field_new(2)
    pair = UdmFamily(F2, (identity_NK(F2, 5, 5), reversal_NK(F2, 5, 5)))
    assert normalize_leading_pair(pair) is pair


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_normalize_random(seed):
    rng = random.Random(seed)
    q = rng.choice([2, 3, 4, 5, 7])
    F = field_new(q)
    N = rng.randint(1, 3)
    L = rng.randint(2, min(q + 1, 5))
    K = rng.randint(N, min(2 * N + 1, L * N))
    fam = construct_pascal(L, N, K, q)
    fam = permute(fam, rng.sample(range(L), L))
    fam = col_transform(fam, rand_invertible(rng, F, K))
    norm = normalize_leading_pair(fam)
    assert norm[0] == identity_NK(F, N, K) and norm[1] == reversal_NK(F, N, K)
    assert verify(norm).passed
    assert normalize_leading_pair(norm) is norm


def test_reduce(ex22):
    assert reduce(construct_pascal(4, 3, 3, 3)).matrices == construct_pascal(4, 2, 2, 3).matrices
    r = reduce(construct_pascal(3, 2, 2, 2))
    assert r.params == (3, 1, 1, 2) and verify(r).passed
    with pytest.raises(TransformError):
        reduce(construct_pascal(3, 1, 1, 2))
    B = rand_invertible(random.Random(3), ex22.field, 3)
    moved = col_transform(ex22, B)
    if moved[1].row(0) != (0, 0, 1):
        with pytest.raises(TransformError, match="normalize"):
            reduce(moved)
    assert verify(reduce(normalize_leading_pair(moved))).passed


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_reduce_coherence_grid(q):
    for L in range(2, q + 2):
        for N in range(2, 5):
            assert reduce(construct_pascal(L, N, N, q)).matrices == construct_pascal(L, N - 1, N - 1, q).matrices
