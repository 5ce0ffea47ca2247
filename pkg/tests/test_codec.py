import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from udmkit.codec import (
    ERASED,
    ChannelOutput,
    DecoderTrace,
    InsufficientSymbolsError,
    NotUDMError,
    channel_erase,
    decode_gaussian,
    decode_newton,
    encode_matrix,
    encode_taylor,
    op_count_profile,
    reduce_pattern,
    sample_pattern,
    simulate,
)
from udmkit.gf import field_new
from udmkit.linalg import identity_NK, reversal_NK
from udmkit.poly import Poly
from udmkit.udm import UdmFamily, construct_pascal, count_patterns, enumerate_patterns


def test_encode_examples(ex22):
    assert encode_matrix(ex22, [1, 0, 0]) == [[1, 0, 0], [0, 0, 1], [1, 0, 0], [1, 0, 0]]
    assert encode_matrix(ex22, [0, 0, 0]) == [[0] * 3] * 4
    F = field_new(7)
    pair = UdmFamily(F, (identity_NK(F, 5, 5), reversal_NK(F, 5, 5)))
    u = [3, 1, 4, 1, 5]
    assert encode_matrix(pair, u) == [u, u[::-1]]
    with pytest.raises(ValueError):
        encode_matrix(ex22, [1, 2])


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_taylor_encoding_equals_matrix_encoding(q):
    rng = random.Random(q)
    for N in range(1, 5):
        for K in range(N, min(8, (q + 1) * N + 1)):
            fam = construct_pascal(q + 1, N, K, q)
            for _ in range(5):
                u = [rng.randrange(q) for _ in range(K)]
                assert encode_taylor(u, fam.betas(), N) == encode_matrix(fam, u)


def test_taylor_encoding_examples():
    F = field_new(7)
    fam = construct_pascal(8, 3, 5, 7)
    betas = fam.betas()
    x = encode_taylor([4, 0, 0, 0, 0], betas, 3)
    for ell, b in enumerate(betas):
        if ell != 1:
            assert x[ell] == [4, 0, 0]
    b2 = betas[2]
    for n in range(3):
        u = (Poly.linear(F, b2) ** n).scale(5)
        coeffs = list(u.coeffs) + [0] * (5 - len(u.coeffs))
        assert encode_taylor(coeffs, betas, 3)[2] == [5 if i == n else 0 for i in range(3)]


def test_channel_erase(ex22):
    x = encode_matrix(ex22, [1, 2, 0])
    assert channel_erase(x, (3, 3, 3, 3), ex22.field).symbols == tuple(map(tuple, x))
    assert all(s == (ERASED,) * 3 for s in channel_erase(x, (0, 0, 0, 0), ex22.field).symbols)
    assert channel_erase(x, (1, 1, 0, 1), ex22.field).pattern == (1, 1, 0, 1)
    with pytest.raises(ValueError):
        ChannelOutput(ex22.field, ((1, ERASED, 2),))


def test_sample_pattern_deterministic_and_uniform():
    assert sample_pattern(4, 3, 3, 7) == sample_pattern(4, 3, 3, 7)
    counts = {}
    rng = random.Random(1)
    for _ in range(20000):
        v = sample_pattern(4, 3, 3, rng)
        counts[v] = counts.get(v, 0) + 1
    assert set(counts) == set(enumerate_patterns(4, 3, 3))
    # each of 20 patterns expected 1000 times; a 5-sigma band is roughly +-150
    assert all(850 < c < 1150 for c in counts.values())
    at_least = {sample_pattern(3, 2, 3, s, "atleast") for s in range(2000)}
    assert at_least == set(enumerate_patterns(3, 2, 3, "atleast"))


def test_reduce_pattern():
    assert reduce_pattern((2, 2, 2), 3) == (2, 1, 0)
    assert reduce_pattern((1, 1, 0, 1), 3) == (1, 1, 0, 1)


def test_gaussian_examples(ex22):
    out = channel_erase(encode_matrix(ex22, [1, 2, 0]), (1, 1, 0, 1), ex22.field)
    assert decode_gaussian(ex22, out) == [1, 2, 0]
    out = channel_erase(encode_matrix(ex22, [2, 2, 1]), (3, 0, 0, 0), ex22.field)
    assert out.symbols[0] == (2, 2, 1)
    assert decode_gaussian(ex22, out) == [2, 2, 1]
    with pytest.raises(InsufficientSymbolsError):
        decode_gaussian(ex22, channel_erase(encode_matrix(ex22, [1, 1, 1]), (0, 0, 0, 0), ex22.field))


def test_gaussian_reports_non_udm_pattern(ex22):
    bad = ex22.with_matrices([ex22[0], ex22[1], ex22[2].replace(0, 0, 0), ex22[3]])
    out = channel_erase(encode_matrix(bad, [1, 1, 1]), (0, 0, 3, 0), bad.field)
    with pytest.raises(NotUDMError) as e:
        decode_gaussian(bad, out)
    assert e.value.pattern == (0, 0, 3, 0)


def test_newton_exhaustive_small_family(ex22):
    fam = construct_pascal(4, 3, 3, 3, alpha=2)
    betas = fam.betas()
    cases = 0
    for u in itertools.product(range(3), repeat=3):
        for v in enumerate_patterns(4, 3, 3):
            out = channel_erase(encode_matrix(fam, u), v, fam.field)
            tr = DecoderTrace.for_field(fam.field, check_invariants=True)
            assert decode_newton(out, betas, 3, tr) == list(u) == decode_gaussian(fam, out)
            cases += 1
    assert cases == 540


def test_newton_special_patterns():
    fam = construct_pascal(6, 4, 4, 5)
    betas = fam.betas()
    u = [1, 2, 3, 4]
    x = encode_matrix(fam, u)
    y = channel_erase(x, (0, 4, 0, 0, 0, 0), fam.field)
    assert y.symbols[1] == (4, 3, 2, 1)
    assert decode_newton(y, betas, 4) == u
    y = channel_erase(x, (4, 0, 0, 0, 0, 0), fam.field)
    assert y.symbols[0] == tuple(u)
    assert decode_newton(y, betas, 4) == u
    with pytest.raises(InsufficientSymbolsError):
        decode_newton(channel_erase(x, (1, 0, 0, 1, 0, 0), fam.field), betas, 4)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_newton_matches_gaussian(seed):
    rng = random.Random(seed)
    q = rng.choice([4, 5, 7])
    N = rng.randint(1, 3)
    L = q + 1
    K = rng.randint(N, min(6, L * N))
    fam = construct_pascal(L, N, K, q)
    mode = rng.choice(["exact", "atleast"])
    v = sample_pattern(L, N, K, rng, mode)
    u = [rng.randrange(q) for _ in range(K)]
    out = channel_erase(encode_matrix(fam, u), v, fam.field)
    tr = DecoderTrace.for_field(fam.field, check_invariants=True, keep_steps=True)
    assert decode_newton(out, fam.betas(), K, tr) == decode_gaussian(fam, out) == u
    assert len(tr.steps) == K - reduce_pattern(v, K)[1]


def test_newton_degree_of_g_tracks_updates():
    fam = construct_pascal(8, 3, 6, 7)
    rng = random.Random(4)
    for _ in range(50):
        v = sample_pattern(8, 3, 6, rng)
        u = [rng.randrange(7) for _ in range(6)]
        tr = DecoderTrace.for_field(fam.field, keep_steps=True)
        decode_newton(channel_erase(encode_matrix(fam, u), v, fam.field), fam.betas(), 6, tr)
        assert len(tr.steps) == 6 - v[1]
        for m, (_, _, _, h, g) in enumerate(tr.steps, 1):
            assert len(g) - 1 == m


def test_op_counter_counts_only_mul_and_inv(ex22):
    out = channel_erase(encode_matrix(ex22, [1, 2, 0]), (1, 1, 0, 1), ex22.field)
    tr = DecoderTrace.for_field(ex22.field)
    decode_gaussian(ex22, out, tr)
    assert tr.ops.total == tr.ops.muls + tr.ops.invs > 0


def test_profile_deterministic():
    a = op_count_profile([4, 8], 3, seed=2, q=13)
    b = op_count_profile([4, 8], 3, seed=2, q=13)
    assert a == b
    assert op_count_profile([4], 3, seed=2, q=13) == a[:1]


def test_simulate(ex22):
    fam = construct_pascal(4, 3, 3, 3, alpha=2)
    st1 = simulate(fam, 300, seed=9, decoder="both")
    assert st1.success_rate == 1.0 and st1.mismatches == 0
    assert simulate(fam, 300, seed=9, decoder="both", jobs=2) == st1
    bad = ex22.with_matrices([ex22[0], ex22[1], ex22[2].replace(0, 0, 0), ex22[3]])
    st2 = simulate(bad, 300, seed=9)
    assert st2.success_rate < 1.0 and st2.singular > 0
