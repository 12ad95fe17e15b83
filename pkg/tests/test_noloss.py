import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setcode.bounds import tcon_redundancy_bound
from setcode.channel import ChannelSpec, error_ball
from setcode.codec import DecodeError
from setcode.core import SequenceSet, bits_to_int, int_to_bits
from setcode.delhash import VTHash, bf_hash, deletions_exact
from setcode.noloss import (HashSumCodec, HashSumParams, TconCodec, TconMessage, TconParams,
                            best_a, census, check_tcon_conditions, hash_sum,
                            hashsum_decode, hashsum_membership, inner_bch)

TCON = TconParams(M=4, L=25, L_prime=6, t=1, eps=1)


# --- hash-sum code ----------------------------------------------------------------

def test_membership_of_any_set_for_its_own_sum():
    h = VTHash(6)
    S = SequenceSet([(0, 1, 1, 0, 1, 0), (1, 1, 1, 0, 0, 0), (0, 0, 0, 0, 0, 1)])
    p = HashSumParams(3, 6, 1, hash_sum(S, h))
    assert hashsum_membership(S, p)
    assert not hashsum_membership(S, HashSumParams(3, 6, 1, p.a ^ 1))


def test_census_partition_and_pigeonhole():
    h = VTHash(5)
    counts = census(2, 5, h)
    assert sum(counts) == math.comb(32, 2)
    # brute-force census
    brute = [0] * (1 << h.h)
    for pair in itertools.combinations(range(32), 2):
        brute[hash_sum([int_to_bits(v, 5) for v in pair], h)] += 1
    assert counts == brute
    a, best = best_a(2, 5, h)
    assert best == max(counts) and best * 2 ** h.h >= math.comb(32, 2)
    assert math.log2(math.comb(32, 2) / best) <= h.h


def test_unrank_matches_lexicographic_enumeration():
    h = VTHash(5)
    for a in (0, 3, 9):
        c = HashSumCodec(HashSumParams(3, 5, 1, a))
        members = [S for S in itertools.combinations(range(32), 3)
                   if hash_sum([int_to_bits(v, 5) for v in S], h) == a]
        assert c.size() == len(members)
        for i, ranks in enumerate(members):
            S = c.unrank(i)
            assert sorted(bits_to_int(x) for x in S) == list(ranks)
            assert c.rank(S) == i


def test_single_deletion_sweep_small():
    c = HashSumCodec(HashSumParams(3, 5, 1, 0))
    for i in range(c.size()):
        S = sorted(c.encode(i))
        assert c.decode(frozenset(S)) == i
        for j, x in enumerate(S):
            for y in deletions_exact(x, 1):
                assert c.decode(frozenset(S[:j] + [y] + S[j + 1:])) == i


def test_two_deletions_with_brute_force_hash():
    h = bf_hash(2, 8)
    c = HashSumCodec(HashSumParams(3, 8, 2, 0), h)
    rng = random.Random(4)
    for i in [rng.randrange(c.size()) for _ in range(15)]:
        S = sorted(c.encode(i))
        for j, x in enumerate(S):
            for k in (1, 2):
                for y in deletions_exact(x, k):
                    assert c.decode(frozenset(S[:j] + [y] + S[j + 1:])) == i


def test_hashsum_decode_function():
    p = HashSumParams(3, 6, 1, 2)
    c = HashSumCodec(p)
    S = sorted(c.encode(10))
    y = S[1][1:]
    assert hashsum_decode(frozenset([S[0], y, S[2]]), p) == c.encode(10)


def test_two_short_sequences_rejected():
    c = HashSumCodec(HashSumParams(3, 6, 1, 0))
    S = sorted(c.encode(0))
    with pytest.raises(DecodeError):
        c.decode(frozenset([S[0][1:], S[1][1:], S[2]]))


def test_a_out_of_range():
    with pytest.raises(ValueError):
        HashSumCodec(HashSumParams(2, 5, 1, 1 << 10))


# --- four-stage code --------------------------------------------------------------

@pytest.fixture(scope="module")
def tcon():
    return TconCodec(TCON)


def test_tcon_instance_shape(tcon):
    assert (tcon.n_u, tcon.k_B, tcon.r) == (19, 14, 5)
    assert tcon.pinned == 2 * 1 * (6 + 1) == 14
    assert tcon.C.n == 3 and tcon.r_tilde == 2
    assert tcon.size() == len(tcon.family_A) * 2 ** (4 * 19 - 14 - 5 * (2 + 1))


def test_inner_bch_field_choice():
    assert inner_bch(19, 1).m == 5
    assert inner_bch(31, 1).m == 5
    assert inner_bch(32, 1).m == 6


def test_tcon_precondition():
    with pytest.raises(ValueError):
        TconCodec(TconParams(M=4, L=24, L_prime=6))  # k_B = 13 < 14


def _gf2_rank(rows):
    basis = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def test_tcon_size_by_constraint_rank(tcon):
    """Count the u-tuples allowed for one address set by GF(2) rank of the constraints."""
    n, M, r, k = tcon.n_u, TCON.M, tcon.r, tcon.k_B
    total_bits = M * n

    def unit(i):
        return tuple(1 if j == i else 0 for j in range(n))

    rows = []
    # u_1 in B and its first `pinned` bits fixed
    syn_cols = [tcon.syndrome(unit(i)) for i in range(n)]
    for j in range(r):
        rows.append(sum(1 << i for i in range(n) if (syn_cols[i] >> j) & 1))
    rows += [1 << i for i in range(tcon.pinned)]
    # syndromes of u_2..u_M lie in C: C's syndromes are GF(2)-linear in the bits of u
    Csyn_bits = tcon.C.m * (tcon.C.d - 1)

    def csyn(bits):
        us = [bits[n * (i + 1): n * (i + 2)] for i in range(M - 1)]
        out = 0
        for j, v in enumerate(tcon.C.syndromes([tcon.syndrome(u) for u in us])):
            out |= v << (j * tcon.C.m)
        return out

    cols = []
    for i in range(total_bits):
        bits = [0] * total_bits
        bits[i] = 1
        cols.append(csyn(bits))
    for j in range(Csyn_bits):
        rows.append(sum(1 << i for i in range(total_bits) if (cols[i] >> j) & 1))
    free = total_bits - _gf2_rank(rows)
    assert tcon.size() == len(tcon.family_A) << free


def test_tcon_encode_passes_checker(tcon):
    rng = random.Random(0)
    for i in [0, tcon.size() - 1] + [rng.randrange(tcon.size()) for _ in range(40)]:
        S = tcon.encode_index(i)
        assert check_tcon_conditions(S, tcon) == []
        assert tcon.decode_index(S) == i


def test_tcon_checker_flags_clauses(tcon):
    rows = sorted(tcon.encode_index(123), reverse=True)
    x = list(rows[0])
    x[6 + 14] ^= 1  # a parity bit of u_1
    assert any(b.startswith("(3)") for b in check_tcon_conditions(set(rows[1:]) | {tuple(x)}, tcon))
    x = list(rows[2])
    x[-1] ^= 1
    assert any(b.startswith("(4)") for b in check_tcon_conditions(set(rows[:2] + rows[3:]) | {tuple(x)}, tcon))


def test_tcon_exhaustive_ball(tcon):
    sp = ChannelSpec.parse("0:1:1:S")
    for i in (0, 987654321 % tcon.size()):
        S = tcon.encode_index(i)
        ball = error_ball(S, sp)
        assert len(ball) == 1 + 4 * 25
        for out in ball.members:
            assert tcon.decode_index(out) == i


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 19 - 1), st.integers(0, 2 ** 19 - 1), st.integers(0, 18))
def test_coset_decode_independent_of_y(u_bits, y_bits, flip):
    tcon = TconCodec(TCON)
    u = int_to_bits(u_bits, 19)
    s = tcon.syndrome(u)
    # an arbitrary y with syndrome s: fix its parity part
    y0 = int_to_bits(y_bits, 19)
    m, _ = tcon._split(y0)
    y = tcon._join(m, tcon._b_parity(m) ^ s)
    assert tcon.syndrome(y) == s
    noisy = list(u)
    noisy[flip] ^= 1
    assert tcon.coset_decode(tuple(noisy), s, y) == tcon.coset_decode(tuple(noisy), s) == u


def test_coset_decode_rejects_wrong_y(tcon):
    u = (0,) * 19
    with pytest.raises(ValueError):
        tcon.coset_decode(u, 1, (0,) * 19)


def test_step_two_matching_is_unique(tcon):
    rng = random.Random(8)
    for _ in range(100):
        S = sorted(tcon.encode_index(rng.randrange(tcon.size())))
        j = rng.randrange(4)
        x = list(S[j])
        x[rng.randrange(25)] ^= 1
        received = S[:j] + [tuple(x)] + S[j + 1:]
        addrs = [w[:6] for w in S]
        for a in addrs:
            assert sum(1 for w in received if sum(p != q for p, q in zip(a, w[:6])) <= 1) == 1


def test_redundancy_bound_holds(tcon):
    ratio = Fraction(math.comb(2 ** 25, 4), tcon.size())
    assert tcon_redundancy_bound(1, 1, 4, 25).ge_log2(ratio)


def test_tcon_message_json(tcon):
    msg = tcon.message_from_index(4242)
    assert TconMessage.from_json(msg.to_json()) == msg
