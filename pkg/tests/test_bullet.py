import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setcode.bounds import bullet_redundancy_bound
from setcode.bullet import (BulletCodec, BulletMessage, BulletParams, bullet_params_for,
                            check_conditions, delta_for, load_params)
from setcode.channel import ChannelSpec, Kind, corrupt, error_ball, verify_correcting
from setcode.codec import DecodeError
from setcode.core import subset_unrank

MAIN = BulletParams(M=8, L=17, L1=4, L2=3, mu=5, delta=2, s=0, t=1, kind=Kind.L)
TOY = BulletParams(M=4, L=8, L1=3, L2=1, mu=3, delta=1, s=1, t=0, kind=Kind.L)
TOY_D = BulletParams(M=4, L=8, L1=3, L2=1, mu=3, delta=1, s=0, t=1, kind=Kind.D)


def size_formula(M, L, L1, L2, mu, delta):
    return (math.comb(2 ** L1, M) * 2 ** ((L - L1 - L2 - delta * (L1 + 1)) * mu)
            * ((2 ** L2 - 1) * 2 ** (L - L1 - L2)) ** (M - delta - mu))


def test_params_validation():
    with pytest.raises(ValueError):
        BulletParams(M=8, L=17, L1=2, L2=3, mu=5, delta=2)  # 8 > 2^2 addresses
    with pytest.raises(ValueError):
        BulletParams(M=8, L=16, L1=4, L2=3, mu=5, delta=2)  # header does not fit
    with pytest.raises(ValueError):
        BulletParams(M=8, L=17, L1=4, L2=3, mu=7, delta=2)  # M - delta < mu
    with pytest.raises(ValueError):
        BulletParams(M=8, L=17, L1=4, L2=3, mu=4, delta=2, t=1)  # mu < delta + 2t + 1
    with pytest.raises(ValueError):
        BulletParams(M=8, L=17, L1=4, L2=3, mu=5, delta=2, s=1, t=1)  # s + 2t > delta
    BulletParams(M=8, L=17, L1=4, L2=3, mu=5, delta=2, s=1, t=1, kind=Kind.D)
    with pytest.raises(ValueError):
        BulletParams(M=4, L=12, L1=3, L2=1, mu=1, delta=2)  # delta (L1+1) > 2^L1 - 1


def test_size_formula_and_radices():
    for p in (MAIN, TOY, TOY_D):
        c = BulletCodec(p)
        assert c.size() == size_formula(p.M, p.L, p.L1, p.L2, p.mu, p.delta) == p.size()
        assert math.prod(c.radices) == c.size()


def test_encode_zero_message_passes_checker():
    c = BulletCodec(MAIN)
    S = c.encode(c.zero_message())
    assert len(S) == 8
    assert len({x[:4] for x in S}) == 8
    assert check_conditions(S, MAIN) == []


def test_checker_flags_each_clause():
    c = BulletCodec(MAIN)
    words = sorted(c.encode_index(12345), reverse=True)
    # flip a body bit: breaks the payload column only
    x = list(words[-1])
    x[-1] ^= 1
    bad = check_conditions(set(words[:-1]) | {tuple(x)}, MAIN)
    assert any(b.startswith("(3)") for b in bad)
    # clear the marker of u_1
    x = list(words[0])
    x[4] = 0
    bad = check_conditions(set(words[1:]) | {tuple(x)}, MAIN)
    assert any(b.startswith("(2a)") for b in bad)
    assert check_conditions(set(words[1:]), MAIN)[0].startswith("(1)")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, BulletCodec(MAIN).size() - 1))
def test_round_trip_and_checker(index):
    c = BulletCodec(MAIN)
    S = c.encode_index(index)
    assert check_conditions(S, MAIN) == []
    assert c.decode_index(S) == index
    assert c.message_index(c.message_from_index(index)) == index


def test_encode_is_injective_on_toy_codebook():
    c = BulletCodec(TOY)
    book = {c.encode_index(i) for i in range(c.size())}
    assert len(book) == c.size() == 70


def test_enumerated_size_matches_formula_m2():
    p = BulletParams(M=2, L=6, L1=2, L2=1, mu=1, delta=1, enforce_capability=False)
    members = sum(1 for r in range(math.comb(64, 2))
                  if not check_conditions(subset_unrank(r, 2, 6, 2), p))
    assert members == size_formula(2, 6, 2, 1, 1, 1) == BulletCodec(p).size() == 6


@pytest.mark.parametrize("p,spec", [(TOY, "1:0:•:L"), (TOY_D, "0:1:•:D")])
def test_exhaustive_ball_decodes(p, spec):
    c = BulletCodec(p)
    sp = ChannelSpec.parse(spec)
    for index in (0, 17, 69):
        S = c.encode_index(index)
        for out in error_ball(S, sp).members:
            assert c.decode_index(out) == index


def test_toy_codebook_is_correcting():
    for p, spec in [(TOY, "1:0:•:L"), (TOY_D, "0:1:•:D")]:
        c = BulletCodec(p)
        book = [c.encode_index(i) for i in range(c.size())]
        assert verify_correcting(book, ChannelSpec.parse(spec))


def test_beyond_capability_is_caught_by_oracle():
    p = BulletParams(M=4, L=8, L1=3, L2=1, mu=3, delta=1, s=0, t=1, kind=Kind.L,
                     enforce_capability=False)
    c = BulletCodec(p)
    v = verify_correcting([c.encode_index(i) for i in range(c.size())], ChannelSpec.parse("0:1:•:L"))
    assert not v
    i, j, shared = v.witness
    assert i != j


@pytest.mark.parametrize("args,trials", [((1, 1, 8, 23, Kind.D), 3000), ((1, 1, 16, 39, Kind.L), 1000)])
def test_random_round_trips(args, trials):
    p = bullet_params_for(*args)
    c = BulletCodec(p)
    sp = ChannelSpec(p.s, p.t, None, p.kind)
    rng = random.Random(2024)
    for _ in range(trials):
        i = rng.randrange(c.size())
        assert c.decode_index(corrupt(c.encode_index(i), sp, rng)) == i


def test_majority_tie_fails_loudly():
    c = BulletCodec(MAIN)
    S = sorted(c.encode_index(0), reverse=True)
    # keep only two marked words and make their parity fields disagree
    a, b = list(S[0]), list(S[1])
    b[4 + 3] ^= 1
    with pytest.raises(DecodeError):
        c.decode({tuple(a), tuple(b)})


def test_picked_parameters():
    p = bullet_params_for(0, 1, 16, 40)
    assert (p.delta, p.mu, p.L1, p.L2) == (2, 5, 8, 4)
    assert bullet_params_for(1, 0, 4, 11).mu == 3
    with pytest.raises(ValueError):
        bullet_params_for(0, 1, 6, 40)  # M < 3 delta + 1
    with pytest.raises(ValueError):
        bullet_params_for(0, 1, 16, 29)  # L below (2 delta + 3) log M + delta = 30
    assert delta_for(1, 2, Kind.L) == 5 and delta_for(1, 2, Kind.D) == 3


@pytest.mark.parametrize("s,t,M,L", [(1, 0, 4, 11), (0, 1, 8, 23), (1, 1, 16, 39)])
def test_picked_instance_redundancy_bound(s, t, M, L):
    p = bullet_params_for(s, t, M, L)
    c = BulletCodec(p)
    ratio = Fraction(math.comb(2 ** L, M), c.size())
    assert bullet_redundancy_bound(p.delta, M, L).ge_log2(ratio)
    assert ratio < 2 ** (3 * p.delta * L)
    assert c.redundancy_bits() == pytest.approx(math.log2(math.comb(2 ** L, M)) - math.log2(c.size()))


def test_params_json_round_trip():
    text = json.dumps(MAIN.to_json())
    assert load_params(text) == MAIN
    msg = BulletCodec(MAIN).message_from_index(99)
    assert BulletMessage.from_json(json.loads(json.dumps(msg.to_json()))) == msg


def test_message_range_checked():
    c = BulletCodec(TOY)
    with pytest.raises(ValueError):
        c.encode_index(c.size())
    with pytest.raises(ValueError):
        c.encode(BulletMessage(10 ** 9, (), ()))
