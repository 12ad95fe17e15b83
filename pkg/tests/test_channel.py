import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setcode.channel import (BudgetExceeded, ChannelSpec, Kind, canonical_output, corrupt,
                             deletion_ball, edit_ball, error_ball, magnitude_ball,
                             substitution_ball, verify_correcting)
from setcode.core import SequenceSet


def spec(text):
    return ChannelSpec.parse(text)


def test_parse_and_format_round_trip():
    for text in ["0:1:•:L", "1:0:0:S", "0:1:1:LM:1:0", "2:3:2:D"]:
        assert str(spec(text)) == text
    assert spec("0:1:*:S").bullet
    with pytest.raises(ValueError):
        spec("0:1:1:Q")
    with pytest.raises(ValueError):
        spec("0:1:1:LM:0:0")
    with pytest.raises(ValueError):
        spec("-1:0:0:S")


def test_identity_channel():
    S = SequenceSet([(0, 1, 1), (1, 0, 0)])
    for seed in range(20):
        assert corrupt(S, spec("0:0:0:S"), seed) == S


def test_loss_only_output():
    S = SequenceSet([(0, 1), (1, 0)])
    for seed in range(50):
        out = corrupt(S, spec("1:0:0:S"), seed)
        assert out <= S and len(out) in (1, 2)


def test_single_deletion_output():
    S = SequenceSet([(0, 1, 1), (1, 0, 0)])
    ball = error_ball(S, spec("0:1:1:D"))
    for seed in range(100):
        out = corrupt(S, spec("0:1:1:D"), seed)
        assert out in ball
        short = [x for x in out if len(x) != 3]
        assert len(short) <= 1 and all(len(x) == 2 for x in short)


def test_error_ball_examples():
    S = SequenceSet([(0, 0), (1, 1)])
    assert error_ball(S, spec("0:0:0:S")).members == {frozenset(S)}
    assert error_ball(S, spec("1:0:0:S")).members == {
        frozenset(S), frozenset({(0, 0)}), frozenset({(1, 1)})}
    one = error_ball(SequenceSet([(0, 0)]), spec("0:1:1:S")).members
    assert one == {frozenset({(0, 0)}), frozenset({(1, 0)}), frozenset({(0, 1)})}


def test_verify_examples():
    a, b = SequenceSet([(0, 0)]), SequenceSet([(1, 1)])
    v = verify_correcting([a, a], spec("0:0:0:S"))
    assert not v and v.witness[2] == frozenset(a)
    v = verify_correcting([a, b], spec("0:1:1:S"))
    assert not v
    assert v.witness[2] in ({(0, 1)}, {(1, 0)})
    assert verify_correcting([SequenceSet([(0, 0, 0)]), SequenceSet([(1, 1, 1)])], spec("0:1:1:S"))


def test_budget_is_explicit():
    S = SequenceSet([(0, 0, 0, 0), (1, 1, 1, 1)])
    with pytest.raises(BudgetExceeded):
        error_ball(S, spec("0:2:•:S"), budget=100)


def test_spec_needs_room():
    with pytest.raises(ValueError):
        corrupt(SequenceSet([(0, 1)]), spec("1:1:0:S"), 0)


def test_single_sequence_balls():
    x = (0, 1, 1, 0)
    assert len(substitution_ball(x, 2, 1)) == 5
    assert deletion_ball(x, 1) == {x, (1, 1, 0), (0, 1, 0), (0, 1, 1)}
    assert substitution_ball(x, 2, 1) <= edit_ball(x, 2, 2)
    assert magnitude_ball((0, 3), 4, 1, 1, 0) == {(0, 3), (1, 3)}


SMALL_SETS = st.sets(st.tuples(*[st.integers(0, 1)] * 4), min_size=2, max_size=3)


@settings(max_examples=40, deadline=None)
@given(SMALL_SETS, st.sampled_from(["1:1:1:S", "0:1:2:D", "1:1:1:L", "0:2:1:S", "0:1:•:L",
                                    "1:1:•:D", "0:1:•:S"]), st.integers(0, 10 ** 6))
def test_corrupt_lands_in_ball(S, text, seed):
    sp = spec(text)
    ball = error_ball(S, sp, q=2)
    rng = random.Random(seed)
    for _ in range(25):
        out = corrupt(S, sp, rng, q=2)
        assert canonical_output(out, 4, sp) in ball


def test_corrupt_lands_in_ball_limited_magnitude():
    S = SequenceSet([(0, 3, 2), (1, 1, 1), (3, 3, 0)], q=4)
    sp = spec("1:1:2:LM:1:1")
    ball = error_ball(S, sp)
    rng = random.Random(0)
    for _ in range(2000):
        assert corrupt(S, sp, rng) in ball


@settings(max_examples=25, deadline=None)
@given(SMALL_SETS)
def test_ball_monotone_and_kind_nesting(S):
    def members(text):
        return error_ball(S, spec(text), q=2).members

    for kind in "SDL":
        assert members(f"0:1:1:{kind}") <= members(f"1:1:1:{kind}")
        assert members(f"0:1:1:{kind}") <= members(f"0:2:1:{kind}")
        assert members(f"0:1:1:{kind}") <= members(f"0:1:2:{kind}")
    assert members("1:1:1:S") <= members("1:1:1:L")
    assert members("1:1:1:D") <= members("1:1:1:L")
    for out in members("1:1:2:D"):
        assert all(4 - 2 <= len(x) <= 4 for x in out)
        assert 2 - 2 <= len(out) <= len(S)


def test_ball_cardinalities_stay_in_range():
    S = SequenceSet([(0, 0, 1), (0, 1, 0), (1, 1, 1)])
    for text in ["1:1:1:S", "1:1:1:D", "0:2:1:L"]:
        sp = spec(text)
        for out in error_ball(S, sp).members:
            assert len(S) - sp.s - sp.t <= len(out) <= len(S)
        # punctured subsets are always present
        for j in range(sp.s + sp.t + 1):
            for keep in itertools.combinations(sorted(S), len(S) - j):
                if j <= sp.s:
                    assert frozenset(keep) in error_ball(S, sp)


def test_corrupt_is_deterministic():
    S = SequenceSet([(0, 0, 1, 1), (0, 1, 0, 1), (1, 1, 1, 0)])
    sp = spec("1:1:2:L")
    assert [corrupt(S, sp, s) for s in range(30)] == [corrupt(S, sp, s) for s in range(30)]


def test_kind_enum():
    assert Kind("LM") is Kind.LM
