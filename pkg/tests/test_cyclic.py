import itertools
import json
import pathlib
import random

import pytest

from oracles import binary_min_distance, rs_beyond_radius_is_never_silent, rs_errors_erasures
from setcode.algebra import (BinaryBCH, DecodeFailure, bch_systematic, binary_bch, field_code,
                             gf2m, rs_code, rs_decode)
from setcode.noloss import inner_bch

GOLDEN = json.loads((pathlib.Path(__file__).parent / "golden" / "codes.json").read_text())


def _gf_dot(F, row, col):
    acc = 0
    for a, b in zip(row, col):
        acc ^= F.mul(a, b)
    return acc


def test_rs_identity_code():
    c = rs_code(4, 6, 6)
    assert c.d == 1 and c.r == 0
    assert c.encode([1, 2, 3, 4, 5, 6]) == [1, 2, 3, 4, 5, 6]


def test_rs_8_6_over_gf_8192():
    c = rs_code(13, 8, 6)
    assert (c.n, c.k, c.d) == (8, 6, 3)
    rng = random.Random(1)
    msg = [rng.randrange(8192) for _ in range(6)]
    cw = c.encode(msg)
    for pos in range(8):
        w = list(cw)
        w[pos] ^= 77
        assert rs_decode(c, w) == msg
    for eras in itertools.combinations(range(8), 2):
        w = [None if i in eras else v for i, v in enumerate(cw)]
        assert rs_decode(c, w, erasures=eras) == msg


def test_rs_two_errors_at_distance_three_never_silent():
    assert rs_beyond_radius_is_never_silent(rs_code(13, 8, 6), 2) == 28


def test_rs_length_limit():
    with pytest.raises(ValueError):
        rs_code(3, 8, 4)


def test_rs_errors_and_erasures_exhaustive_gf8():
    # every position pattern, every nonzero error value
    assert rs_errors_erasures(rs_code(3, 7, 3), codewords=2, all_values=True) > 0


def test_rs_errors_and_erasures_small_lengths():
    for n, k in [(5, 3), (6, 2), (9, 5)]:
        rs_errors_erasures(rs_code(4, n, k), codewords=2, seed=n)


def test_rs_erasure_budget():
    c = rs_code(4, 6, 4)
    with pytest.raises(DecodeFailure):
        rs_decode(c, c.encode([1, 2, 3, 4]), erasures=(0, 1, 2), max_erasures=2)


def test_generator_rows_are_codewords_and_orthogonal_to_h():
    for code in [rs_code(4, 10, 6), bch_systematic(4, 2), bch_systematic(3, 1), binary_bch(20, 2)]:
        G = code.generator_matrix()
        H = code.parity_check_matrix()
        assert len(G) == code.k
        for i, row in enumerate(G):
            assert row[: code.k] == [int(j == i) for j in range(code.k)]
            assert code.is_codeword(row)
            els = [code.sym_to_el(v) for v in row]
            assert all(_gf_dot(code.F, h, els) == 0 for h in H)


def test_message_re_extraction():
    rng = random.Random(5)
    code = rs_code(5, 12, 7)
    for _ in range(50):
        msg = [rng.randrange(32) for _ in range(7)]
        assert code.message(code.encode(msg)) == msg


def test_bch_systematic_parameters():
    c = bch_systematic(4, 2)
    assert (c.n, c.k, c.d) == (26, 16, 5)
    assert bch_systematic(3, 1).n == 8 + 4
    with pytest.raises(ValueError):
        bch_systematic(4, 4)  # 4 > 15/5
    with pytest.raises(ValueError):
        bch_systematic(3, 2)


@pytest.mark.parametrize("ell,delta", [(2, 1), (3, 1), (4, 1), (4, 2), (4, 3)])
def test_bch_systematic_min_distance_enumerated(ell, delta):
    code = bch_systematic(ell, delta)
    assert binary_min_distance(code) >= 2 * delta + 1
    assert code.table_is_sound()


def test_min_distance_generic_path_agrees():
    code = bch_systematic(3, 1)
    assert code.min_distance_exhaustive() == binary_min_distance(code) >= 3


def test_binary_bch_corrects_up_to_t():
    code = bch_systematic(4, 2)
    rng = random.Random(3)
    for _ in range(30):
        msg = rng.getrandbits(16)
        par = code.parity_int(msg)
        for pos in itertools.combinations(range(code.n_eff), 2):
            m2, p2 = msg, par
            for p in pos:
                if p < 16:
                    m2 ^= 1 << p
                else:
                    p2 ^= 1 << (p - 16)
            assert code.decode_int(m2, p2) == msg


def test_decode_int_table_and_algebraic_paths_agree():
    code = binary_bch(24, 2)
    rng = random.Random(9)
    for _ in range(40):
        msg = rng.getrandbits(24)
        par = code.parity_int(msg)
        flips = rng.sample(range(code.n_eff), 2)
        word = [(msg >> i) & 1 for i in range(24)] + [(par >> j) & 1 for j in range(code.r)]
        m2, p2 = msg, par
        for p in flips:
            word[p] ^= 1
            if p < 24:
                m2 ^= 1 << p
            else:
                p2 ^= 1 << (p - 24)
        assert code.decode_int(m2, p2) == msg
        fixed = code.decode(word + [0] * (code.parity_len - code.r))
        assert sum(b << i for i, b in enumerate(fixed[:24])) == msg


def test_field_code_is_rs_when_it_fits():
    c = field_code(5, 3, 1)
    assert (c.n, c.k, c.b, c.m) == (3, 1, 5, 5)
    c = field_code(2, 10, 1)  # longer than GF(4) allows: BCH over GF(4) in GF(16)
    assert c.b == 2 and c.m == 4 and c.n == 10
    assert c.min_distance_exhaustive() >= 3


def test_golden_generators_are_pinned():
    assert bch_systematic(4, 2).to_json() == GOLDEN["bch_systematic_4_2"]
    assert bch_systematic(3, 1).to_json() == GOLDEN["bch_systematic_3_1"]
    assert inner_bch(19, 1).to_json() == GOLDEN["inner_bch_19_1"]
    assert rs_code(13, 8, 6).to_json() == GOLDEN["rs_13_8_6"]
    assert GOLDEN["rs_13_8_6"]["field"]["modulus"] == hex(gf2m(13).modulus)


def test_parity_padding():
    c = BinaryBCH(5, 16, 5, parity_len=12)
    assert c.r == 10 and c.n == 28
    word = c.encode([1] * 16)
    assert word[-2:] == [0, 0] and c.is_codeword(word)
    word[-1] = 1
    assert not c.is_codeword(word)
