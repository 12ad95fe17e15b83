import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import deletion_hash_sound, deletion_sweep
from setcode.core import int_to_bits
from setcode.delhash import (ColoringHash, HashDecodeError, SystematicHash, VTHash, bf_hash,
                             del_decode, deletions_exact, hash_bits, supersequences,
                             systematic_hash, vt_hash)


def test_vt_examples():
    assert vt_hash((0,) * 6) == (0, 0)
    assert vt_hash((1, 0, 1, 0)) == (4, 0)


@pytest.mark.parametrize("n", range(1, 13))
def test_vt_hash_length(n):
    assert VTHash(n).h == math.ceil(math.log2(n + 1)) + 1


@pytest.mark.parametrize("n", range(1, 9))
def test_vt_single_deletion_exhaustive(n):
    deletion_sweep(VTHash(n), n, 1)


def test_vt_decode_known_case():
    h = VTHash(4)
    assert h.decode((1, 1, 0), h((1, 0, 1, 0))) == (1, 0, 1, 0)


def _brute_decode(c_prime, value, hash_, n):
    return [c for c in supersequences(tuple(c_prime), n) if hash_(c) == value]


@given(st.integers(0, 2 ** 9 - 1), st.integers(0, 8))
def test_vt_fast_decode_agrees_with_brute_force(v, pos):
    c = int_to_bits(v, 9)
    y = c[:pos] + c[pos + 1:]
    h = VTHash(9)
    assert _brute_decode(y, h(c), h, 9) == [h.decode(y, h(c))]


def test_bf_hash_eps_zero():
    assert bf_hash(0, 6).h == 0


@pytest.mark.parametrize("n", range(2, 11))
def test_bf_hash_single_deletion_sound(n):
    h = bf_hash(1, n)
    assert h.is_sound()
    deletion_hash_sound(h, n, 1)


def test_bf_hash_two_deletions_n8_decodes():
    h = bf_hash(2, 8)
    assert deletion_sweep(h, 8, 2) > 0


def test_bf_hash_cache_round_trip(tmp_path):
    a = bf_hash(2, 7, cache_dir=str(tmp_path))
    path = tmp_path / "delhash_e2_n7.bin"
    assert path.exists()
    b = bf_hash(2, 7, cache_dir=str(tmp_path))
    assert all(a(int_to_bits(v, 7)) == b(int_to_bits(v, 7)) for v in range(128))
    c = ColoringHash.load(str(path))
    assert (c.eps, c.n, c.h) == (2, 7, a.h)


def test_decode_errors():
    h = VTHash(5)
    with pytest.raises(HashDecodeError):
        h.decode((1, 0, 1), 0)
    with pytest.raises(HashDecodeError):
        bf_hash(2, 6).decode((1,), 0)


def test_full_length_is_trusted():
    h = bf_hash(2, 6)
    assert del_decode((1, 0, 1, 1, 0, 0), 3, h) == (1, 0, 1, 1, 0, 0)


def test_hash_bits_little_endian():
    assert hash_bits(0b1101, 5) == (1, 0, 1, 1, 0)


def test_supersequences_oracle():
    sup = supersequences((1, 0), 3)
    assert sup == {s for s in (int_to_bits(v, 3) for v in range(8)) if (1, 0) in deletions_exact(s, 1)}


@pytest.mark.parametrize("eps,n", [(1, 6), (1, 9), (2, 6)])
def test_systematic_hash(eps, n):
    h = systematic_hash(eps, n)
    assert isinstance(h, SystematicHash) and h.is_sound()
    for v in range(0, 1 << n, 7):
        c = int_to_bits(v, n)
        w = h.encode(c)
        assert len(w) == h.length and w[:n] == c
        for k in range(eps + 1):
            for y in deletions_exact(w, k):
                assert h.decode(y) == c
