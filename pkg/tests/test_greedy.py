import itertools
import math

import pytest

from setcode.algebra import AddressFamily, constant_weight_greedy, gv_address_code, gv_product_bound
from setcode.core import hamming


def test_address_code_examples():
    A = gv_address_code(6, 4, 1)
    assert A.words[0] == (1,) * 6 and len(A.words) == 4
    assert all(hamming(x, y) >= 3 for x, y in itertools.combinations(A.words, 2))
    assert gv_address_code(5, 1, 2).words == ((1,) * 5,)
    B = gv_address_code(3, 8, 0)
    assert len(set(B.words)) == 8 and B.words[0] == (1, 1, 1)


def test_address_code_greedy_exhaustion():
    with pytest.raises(ValueError):
        gv_address_code(3, 3, 1)  # only two words at distance 3 in length 3


def test_gv_product_bound_predicts_success():
    for Lp in range(3, 8):
        for M in range(2, 6):
            for eps in range(0, 2):
                if gv_product_bound(Lp, M, eps) > 0:
                    assert len(gv_address_code(Lp, M, eps).words) == M


def test_address_family_bijection():
    fam = AddressFamily(5, 3, 1)
    assert len(fam) > 0
    seen = set()
    for i in range(len(fam)):
        words = fam.member(i)
        assert words[0] == (1,) * 5
        assert words == sorted(words, reverse=True)
        assert all(hamming(x, y) >= 3 for x, y in itertools.combinations(words, 2))
        assert fam.index(words) == i
        seen.add(tuple(words))
    # brute-force count of all valid sets containing the all-ones word
    others = [w for w in itertools.product((0, 1), repeat=5) if w != (1,) * 5]
    brute = sum(1 for pair in itertools.combinations(others, 2)
                if all(hamming(x, y) >= 3 for x, y in itertools.combinations(pair + ((1,) * 5,), 2)))
    assert len(seen) == brute == len(fam)


def test_constant_weight_examples():
    assert len(constant_weight_greedy(6, 3, 1)) == math.comb(6, 3)
    words = constant_weight_greedy(8, 2, 3)
    masks = [w.mask for w in words]
    assert all(w.weight == 2 for w in words)
    assert all((a ^ b).bit_count() >= 3 for a, b in itertools.combinations(masks, 2))
    assert len(words) == 4  # disjoint pairs: weight-2 words at distance >= 3 must be disjoint
    only = constant_weight_greedy(5, 5, 3)
    assert [w.mask for w in only] == [0b11111]
