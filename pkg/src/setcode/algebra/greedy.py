"""Greedy and exhaustive combinatorial codes: address codes and constant-weight codes."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from ..core import int_to_bits, seq_rank


def ball_volume(n: int, radius: int) -> int:
    return sum(math.comb(n, i) for i in range(radius + 1))


def gv_product_bound(L_prime: int, M: int, eps: int) -> int:
    """prod_{i=2}^{M} (2^L' - (i-1) Q), Q the radius-2eps Hamming ball volume.

    Positive exactly when the greedy address code is guaranteed to reach M
    words; divided by (M-1)! it lower-bounds the size of the address family.
    """
    Q = ball_volume(L_prime, 2 * eps)
    out = 1
    for i in range(2, M + 1):
        f = (1 << L_prime) - (i - 1) * Q
        if f <= 0:
            return 0
        out *= f
    return out


@dataclass(frozen=True)
class AddressCode:
    """Binary words of length ``L_prime``, first word all-ones, pairwise distance >= min_distance."""

    L_prime: int
    words: tuple
    min_distance: int

    def __post_init__(self):
        if self.words and self.words[0] != (1,) * self.L_prime:
            raise ValueError("the first address must be the all-ones word")
        for x, y in itertools.combinations(self.words, 2):
            if sum(a != b for a, b in zip(x, y)) < self.min_distance:
                raise ValueError(f"addresses {x} and {y} are too close")


def gv_address_code(L_prime: int, M: int, eps: int) -> AddressCode:
    """Greedy address code: all-ones first, then least-rank admissible words."""
    d = 2 * eps + 1
    ones = (1 << L_prime) - 1
    chosen = [ones]
    for v in range(1 << L_prime):
        if len(chosen) == M:
            break
        if all((v ^ c).bit_count() >= d for c in chosen):
            chosen.append(v)
    if len(chosen) < M:
        raise ValueError(f"greedy search found only {len(chosen)} of {M} addresses "
                         f"at distance {d} in length {L_prime}")
    return AddressCode(L_prime, tuple(int_to_bits(v, L_prime) for v in chosen), d)


class AddressFamily:
    """All M-sets of binary L'-words containing the all-ones word with pairwise distance >= 2eps+1.

    Members are enumerated once, in a fixed order (lexicographic on the
    sorted rank tuple of the non-ones words), so ``index``/``member`` give a
    bijection with range(len(family)).  Enumeration is exponential; the
    budget guards against accidental large instances.
    """

    def __init__(self, L_prime: int, M: int, eps: int, budget: int = 10**7):
        self.L_prime, self.M, self.eps = L_prime, M, eps
        self.d = 2 * eps + 1
        ones = (1 << L_prime) - 1
        cand = [v for v in range(1 << L_prime) if v != ones and (v ^ ones).bit_count() >= self.d]
        members = []
        steps = 0

        def dfs(start, picked):
            nonlocal steps
            if len(picked) == M - 1:
                members.append(tuple(picked))
                return
            for j in range(start, len(cand)):
                v = cand[j]
                steps += 1
                if steps > budget:
                    raise RuntimeError("address family enumeration exceeded its budget")
                if all((v ^ w).bit_count() >= self.d for w in picked):
                    picked.append(v)
                    dfs(j + 1, picked)
                    picked.pop()

        if M >= 1:
            dfs(0, [])
        self._members = members
        self._index = {m: i for i, m in enumerate(members)}

    def __len__(self) -> int:
        return len(self._members)

    def member(self, i: int) -> list:
        """Address set number i as words in descending order (all-ones first)."""
        if not 0 <= i < len(self._members):
            raise ValueError(f"address index {i} out of range [0, {len(self._members)})")
        ranks = sorted(((1 << self.L_prime) - 1,) + self._members[i], reverse=True)
        return [int_to_bits(v, self.L_prime) for v in ranks]

    def index(self, words) -> int:
        ones = (1 << self.L_prime) - 1
        ranks = sorted(seq_rank(w) for w in words)
        if ones not in ranks:
            raise ValueError("address set lacks the all-ones word")
        ranks.remove(ones)
        try:
            return self._index[tuple(ranks)]
        except KeyError:
            raise ValueError("not a member of the address family") from None


def constant_weight_greedy(n: int, w: int, d: int, budget: int = 10**7) -> list:
    """Greedy constant-weight code: weight-w words of length n (rank order), pairwise distance >= d.

    Words are returned as int masks (bit i = position i) wrapped in
    CharacteristicVector objects.
    """
    from ..core import CharacteristicVector

    total = math.comb(n, w)
    if total > budget:
        raise RuntimeError(f"C({n},{w}) = {total} exceeds the enumeration budget")
    chosen = []
    work = 0
    for pos in itertools.combinations(range(n), w):
        mask = 0
        for p in pos:
            mask |= 1 << p
        work += len(chosen)
        if work > budget * 10:
            raise RuntimeError("constant-weight greedy exceeded its budget")
        if all((mask ^ c).bit_count() >= d for c in chosen):
            chosen.append(mask)
    return [CharacteristicVector(n, m) for m in chosen]
