"""Sequences over Z_q, sets of sequences, and the orderings shared by every codec.

A sequence is a plain ``tuple`` of ints.  Codewords are :class:`SequenceSet`
instances (a validated ``frozenset``), channel outputs are ordinary
``frozenset`` objects because they may mix lengths.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence as _Seq

Sequence = tuple  # tuple[int, ...]


class Order(enum.Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"


def seq_rank(x: _Seq[int], q: int = 2) -> int:
    """Integer value of ``x`` read base ``q`` with the first symbol most significant."""
    r = 0
    for a in x:
        r = r * q + a
    return r


def seq_unrank(r: int, q: int, L: int) -> tuple:
    if not 0 <= r < q**L:
        raise ValueError(f"rank {r} out of range for q={q}, L={L}")
    out = [0] * L
    for i in range(L - 1, -1, -1):
        r, out[i] = divmod(r, q)
    return tuple(out)


def bits_to_int(bits: _Seq[int]) -> int:
    return seq_rank(bits, 2)


def int_to_bits(v: int, n: int) -> tuple:
    return tuple((v >> (n - 1 - i)) & 1 for i in range(n))


class SequenceSet(frozenset):
    """An M-set of distinct length-L words over Z_q.

    Equality and hashing are those of ``frozenset``, so a SequenceSet compares
    equal to a channel output holding the same words.
    """

    q: int
    L: int

    def __new__(cls, elements: Iterable[_Seq[int]] = (), q: int = 2, L: int | None = None):
        elems = [tuple(int(a) for a in x) for x in elements]
        self = super().__new__(cls, elems)
        if q < 2:
            raise ValueError("alphabet size must be at least 2")
        if not self:
            raise ValueError("a SequenceSet needs at least one element")
        if len(self) != len(elems):
            raise ValueError("elements are not distinct")
        lengths = {len(x) for x in self}
        if L is None:
            if len(lengths) != 1:
                raise ValueError("elements have different lengths")
            L = lengths.pop()
        elif lengths != {L}:
            raise ValueError(f"all elements must have length {L}")
        if L <= 0:
            raise ValueError("sequences must be non-empty")
        for x in self:
            if min(x) < 0 or max(x) >= q:
                raise ValueError(f"symbol out of range for q={q}: {x}")
        self.q = q
        self.L = L
        return self

    def __reduce__(self):
        return (SequenceSet, (list(self), self.q, self.L))

    def __repr__(self) -> str:
        body = ", ".join("".join(map(str, x)) if self.q <= 10 else str(x)
                         for x in self.sorted())
        return f"SequenceSet(q={self.q}, L={self.L}, {{{body}}})"

    @property
    def M(self) -> int:
        return len(self)

    def sorted(self, order: Order = Order.DESCENDING) -> list:
        return sort_set(self, order)


def sort_set(S: Iterable[_Seq[int]], order: Order = Order.DESCENDING) -> list:
    """Elements of ``S`` in lexicographic order (larger symbol = larger word)."""
    return sorted(S, reverse=order is Order.DESCENDING)


@dataclass(frozen=True)
class CharacteristicVector:
    """Indicator of a subset of Z_q^L; position i <-> word of rank i.

    Stored as an int bitmask: bit i of ``mask`` is position i.
    """

    length: int
    mask: int

    @property
    def weight(self) -> int:
        return self.mask.bit_count()

    @property
    def bits(self) -> list:
        return [(self.mask >> i) & 1 for i in range(self.length)]

    def positions(self) -> list:
        m, out, i = self.mask, [], 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return out

    def to_set(self, q: int, L: int) -> SequenceSet:
        if self.length != q**L:
            raise ValueError("length does not match q**L")
        return SequenceSet((seq_unrank(r, q, L) for r in self.positions()), q=q, L=L)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def char_vector(S: Iterable[_Seq[int]], q: int = 2, L: int | None = None) -> CharacteristicVector:
    if L is None:
        L = S.L  # type: ignore[attr-defined]
    mask = 0
    for x in S:
        mask |= 1 << seq_rank(x, q)
    return CharacteristicVector(q**L, mask)


# --- combinatorial number system -------------------------------------------

def rank_subset(ranks: Iterable[int]) -> int:
    """Colex rank of a set of distinct non-negative integers."""
    return sum(math.comb(c, i) for i, c in enumerate(sorted(ranks), start=1))


def unrank_subset(r: int, N: int, M: int) -> list:
    """Inverse of :func:`rank_subset` restricted to M-subsets of range(N)."""
    if not 0 <= r < math.comb(N, M):
        raise ValueError(f"subset rank {r} out of range [0, C({N},{M}))")
    out = []
    hi = N
    for i in range(M, 0, -1):
        # largest c < hi with C(c, i) <= r
        lo_c, hi_c = i - 1, hi - 1
        while lo_c < hi_c:
            mid = (lo_c + hi_c + 1) // 2
            if math.comb(mid, i) <= r:
                lo_c = mid
            else:
                hi_c = mid - 1
        out.append(lo_c)
        r -= math.comb(lo_c, i)
        hi = lo_c
    return out[::-1]


def subset_rank(A: Iterable[_Seq[int]], q: int = 2) -> int:
    return rank_subset(seq_rank(x, q) for x in A)


def subset_unrank(r: int, q: int, L: int, M: int) -> SequenceSet:
    return SequenceSet((seq_unrank(c, q, L) for c in unrank_subset(r, q**L, M)), q=q, L=L)


# --- mixed radix ------------------------------------------------------------

def mixed_radix_split(value: int, radices: _Seq[int]) -> list:
    """Digits of ``value`` for the given radices, first radix most significant."""
    digits = []
    for b in reversed(radices):
        value, d = divmod(value, b)
        digits.append(d)
    if value:
        raise ValueError("value exceeds the mixed-radix range")
    return digits[::-1]


def mixed_radix_join(digits: _Seq[int], radices: _Seq[int]) -> int:
    v = 0
    for d, b in zip(digits, radices):
        if not 0 <= d < b:
            raise ValueError(f"digit {d} out of range for radix {b}")
        v = v * b + d
    return v


# --- set files ----------------------------------------------------------------

def format_set(S: Iterable[_Seq[int]], q: int, L: int) -> str:
    """Serialize a set: header ``q L M`` then one word per line, descending order.

    Channel outputs may contain words whose length differs from L; they are
    written as-is (an empty word is an empty line).
    """
    words = sorted(S, key=lambda x: (len(x), x), reverse=True)
    lines = [f"{q} {L} {len(words)}"]
    lines += [" ".join(map(str, x)) for x in words]
    return "\n".join(lines) + "\n"


def parse_set(text: str, strict: bool = True):
    """Parse :func:`format_set` output; returns ``(q, L, words)``.

    With ``strict`` the words must form a valid :class:`SequenceSet`, which is
    returned in place of the raw frozenset.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError("empty set file")
    try:
        q, L, M = (int(v) for v in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad header line: {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != M:
        raise ValueError(f"header announces {M} words, found {len(body)}")
    words = [tuple(int(v) for v in ln.split()) for ln in body]
    if strict:
        return q, L, SequenceSet(words, q=q, L=L)
    out = frozenset(words)
    if len(out) != len(words):
        raise ValueError("duplicate words in set file")
    return q, L, out


def iter_words(q: int, L: int) -> Iterator[tuple]:
    """All words of Z_q^L in ascending rank order."""
    import itertools

    return itertools.product(range(q), repeat=L)


def hamming(x: _Seq[int], y: _Seq[int]) -> int:
    return sum(a != b for a, b in zip(x, y)) + abs(len(x) - len(y))
