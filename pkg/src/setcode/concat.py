"""Concatenated set codes: an outer code against lost sequences, an inner block code per sequence.

The outer code (``OutcodeCodec``) survives up to s lost sequences.  Words
are (a_i, u_i) with L' address bits; the first bit of each of the first N
payloads (descending address order) spells the BCH parity of the address
set followed by its deletion hash.  Losing a word deletes one bit from
that column, which the hash repairs.  The payload column is a
Reed-Solomon codeword with s parity symbols.

``ConcatCodec`` wraps any outer set codec with an inner block code: every
sequence is encoded separately, and a sequence the inner decoder rejects
is treated as lost.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .algebra import BinaryBCH, DecodeFailure, bch_systematic, binary_bch, rs_code
from .channel import ChannelSpec, iter_ball
from .codec import DecodeError, SetCodec
from .core import (SequenceSet, bits_to_int, int_to_bits, mixed_radix_join, mixed_radix_split,
                   rank_subset, unrank_subset)
from .delhash import HashDecodeError, SystematicHash, systematic_hash


@dataclass(frozen=True)
class OutcodeParams:
    s: int
    M: int
    L_prime: int
    L_o: int

    def __post_init__(self):
        s, M, Lp, Lo = self.s, self.M, self.L_prime, self.L_o
        if s < 1 or M < 2 or Lp < 1:
            raise ValueError("need s >= 1, M >= 2, L' >= 1")
        if M >= 1 << Lp or M >= 1 << (Lo - Lp):
            raise ValueError(f"need log M < min(L', L_o - L') = {min(Lp, Lo - Lp)}")
        if M > (1 << (Lo - Lp)) - 1:
            raise ValueError("M exceeds the Reed-Solomon length limit")
        if s * (Lp + 1) > (1 << Lp) - 1:
            raise ValueError(f"s={s} too large for a BCH code on 2^{Lp} positions")

    @property
    def payload_len(self) -> int:
        return self.L_o - self.L_prime

    @property
    def enc_len(self) -> int:
        return self.s * (self.L_prime + 1)

    def to_json(self) -> dict:
        return {"family": "outcode", "s": self.s, "M": self.M, "L_prime": self.L_prime,
                "L_o": self.L_o}

    @classmethod
    def from_json(cls, d: dict) -> "OutcodeParams":
        return cls(int(d["s"]), int(d["M"]), int(d["L_prime"]), int(d["L_o"]))


@dataclass(frozen=True)
class OutcodeMessage:
    address_rank: int
    free: tuple

    def to_json(self) -> dict:
        return {"address_rank": str(self.address_rank), "free": list(self.free)}

    @classmethod
    def from_json(cls, d: dict) -> "OutcodeMessage":
        return cls(int(d["address_rank"]), tuple(d["free"]))


class OutcodeCodec(SetCodec):
    family = "outcode"

    def __init__(self, params: OutcodeParams, hash_: SystematicHash | None = None):
        p = params
        self.p = p
        self.q, self.L, self.M = 2, p.L_o, p.M
        self.hash = hash_ if hash_ is not None else systematic_hash(p.s, p.enc_len)
        if self.hash.n != p.enc_len or self.hash.eps < p.s:
            raise ValueError("hash must cover s deletions on the s(L'+1) parity bits")
        self.h = self.hash.h
        self.N = p.enc_len + self.h
        if self.N > p.M - p.s:
            raise ValueError(f"need s(L'+1) + h = {self.N} <= M - s = {p.M - p.s}")
        self.bch: BinaryBCH = bch_systematic(p.L_prime, p.s)
        self.rs = rs_code(p.payload_len, p.M, p.M - p.s)

    def __repr__(self) -> str:
        return f"OutcodeCodec({self.p}, h={self.h})"

    def size(self) -> int:
        p = self.p
        return math.comb(1 << p.L_prime, p.M) << (p.payload_len * (p.M - p.s) - self.N)

    @cached_property
    def radices(self) -> list:
        p = self.p
        n = p.payload_len
        return ([math.comb(1 << p.L_prime, p.M)] + [1 << (n - 1)] * self.N
                + [1 << n] * (p.M - p.s - self.N))

    def message_from_index(self, index: int) -> OutcodeMessage:
        self.check_index(index)
        d = mixed_radix_split(index, self.radices)
        return OutcodeMessage(d[0], tuple(d[1:]))

    def message_index(self, msg: OutcodeMessage) -> int:
        if len(msg.free) != self.p.M - self.p.s:
            raise ValueError(f"message needs {self.p.M - self.p.s} free payload values")
        return mixed_radix_join([msg.address_rank, *msg.free], self.radices)

    def pinned_bits(self, mask: int) -> tuple:
        """(BCH parity of the address set, its hash): the first-bit column."""
        enc = tuple(self.bch.parity_bits(mask))
        return self.hash.encode(enc)

    def encode(self, msg: OutcodeMessage) -> SequenceSet:
        p = self.p
        self.message_index(msg)  # range check
        ranks = unrank_subset(msg.address_rank, 1 << p.L_prime, p.M)
        mask = sum(1 << r for r in ranks)
        pins = self.pinned_bits(mask)
        n = p.payload_len
        u = [(pins[i] << (n - 1)) | f if i < self.N else f for i, f in enumerate(msg.free)]
        u += self.rs.parity(u)
        words = [int_to_bits((a << n) | ui, p.L_o) for a, ui in zip(sorted(ranks, reverse=True), u)]
        return SequenceSet(words, q=2, L=p.L_o)

    def decode(self, received) -> OutcodeMessage:
        p = self.p
        n = p.payload_len
        full = sorted({bits_to_int(x) for x in received if len(x) == p.L_o}, reverse=True)
        lost = p.M - len(full)
        if lost > p.s:
            raise DecodeError(f"{lost} sequences missing, more than s={p.s}")
        if lost < 0:
            raise DecodeError("more sequences than M")
        # step 1: the surviving first-bit column is the pinned column with `lost` deletions
        column = tuple((v >> (n - 1)) & 1 for v in full[: self.N - lost])
        try:
            enc = self.hash.decode(column)
        except HashDecodeError as e:
            raise DecodeError(f"address parity: {e}") from None
        par = sum(b << j for j, b in enumerate(enc[: self.bch.r]))
        # step 2: restore the address set (losses only clear bits)
        mask = 0
        for v in full:
            mask |= 1 << (v >> n)
        try:
            mask = self.bch.decode_int(mask, par)
        except DecodeFailure as e:
            raise DecodeError(f"address set: {e}") from None
        if mask.bit_count() != p.M:
            raise DecodeError("corrected address set has the wrong size")
        ranks = [r for r in range(1 << p.L_prime) if (mask >> r) & 1]
        addrs = ranks[::-1]
        # step 3: erasure decoding of the payload column
        by_addr: dict = {}
        for v in full:
            by_addr.setdefault(v >> n, []).append(v & ((1 << n) - 1))
        word, eras = [], []
        for i, a in enumerate(addrs):
            got = by_addr.get(a)
            if got is not None and len(got) == 1:
                word.append(got[0])
            else:
                word.append(0)
                eras.append(i)
        try:
            u = self.rs.decode_message(word, eras)
        except DecodeFailure as e:
            raise DecodeError(f"payload column: {e}") from None
        pins = self.pinned_bits(mask)
        free = []
        for i, ui in enumerate(u):
            if i < self.N:
                if ui >> (n - 1) != pins[i]:
                    raise DecodeError("decoded payload disagrees with the pinned column")
                ui &= (1 << (n - 1)) - 1
            free.append(ui)
        return OutcodeMessage(rank_subset(ranks), tuple(free))

    def to_json(self) -> dict:
        return self.p.to_json()


def check_outcode_conditions(S, codec: OutcodeCodec) -> list:
    """Violated clauses for S, recomputed with the generic polynomial encoder."""
    p = codec.p
    words = list(S)
    if len(words) != p.M or any(len(x) != p.L_o for x in words):
        return [f"(1) expected {p.M} words of length {p.L_o}"]
    rows = sorted(((bits_to_int(x[: p.L_prime]), x[p.L_prime:]) for x in words), reverse=True)
    if len({a for a, _ in rows}) != p.M:
        return ["(1) addresses are not distinct"]
    bad = []
    cv = [0] * (1 << p.L_prime)
    for a, _ in rows:
        cv[a] = 1
    enc = tuple(codec.bch.encode(cv)[codec.bch.k:])
    want = enc + codec.hash.bits(enc)
    got = tuple(u[0] for _, u in rows[: codec.N])
    if got != want:
        bad.append("(2) first-bit column differs from (parity, hash)")
    if not codec.rs.is_codeword([bits_to_int(u) for _, u in rows]):
        bad.append("(3) payload column is not a Reed-Solomon codeword")
    return bad


# --- inner block codes ---------------------------------------------------------

class InnerCode:
    """Block code mapping k bits to n symbols; ``decode`` raises DecodeError when it gives up."""

    k: int
    n: int

    def encode(self, bits) -> tuple:
        raise NotImplementedError

    def decode(self, word) -> tuple:
        raise NotImplementedError


class IdentityInner(InnerCode):
    def __init__(self, k: int):
        self.k = self.n = k

    def encode(self, bits) -> tuple:
        return tuple(bits)

    def decode(self, word) -> tuple:
        if len(word) != self.n:
            raise DecodeError("wrong length")
        return tuple(word)


class SubstitutionInner(InnerCode):
    """Systematic shortened binary BCH code correcting eps substitutions."""

    def __init__(self, k: int, eps: int):
        self.eps = eps
        self.code = binary_bch(k, eps)
        self.k, self.n = k, k + self.code.r

    def __repr__(self) -> str:
        return f"SubstitutionInner([{self.n}, {self.k}], eps={self.eps})"

    def encode(self, bits) -> tuple:
        bits = tuple(bits)
        msg = sum(b << i for i, b in enumerate(bits))
        p = self.code.parity_int(msg)
        return bits + tuple((p >> j) & 1 for j in range(self.code.r))

    def decode(self, word) -> tuple:
        if len(word) != self.n:
            raise DecodeError("wrong length")
        msg = sum(b << i for i, b in enumerate(word[: self.k]))
        par = sum(b << j for j, b in enumerate(word[self.k:]))
        try:
            m = self.code.decode_int(msg, par)
        except DecodeFailure as e:
            raise DecodeError(str(e)) from None
        return tuple((m >> i) & 1 for i in range(self.k))


class DeletionInner(InnerCode):
    """(c, Hash(c)) words correcting eps deletions; full-length words are trusted as is."""

    def __init__(self, k: int, eps: int):
        self.eps = eps
        self.hash = systematic_hash(eps, k)
        self.k, self.n = k, self.hash.length

    def __repr__(self) -> str:
        return f"DeletionInner(k={self.k}, n={self.n}, eps={self.eps})"

    def encode(self, bits) -> tuple:
        return self.hash.encode(bits)

    def decode(self, word) -> tuple:
        word = tuple(word)
        if len(word) == self.n:
            return word[: self.k]
        try:
            return self.hash.decode(word)
        except HashDecodeError as e:
            raise DecodeError(str(e)) from None


class ConcatCodec(SetCodec):
    """Outer set code over k-bit words, each word passed through the inner code."""

    def __init__(self, outer: SetCodec, inner: InnerCode, family: str = "concat"):
        if outer.L != inner.k:
            raise ValueError(f"inner dimension {inner.k} differs from outer length {outer.L}")
        self.outer, self.inner = outer, inner
        self.q, self.L, self.M = 2, inner.n, outer.M
        self.family = family

    def __repr__(self) -> str:
        return f"ConcatCodec({self.outer!r}, {self.inner!r})"

    def size(self) -> int:
        return self.outer.size()

    def message_from_index(self, index: int):
        return self.outer.message_from_index(index)

    def message_index(self, msg) -> int:
        return self.outer.message_index(msg)

    def encode(self, msg) -> SequenceSet:
        return SequenceSet((self.inner.encode(x) for x in self.outer.encode(msg)),
                           q=2, L=self.L)

    def decode(self, received):
        inner_ok = []
        for y in received:
            try:
                inner_ok.append(self.inner.decode(y))
            except DecodeError:
                continue  # counts as a lost sequence
        return self.outer.decode(frozenset(inner_ok))

    def to_json(self) -> dict:
        d = self.outer.to_json()
        d["family"] = self.family
        return d


class ListCodec(SetCodec):
    """Explicit codebook decoded by table lookup over its error balls.

    The message of codeword i is the int i.  Construction enumerates every
    ball and fails if two of them meet, so a ListCodec is always correcting
    for ``spec``.
    """

    family = "list"

    def __init__(self, codewords: list, spec: ChannelSpec, q: int = 2, budget: int | None = None):
        if not codewords:
            raise ValueError("empty codebook")
        self.codewords = [SequenceSet(c, q=q) for c in codewords]
        self.q, self.L, self.M = q, self.codewords[0].L, self.codewords[0].M
        self.spec = spec
        self._table: dict = {}
        for i, c in enumerate(self.codewords):
            for out in iter_ball(c, spec, q, budget):
                j = self._table.setdefault(out, i)
                if j != i:
                    raise ValueError(f"codewords {j} and {i} share the output {sorted(out)}")

    def size(self) -> int:
        return len(self.codewords)

    def message_from_index(self, index: int) -> int:
        self.check_index(index)
        return index

    def message_index(self, msg: int) -> int:
        self.check_index(msg)
        return msg

    def encode(self, msg: int) -> SequenceSet:
        return self.codewords[self.message_index(msg)]

    def decode(self, received) -> int:
        try:
            return self._table[frozenset(received)]
        except KeyError:
            raise DecodeError("received set is in no codeword's error ball") from None


def concat_substitution(outer: SetCodec, eps: int) -> ConcatCodec:
    return ConcatCodec(outer, SubstitutionInner(outer.L, eps), family="concat-S")


def concat_deletion(outer: SetCodec, eps: int) -> ConcatCodec:
    return ConcatCodec(outer, DeletionInner(outer.L, eps), family="concat-D")
