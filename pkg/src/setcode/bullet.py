"""Codes against lost sequences and arbitrarily corrupted sequences.

Each codeword is a set of M words x_i = (a_i, u_i): an address a_i of L1
bits and a payload u_i of L - L1 bits.  Addresses are indexed in
descending order.  The first ``mu`` payloads start with L2 ones followed
by a BCH parity of the address set's characteristic vector, so the decoder
can recover the address set by a majority vote even when some words are
garbage.  The payload column (u_1, ..., u_M) is a Reed-Solomon codeword
over GF(2^(L-L1)) with delta parity symbols.

Kind ``L`` tolerates s + 2t <= delta (a corrupted word can both remove an
address and add a fake one); kind ``D`` only needs s + t <= delta because a
shortened word never carries a full-length address.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .algebra import BinaryBCH, DecodeFailure, bch_systematic, rs_code
from .channel import Kind
from .codec import DecodeError, SetCodec
from .core import (SequenceSet, bits_to_int, int_to_bits, mixed_radix_join, mixed_radix_split,
                   rank_subset, unrank_subset)


@dataclass(frozen=True)
class BulletParams:
    M: int
    L: int
    L1: int
    L2: int
    mu: int
    delta: int
    s: int = 0
    t: int = 0
    kind: Kind = Kind.L
    # False builds the code even when (s, t) exceed what mu and delta can handle;
    # used to demonstrate failures.
    enforce_capability: bool = True

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind not in (Kind.L, Kind.D):
            raise ValueError("kind must be L or D")
        for name in ("M", "L", "L1", "L2", "mu", "delta"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        M, L, L1 = self.M, self.L, self.L1
        if M > 1 << L1:
            raise ValueError(f"M={M} exceeds the 2^L1={1 << L1} addresses")
        if M > (1 << (L - L1)) - 1:
            raise ValueError(f"M={M} exceeds the Reed-Solomon length limit 2^(L-L1)-1")
        if self.free_bits < 0:
            raise ValueError(f"L1+L2+delta(L1+1) = {L1 + self.L2 + self.delta * (L1 + 1)} exceeds L={L}")
        if self.delta * (L1 + 1) > (1 << L1) - 1:
            raise ValueError(f"delta={self.delta} exceeds (2^L1-1)/(L1+1) for L1={L1}")
        if M - self.delta < self.mu:
            raise ValueError(f"need M - delta >= mu, got {M} - {self.delta} < {self.mu}")
        if self.enforce_capability:
            need = self.s + (2 * self.t if self.kind is Kind.L else self.t)
            if need > self.delta:
                raise ValueError(f"delta={self.delta} below {need} required for s={self.s}, t={self.t}")
            if self.mu < self.delta + need + 1:
                raise ValueError(f"mu={self.mu} below delta+{need}+1={self.delta + need + 1}")

    @property
    def payload_len(self) -> int:
        return self.L - self.L1

    @property
    def enc_len(self) -> int:
        return self.delta * (self.L1 + 1)

    @property
    def free_bits(self) -> int:
        return self.L - self.L1 - self.L2 - self.enc_len

    @property
    def body_radix(self) -> int:
        return ((1 << self.L2) - 1) << (self.L - self.L1 - self.L2)

    def size(self) -> int:
        M, mu, d = self.M, self.mu, self.delta
        return (math.comb(1 << self.L1, M) * (1 << (self.free_bits * mu))
                * self.body_radix ** (M - d - mu))

    def to_json(self) -> dict:
        return {"family": "bullet", "M": self.M, "L": self.L, "L1": self.L1, "L2": self.L2,
                "mu": self.mu, "delta": self.delta, "s": self.s, "t": self.t,
                "kind": self.kind.value, "enforce_capability": self.enforce_capability}

    @classmethod
    def from_json(cls, d: dict) -> "BulletParams":
        d = {k: v for k, v in d.items() if k != "family"}
        return cls(**d)


@dataclass(frozen=True)
class BulletMessage:
    address_rank: int
    head: tuple = field(default=())
    body: tuple = field(default=())

    def to_json(self) -> dict:
        return {"address_rank": str(self.address_rank), "head": list(self.head),
                "body": list(self.body)}

    @classmethod
    def from_json(cls, d: dict) -> "BulletMessage":
        return cls(int(d["address_rank"]), tuple(d.get("head", ())), tuple(d.get("body", ())))


class BulletCodec(SetCodec):
    family = "bullet"

    def __init__(self, params: BulletParams):
        self.p = params
        self.q, self.L, self.M = 2, params.L, params.M
        self.bch: BinaryBCH = bch_systematic(params.L1, params.delta)
        self.rs = rs_code(params.payload_len, params.M, params.M - params.delta)
        self._ones = (1 << params.L2) - 1
        self._head_shift = params.payload_len - params.L2
        self._decode_payloads = lru_cache(maxsize=1 << 16)(self._rs_decode)

    def __repr__(self) -> str:
        return f"BulletCodec({self.p})"

    # -- sizes and message bijection -----------------------------------------
    def size(self) -> int:
        return self.p.size()

    @cached_property
    def radices(self) -> list:
        p = self.p
        return ([math.comb(1 << p.L1, p.M)] + [1 << p.free_bits] * p.mu
                + [p.body_radix] * (p.M - p.delta - p.mu))

    def message_from_index(self, index: int) -> BulletMessage:
        self.check_index(index)
        d = mixed_radix_split(index, self.radices)
        mu = self.p.mu
        return BulletMessage(d[0], tuple(d[1:1 + mu]), tuple(d[1 + mu:]))

    def message_index(self, msg: BulletMessage) -> int:
        self._check_message(msg)
        return mixed_radix_join([msg.address_rank, *msg.head, *msg.body], self.radices)

    def _check_message(self, msg: BulletMessage) -> None:
        p = self.p
        if len(msg.head) != p.mu or len(msg.body) != p.M - p.delta - p.mu:
            raise ValueError(f"message needs {p.mu} head and {p.M - p.delta - p.mu} body values")
        for d, b in zip([msg.address_rank, *msg.head, *msg.body], self.radices):
            if not 0 <= d < b:
                raise ValueError(f"message value {d} out of range [0, {b})")

    def zero_message(self) -> BulletMessage:
        return self.message_from_index(0)

    # -- encoding --------------------------------------------------------------
    def enc_address(self, mask: int) -> int:
        """BCH parity of the characteristic vector, as an enc_len-bit field (MSB = first bit)."""
        v = 0
        for b in self.bch.parity_bits(mask):
            v = (v << 1) | b
        return v

    def payloads(self, msg: BulletMessage) -> tuple:
        """(descending addresses, payload ints u_1..u_M)."""
        self._check_message(msg)
        p = self.p
        ranks = unrank_subset(msg.address_rank, 1 << p.L1, p.M)
        mask = 0
        for r in ranks:
            mask |= 1 << r
        enc = self.enc_address(mask)
        head_prefix = (self._ones << self._head_shift) | (enc << p.free_bits)
        u = [head_prefix | f for f in msg.head] + list(msg.body)
        u += self.rs.parity(u)
        return sorted(ranks, reverse=True), u

    def encode(self, msg: BulletMessage) -> SequenceSet:
        p = self.p
        addrs, u = self.payloads(msg)
        n = p.payload_len
        words = [int_to_bits((a << n) | ui, p.L) for a, ui in zip(addrs, u)]
        return SequenceSet(words, q=2, L=p.L)

    # -- decoding --------------------------------------------------------------
    def decode(self, received) -> BulletMessage:
        p = self.p
        n = p.payload_len
        umask = (1 << n) - 1
        full = [bits_to_int(x) for x in received if len(x) == p.L]
        # step 1: majority over the replicated address parities
        votes = Counter()
        emask = (1 << p.enc_len) - 1
        for v in full:
            u = v & umask
            if u >> self._head_shift == self._ones:
                votes[(u >> p.free_bits) & emask] += 1
        if not votes:
            raise DecodeError("no payload carries the address parity")
        top = votes.most_common(2)
        if len(top) == 2 and top[0][1] == top[1][1]:
            raise DecodeError("majority vote over address parities is tied")
        enc = top[0][0]
        # step 2: correct the characteristic vector of the received addresses
        mask = 0
        for v in full:
            mask |= 1 << (v >> n)
        par = 0
        for j in range(p.enc_len):
            if (enc >> (p.enc_len - 1 - j)) & 1:
                par |= 1 << j
        try:
            mask = self.bch.decode_int(mask, par)
        except DecodeFailure as e:
            raise DecodeError(f"address set: {e}") from None
        if mask.bit_count() != p.M:
            raise DecodeError("corrected address set has the wrong size")
        ranks = [r for r in range(1 << p.L1) if (mask >> r) & 1]
        addrs = ranks[::-1]
        # step 3: payload column with erasures for missing or ambiguous addresses
        by_addr: dict = {}
        for v in full:
            by_addr.setdefault(v >> n, []).append(v & umask)
        word, eras = [], []
        for i, a in enumerate(addrs):
            got = by_addr.get(a)
            if got is not None and len(got) == 1:
                word.append(got[0])
            else:
                word.append(0)
                eras.append(i)
        u = self._decode_payloads(tuple(word), tuple(eras))
        mu = p.mu
        head = []
        for ui in u[:mu]:
            if ui >> self._head_shift != self._ones:
                raise DecodeError("decoded head payload lost its marker")
            head.append(ui & ((1 << p.free_bits) - 1))
        body = tuple(u[mu:])
        for ui in body:
            if ui >= p.body_radix:
                raise DecodeError("decoded body payload carries the head marker")
        return BulletMessage(rank_subset(ranks), tuple(head), body)

    def _rs_decode(self, word: tuple, eras: tuple) -> tuple:
        try:
            return tuple(self.rs.decode_message(list(word), list(eras)))
        except DecodeFailure as e:
            raise DecodeError(f"payload column: {e}") from None

    def to_json(self) -> dict:
        return self.p.to_json()


def check_conditions(S, p: BulletParams) -> list:
    """Clauses of the construction violated by S (empty list = member of the code).

    Recomputes everything from definitions with the generic polynomial
    encoder rather than the codec's packed fast paths.
    """
    bad = []
    words = list(S)
    if len(words) != p.M or any(len(x) != p.L for x in words):
        return [f"(1) expected {p.M} words of length {p.L}"]
    addr = sorted(((bits_to_int(x[:p.L1]), x) for x in words), reverse=True)
    if len({a for a, _ in addr}) != p.M:
        return ["(1) addresses are not distinct"]
    bch = bch_systematic(p.L1, p.delta)
    cv = [0] * (1 << p.L1)
    for a, _ in addr:
        cv[a] = 1
    enc = list(bch.encode(cv)[bch.k:])
    us = [x[p.L1:] for _, x in addr]
    for i, u in enumerate(us, start=1):
        marked = all(u[:p.L2])
        if i <= p.mu:
            if not marked:
                bad.append(f"(2a) u_{i} lacks the all-ones marker")
            if list(u[p.L2:p.L2 + p.enc_len]) != enc:
                bad.append(f"(2a) u_{i} does not carry the address parity")
        elif i <= p.M - p.delta and marked:
            bad.append(f"(2b) u_{i} carries the all-ones marker")
    rs = rs_code(p.payload_len, p.M, p.M - p.delta)
    if not rs.is_codeword([bits_to_int(u) for u in us]):
        bad.append("(3) payload column is not a Reed-Solomon codeword")
    return bad


def delta_for(s: int, t: int, kind: Kind) -> int:
    return s + 2 * t if Kind(kind) is Kind.L else s + t


def bullet_params_for(s: int, t: int, M: int, L: int, kind: Kind = Kind.L) -> BulletParams:
    """Parameters with mu = 2 delta + 1, L1 = 2 log M, L2 = log M."""
    kind = Kind(kind)
    delta = delta_for(s, t, kind)
    if delta < 1:
        raise ValueError("need s + t >= 1")
    lg = max(1, (M - 1).bit_length())
    if M < 3 * delta + 1:
        raise ValueError(f"need M >= 3 delta + 1 = {3 * delta + 1}")
    if L < (2 * delta + 3) * lg + delta:
        raise ValueError(f"need L >= (2 delta + 3) log M + delta = {(2 * delta + 3) * lg + delta}")
    return BulletParams(M=M, L=L, L1=2 * lg, L2=lg, mu=2 * delta + 1, delta=delta,
                        s=s, t=t, kind=kind)


def load_params(text: str) -> BulletParams:
    return BulletParams.from_json(json.loads(text))
