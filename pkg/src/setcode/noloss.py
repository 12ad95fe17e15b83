"""Set codes for channels that lose nothing but corrupt a few sequences.

``HashSumCodec``: all M-sets whose deletion hashes XOR to a fixed value a.
One sequence hit by up to eps deletions is the only short word in the
output; its hash is the XOR of a with the hashes of the intact words.

``TconCodec``: corrects t sequences with up to eps substitutions each.
Addresses come from a family with minimum distance 2eps+1 containing the
all-ones word; u_1 is a word of the inner code B and carries the BCH parity
of the address set; the syndromes of u_2..u_M under B form a codeword of a
code C over GF(2^r).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .algebra import AddressFamily, BinaryBCH, DecodeFailure, bch_systematic, field_code
from .codec import DecodeError, SetCodec
from .core import SequenceSet, bits_to_int, int_to_bits, mixed_radix_join, mixed_radix_split
from .delhash import DeletionHash, HashDecodeError, VTHash, bf_hash


# --- hash-sum code -----------------------------------------------------------------

def default_hash(eps: int, L: int) -> DeletionHash:
    return VTHash(L) if eps == 1 else bf_hash(eps, L)


@dataclass(frozen=True)
class HashSumParams:
    M: int
    L: int
    eps: int = 1
    a: int = 0

    def to_json(self) -> dict:
        return {"family": "hashsum", "M": self.M, "L": self.L, "eps": self.eps, "a": self.a}

    @classmethod
    def from_json(cls, d: dict) -> "HashSumParams":
        return cls(int(d["M"]), int(d["L"]), int(d.get("eps", 1)), int(d.get("a", 0)))


def hash_sum(S, hash_: DeletionHash) -> int:
    v = 0
    for x in S:
        v ^= hash_(x)
    return v


def hashsum_membership(S, p: HashSumParams, hash_: DeletionHash | None = None) -> bool:
    hash_ = hash_ or default_hash(p.eps, p.L)
    return hash_sum(S, hash_) == p.a


def census(M: int, L: int, hash_: DeletionHash) -> list:
    """Number of M-subsets of {0,1}^L with each XOR hash sum, indexed by a."""
    H = 1 << hash_.h
    dp = [[0] * H for _ in range(M + 1)]
    dp[0][0] = 1
    for w in range(1 << L):
        hv = hash_(int_to_bits(w, L))
        for k in range(M, 0, -1):
            prev, cur = dp[k - 1], dp[k]
            for v in range(H):
                if prev[v]:
                    cur[v ^ hv] += prev[v]
    return dp[M]


def best_a(M: int, L: int, hash_: DeletionHash) -> tuple:
    """(a, |S_a|) for the largest class; ties go to the smallest a."""
    counts = census(M, L, hash_)
    a = max(range(len(counts)), key=lambda v: (counts[v], -v))
    return a, counts[a]


class HashSumCodec(SetCodec):
    """Members of S_a indexed lexicographically by their sorted word ranks.

    Indexing uses suffix counts over (first allowed rank, words left, hash
    sum), so it is polynomial in 2^L; there is no encoder below that.
    """

    family = "hashsum"

    def __init__(self, params: HashSumParams, hash_: DeletionHash | None = None):
        self.p = params
        self.q, self.L, self.M = 2, params.L, params.M
        self.hash = hash_ or default_hash(params.eps, params.L)
        if self.hash.n != params.L or self.hash.eps < params.eps:
            raise ValueError("hash does not match (L, eps)")
        if not 0 <= params.a < 1 << self.hash.h:
            raise ValueError(f"a must lie in [0, 2^{self.hash.h})")
        self._hv = [self.hash(int_to_bits(w, self.L)) for w in range(1 << self.L)]

    @cached_property
    def _suffix(self) -> list:
        """cnt[j][k][v]: k-subsets of ranks >= j with hash sum v."""
        N, M, H = 1 << self.L, self.M, 1 << self.hash.h
        cnt = [None] * (N + 1)
        cur = [[0] * H for _ in range(M + 1)]
        cur[0][0] = 1
        cnt[N] = [row[:] for row in cur]
        for j in range(N - 1, -1, -1):
            hv = self._hv[j]
            nxt = [row[:] for row in cur]
            for k in range(1, M + 1):
                prev = cur[k - 1]
                row = nxt[k]
                for v in range(H):
                    if prev[v]:
                        row[v ^ hv] += prev[v]
            cnt[j] = nxt
            cur = nxt
        return cnt

    def size(self) -> int:
        return self._suffix[0][self.M][self.p.a]

    def message_from_index(self, index: int) -> int:
        self.check_index(index)
        return index

    def message_index(self, msg: int) -> int:
        self.check_index(msg)
        return msg

    def unrank(self, index: int) -> SequenceSet:
        self.check_index(index)
        cnt, N = self._suffix, 1 << self.L
        ranks, target, j = [], self.p.a, 0
        for k in range(self.M, 0, -1):
            while True:
                c = cnt[j + 1][k - 1][target ^ self._hv[j]]
                if index < c:
                    break
                index -= c
                j += 1
            ranks.append(j)
            target ^= self._hv[j]
            j += 1
        return SequenceSet((int_to_bits(r, self.L) for r in ranks), q=2, L=self.L)

    def rank(self, S) -> int:
        ranks = sorted(bits_to_int(x) for x in S)
        if len(ranks) != self.M or hash_sum(S, self.hash) != self.p.a:
            raise ValueError("set is not a member of S_a")
        cnt = self._suffix
        index, target, j = 0, self.p.a, 0
        for k, r in zip(range(self.M, 0, -1), ranks):
            for jj in range(j, r):
                index += cnt[jj + 1][k - 1][target ^ self._hv[jj]]
            target ^= self._hv[r]
            j = r + 1
        return index

    def encode(self, msg: int) -> SequenceSet:
        return self.unrank(msg)

    def decode_set(self, received) -> SequenceSet:
        full = [tuple(x) for x in received if len(x) == self.L]
        short = [tuple(x) for x in received if len(x) != self.L]
        if len(short) > 1:
            raise DecodeError(f"{len(short)} corrupted sequences; at most one is correctable")
        if not short:
            if len(full) != self.M:
                raise DecodeError(f"expected {self.M} sequences, got {len(full)}")
            return SequenceSet(full, q=2, L=self.L)
        if len(full) != self.M - 1:
            raise DecodeError("wrong number of intact sequences")
        target = self.p.a ^ hash_sum(full, self.hash)
        try:
            x0 = self.hash.decode(short[0], target)
        except HashDecodeError as e:
            raise DecodeError(str(e)) from None
        return SequenceSet(full + [x0], q=2, L=self.L)

    def decode(self, received) -> int:
        return self.rank(self.decode_set(received))

    def to_json(self) -> dict:
        return self.p.to_json()


def hashsum_decode(S_prime, p: HashSumParams) -> SequenceSet:
    return _hashsum_codec(p).decode_set(S_prime)


@lru_cache(maxsize=16)
def _hashsum_codec(p: HashSumParams) -> HashSumCodec:
    return HashSumCodec(p)


# --- four-stage substitution code -----------------------------------------------------

@dataclass(frozen=True)
class TconParams:
    M: int
    L: int
    L_prime: int
    t: int = 1
    eps: int = 1

    def to_json(self) -> dict:
        return {"family": "tcon", "M": self.M, "L": self.L, "L_prime": self.L_prime,
                "t": self.t, "eps": self.eps}

    @classmethod
    def from_json(cls, d: dict) -> "TconParams":
        return cls(int(d["M"]), int(d["L"]), int(d["L_prime"]), int(d.get("t", 1)),
                   int(d.get("eps", 1)))


@dataclass(frozen=True)
class TconMessage:
    address_index: int
    u1_free: int
    syndrome_msg: tuple
    cosets: tuple

    def to_json(self) -> dict:
        return {"address_index": self.address_index, "u1_free": self.u1_free,
                "syndrome_msg": list(self.syndrome_msg), "cosets": list(self.cosets)}

    @classmethod
    def from_json(cls, d: dict) -> "TconMessage":
        return cls(int(d["address_index"]), int(d["u1_free"]), tuple(d["syndrome_msg"]),
                   tuple(d["cosets"]))


def inner_bch(n: int, eps: int) -> BinaryBCH:
    """Shortened binary BCH code of length n correcting eps errors, in the smallest field."""
    m = max(2, n.bit_length())  # 2^m - 1 >= n
    probe = BinaryBCH(m, 1, 2 * eps + 1)
    if n - probe.r < 1:
        raise ValueError(f"no binary code of length {n} corrects {eps} errors here")
    return BinaryBCH(m, n - probe.r, 2 * eps + 1)


class TconCodec(SetCodec):
    family = "tcon"

    def __init__(self, params: TconParams, budget: int = 10**7):
        p = self.p = params
        self.q, self.L, self.M = 2, p.L, p.M
        if p.M < 2 or p.t < 1 or p.eps < 1:
            raise ValueError("need M >= 2, t >= 1, eps >= 1")
        if not (p.M - 1).bit_length() <= p.L_prime < p.L:
            raise ValueError("need log M <= L' < L")
        self.n_u = p.L - p.L_prime
        self.B = inner_bch(self.n_u, p.eps)
        self.r = self.B.r
        self.k_B = self.B.k
        self.pinned = 2 * p.t * (p.L_prime + 1)
        if self.k_B < self.pinned:
            raise ValueError(f"need L - L' - r >= 2t(L'+1): {self.k_B} < {self.pinned}")
        self.C_A = bch_systematic(p.L_prime, 2 * p.t)
        self.C = field_code(self.r, p.M - 1, p.t)
        self.r_tilde = self.C.r
        self.family_A = AddressFamily(p.L_prime, p.M, p.eps, budget)
        if not len(self.family_A):
            raise ValueError("address family is empty")

    def __repr__(self) -> str:
        return (f"TconCodec({self.p}, B=[{self.n_u},{self.k_B}], r={self.r}, "
                f"C={self.C!r}, r~={self.r_tilde}, |A|={len(self.family_A)})")

    def size(self) -> int:
        p = self.p
        return len(self.family_A) << (p.M * self.n_u - self.pinned - self.r * (self.r_tilde + 1))

    @cached_property
    def radices(self) -> list:
        M = self.p.M
        return ([len(self.family_A), 1 << (self.k_B - self.pinned)]
                + [1 << self.r] * (M - 1 - self.r_tilde) + [1 << self.k_B] * (M - 1))

    def message_from_index(self, index: int) -> TconMessage:
        self.check_index(index)
        d = mixed_radix_split(index, self.radices)
        k = 2 + self.p.M - 1 - self.r_tilde
        return TconMessage(d[0], d[1], tuple(d[2:k]), tuple(d[k:]))

    def message_index(self, msg: TconMessage) -> int:
        digits = [msg.address_index, msg.u1_free, *msg.syndrome_msg, *msg.cosets]
        if len(digits) != len(self.radices):
            raise ValueError("message has the wrong number of parts")
        return mixed_radix_join(digits, self.radices)

    # B helpers: words are tuples, message bits first; packed ints put bit i at position i
    def _b_parity(self, m: int) -> int:
        return self.B.parity_int(m)

    def _split(self, u: tuple) -> tuple:
        k = self.k_B
        m = sum(b << i for i, b in enumerate(u[:k]))
        par = sum(b << j for j, b in enumerate(u[k:]))
        return m, par

    def _join(self, m: int, par: int) -> tuple:
        return (tuple((m >> i) & 1 for i in range(self.k_B))
                + tuple((par >> j) & 1 for j in range(self.r)))

    def syndrome(self, u: tuple) -> int:
        """u H^T for the systematic parity-check matrix [P^T | I], as an r-bit int."""
        m, par = self._split(u)
        return self._b_parity(m) ^ par

    def coset_decode(self, u_prime: tuple, s: int, y: tuple | None = None) -> tuple:
        """Nearest word to u_prime with syndrome s, via any y of syndrome s."""
        if y is None:
            y = self._join(0, s)
        elif self.syndrome(y) != s:
            raise ValueError("y does not have syndrome s")
        diff = tuple(a ^ b for a, b in zip(u_prime, y))
        m, par = self._split(diff)
        try:
            m = self.B.decode_int(m, par)
        except DecodeFailure as e:
            raise DecodeError(f"inner code: {e}") from None
        c = self._join(m, self._b_parity(m))
        return tuple(a ^ b for a, b in zip(c, y))

    def encode(self, msg: TconMessage) -> SequenceSet:
        p = self.p
        self.message_index(msg)
        addrs = self.family_A.member(msg.address_index)
        mask = sum(1 << bits_to_int(a) for a in addrs)
        enc = self.C_A.parity_bits(mask)
        free = int_to_bits(msg.u1_free, self.k_B - self.pinned)
        m1 = sum(b << i for i, b in enumerate(tuple(enc) + free))
        us = [self._join(m1, self._b_parity(m1))]
        s = self.C.encode(list(msg.syndrome_msg))
        for mi, si in zip(msg.cosets, s):
            us.append(self._join(mi, self._b_parity(mi) ^ si))
        return SequenceSet((tuple(a) + u for a, u in zip(addrs, us)), q=2, L=p.L)

    def decode(self, received) -> TconMessage:
        p = self.p
        Lp = p.L_prime
        words = [tuple(x) for x in received if len(x) == p.L]
        if len(words) != p.M:
            raise DecodeError(f"expected {p.M} distinct sequences, got {len(words)}")
        prefix = [bits_to_int(x[:Lp]) for x in words]
        ones = (1 << Lp) - 1
        # step 1: the word addressed near all-ones carries u_1
        near = [i for i, a in enumerate(prefix) if (a ^ ones).bit_count() <= p.eps]
        if len(near) != 1:
            raise DecodeError(f"{len(near)} received prefixes lie within eps of all-ones")
        m1, par1 = self._split(words[near[0]][Lp:])
        try:
            m1 = self.B.decode_int(m1, par1)
        except DecodeFailure as e:
            raise DecodeError(f"u_1: {e}") from None
        enc_par = m1 & ((1 << self.C_A.r) - 1)
        # step 2: address set, then match every address to one received word
        mask = 0
        for a in prefix:
            mask |= 1 << a
        try:
            mask = self.C_A.decode_int(mask, enc_par)
        except DecodeFailure as e:
            raise DecodeError(f"address set: {e}") from None
        if mask.bit_count() != p.M:
            raise DecodeError("corrected address set has the wrong size")
        addrs = [r for r in range(1 << Lp) if (mask >> r) & 1][::-1]
        order = []
        for a in addrs:
            hit = [i for i, b in enumerate(prefix) if (a ^ b).bit_count() <= p.eps]
            if len(hit) != 1:
                raise DecodeError(f"address {a} matches {len(hit)} received prefixes")
            order.append(hit[0])
        if addrs[0] != ones or order[0] != near[0]:
            raise DecodeError("address set lacks the all-ones word")
        # step 3: syndromes of u_2..u_M form a codeword of C
        rest = [words[i][Lp:] for i in order[1:]]
        try:
            s = self.C.decode([self.syndrome(u) for u in rest])
        except DecodeFailure as e:
            raise DecodeError(f"syndrome code: {e}") from None
        # step 4: coset decoding
        cosets = tuple(self._split(self.coset_decode(u, si))[0] for u, si in zip(rest, s))
        try:
            index = self.family_A.index([int_to_bits(a, Lp) for a in addrs])
        except ValueError as e:
            raise DecodeError(str(e)) from None
        free = m1 >> self.pinned
        # u1_free was packed MSB-first into message positions pinned.. k_B-1
        u1_free = bits_to_int(tuple((free >> i) & 1 for i in range(self.k_B - self.pinned)))
        return TconMessage(index, u1_free, tuple(s[: p.M - 1 - self.r_tilde]), cosets)

    def to_json(self) -> dict:
        return self.p.to_json()


def check_tcon_conditions(S, codec: TconCodec) -> list:
    """Violated clauses for S, recomputed from the generic encoders and matrices."""
    p = codec.p
    Lp = p.L_prime
    rows = sorted((tuple(x) for x in S), reverse=True)
    if len(rows) != p.M or any(len(x) != p.L for x in rows):
        return ["(1) wrong number or length of sequences"]
    A = [x[:Lp] for x in rows]
    bad = []
    if A[0] != (1,) * Lp or any(sum(a != b for a, b in zip(x, y)) < 2 * p.eps + 1
                                for x, y in itertools.combinations(A, 2)):
        bad.append("(1) address set is not in the family")
    cv = [0] * (1 << Lp)
    for a in A:
        cv[bits_to_int(a)] = 1
    enc = list(codec.C_A.encode(cv)[codec.C_A.k:])
    us = [x[Lp:] for x in rows]
    if list(us[0][: codec.pinned]) != enc:
        bad.append("(2) u_1 does not start with the address parity")
    if not codec.B.is_codeword(list(us[0])):
        bad.append("(3) u_1 is not a codeword of B")
    # H = [P^T | I] with P read off the systematic generator matrix
    k, r = codec.k_B, codec.r
    P = [row[k:k + r] for row in codec.B.generator_matrix()]
    syn = []
    for u in us[1:]:
        v = 0
        for j in range(r):
            bit = u[k + j]
            for i in range(k):
                bit ^= u[i] & P[i][j]
            v |= bit << j
        syn.append(v)
    if not codec.C.is_codeword(syn):
        bad.append("(4) syndromes of u_2..u_M are not a codeword of C")
    return bad
