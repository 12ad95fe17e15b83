"""Set codes over Z_q for limited-magnitude errors (each symbol moves by at most +k_plus / -k_minus).

``LmCodec``: s+1 words have addresses in a high window [q-2-k+, q-1-k+]^L1
and carry K * f(parity of the address set) at the start of their payload,
with K = k+ + k- + 1.  All other addresses stay out of the forbidden zone
[q-1-K-k+, q-1]^L1, so after errors the only prefixes inside
[q-1-K, q-1]^L1 belong to the replicated heads.  A corrupted head symbol
c rounds back to the unique multiple of K within [c-k+, c+k-].  The rest
follows the arbitrary-error construction: BCH on the address set, then a
Reed-Solomon code across payloads (symbols of GF(2^(b(L-L1))), q = 2^b).

``ModWrapCodec``: lifts any binary-or-p-ary substitution-correcting set
code to Z_q by adding p * (free digits); errors mod p are substitutions.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .algebra import BinaryBCH, DecodeFailure, bch_systematic, rs_code
from .codec import DecodeError, SetCodec
from .core import (SequenceSet, mixed_radix_join, mixed_radix_split, rank_subset, seq_rank,
                   seq_unrank, unrank_subset)


def round_magnitude(c: int, K: int, k_plus: int, k_minus: int, top: int) -> int:
    """The x in [0, top) with K x in [c - k_plus, c + k_minus]."""
    x = -((k_plus - c) // K)  # ceil((c - k_plus) / K)
    x = max(x, 0)
    if x >= top or K * x > c + k_minus:
        raise DecodeError(f"symbol {c} is not within the error range of a multiple of {K}")
    return x


def lift_error(eps_l: int, p: int, k_plus: int) -> int:
    """Representative in [-k_minus, k_plus] of an error known modulo p."""
    eps_l %= p
    return eps_l if eps_l <= k_plus else eps_l - p


def _is_pow2(v: int) -> bool:
    return v >= 1 and v & (v - 1) == 0


@dataclass(frozen=True)
class LmParams:
    q: int
    k_plus: int
    k_minus: int
    s: int
    t: int
    M: int
    L: int
    L1: int

    def __post_init__(self):
        q, K = self.q, self.K
        if not _is_pow2(q) or q < 2:
            raise ValueError("q must be a power of 2 (payloads are field elements of GF(2^(b(L-L1))))")
        if self.k_plus < 0 or self.k_minus < 0 or K < 2:
            raise ValueError("need k+, k- >= 0 with k+ + k- >= 1")
        if q % K:
            raise ValueError(f"K={K} must divide q={q}")
        if q // K < 2:
            raise ValueError("need q/K >= 2")
        if q - 1 - K - self.k_plus < 0:
            raise ValueError(f"forbidden zone [q-1-K-k+, q-1] covers all of Z_{q}")
        if self.s < 0 or self.t < 0 or self.delta < 1:
            raise ValueError("need s, t >= 0 and s + 2t >= 1")
        if self.M > q ** self.L1 or self.M > q ** (self.L - self.L1):
            raise ValueError("need log_q M <= min(L1, L - L1)")
        # L1 + delta(L1+1) log_{q/K} q <= L, compared exactly via bit lengths
        b, bk = self.b, (q // K).bit_length() - 1
        if Fraction(self.L1) + Fraction(self.delta * (self.L1 + 1) * b, bk) > self.L:
            raise ValueError("need L1 + delta(L1+1) log_{q/K} q <= L")
        if self.L1 + self.L2 > self.L:
            raise ValueError("payload too short for the replicated parity")
        if self.M - self.delta < self.s + 1:
            raise ValueError("need M - delta >= s + 1")
        if self.M > (1 << (b * (self.L - self.L1))) - 1:
            raise ValueError("M exceeds the Reed-Solomon length limit")
        if self.enc_len > (1 << self.ell) - 1:
            raise ValueError("delta too large for the address BCH code")
        if math.comb(self.free_zone_size, self.M - self.s - 1) == 0:
            raise ValueError("not enough addresses outside the forbidden zone")

    @property
    def K(self) -> int:
        return self.k_plus + self.k_minus + 1

    @property
    def delta(self) -> int:
        return self.s + 2 * self.t

    @property
    def b(self) -> int:
        return self.q.bit_length() - 1

    @property
    def ell(self) -> int:
        """log2 of q^L1: the characteristic vector has 2^ell positions."""
        return self.L1 * self.b

    @property
    def enc_len(self) -> int:
        return self.delta * (self.ell + 1)

    @property
    def L2(self) -> int:
        bk = (self.q // self.K).bit_length() - 1
        return -(-self.enc_len // bk)

    @property
    def window(self) -> tuple:
        return (self.q - 2 - self.k_plus, self.q - 1 - self.k_plus)

    @property
    def forbidden_low(self) -> int:
        return self.q - 1 - self.K - self.k_plus

    @property
    def free_zone_size(self) -> int:
        return self.q ** self.L1 - (self.K + self.k_plus + 1) ** self.L1

    def size(self) -> int:
        q, L, L1, L2, s = self.q, self.L, self.L1, self.L2, self.s
        return (math.comb(2 ** L1, s + 1) * math.comb(self.free_zone_size, self.M - s - 1)
                * q ** ((L - L1 - L2) * (s + 1)) * q ** ((L - L1) * (self.M - self.delta - s - 1)))

    def to_json(self) -> dict:
        return {"family": "lm", "q": self.q, "k_plus": self.k_plus, "k_minus": self.k_minus,
                "s": self.s, "t": self.t, "M": self.M, "L": self.L, "L1": self.L1}

    @classmethod
    def from_json(cls, d: dict) -> "LmParams":
        return cls(**{k: int(v) for k, v in d.items() if k != "family"})


@dataclass(frozen=True)
class LmMessage:
    high_rank: int
    low_rank: int
    head: tuple
    body: tuple

    def to_json(self) -> dict:
        return {"high_rank": str(self.high_rank), "low_rank": str(self.low_rank),
                "head": [str(v) for v in self.head], "body": [str(v) for v in self.body]}

    @classmethod
    def from_json(cls, d: dict) -> "LmMessage":
        return cls(int(d["high_rank"]), int(d["low_rank"]), tuple(int(v) for v in d["head"]),
                   tuple(int(v) for v in d["body"]))


class LmCodec(SetCodec):
    family = "lm"

    def __init__(self, params: LmParams):
        p = self.p = params
        self.q, self.L, self.M = p.q, p.L, p.M
        self.bch: BinaryBCH = bch_systematic(p.ell, p.delta)
        self.n_u = p.L - p.L1
        self.rs = rs_code(p.b * self.n_u, p.M, p.M - p.delta)
        lo = p.forbidden_low
        self.free_zone = [v for v in range(p.q ** p.L1)
                          if any(a < lo for a in seq_unrank(v, p.q, p.L1))]
        self._free_index = {v: i for i, v in enumerate(self.free_zone)}

    def __repr__(self) -> str:
        return f"LmCodec({self.p}, L2={self.p.L2})"

    def size(self) -> int:
        return self.p.size()

    @cached_property
    def radices(self) -> list:
        p = self.p
        q = p.q
        return ([math.comb(2 ** p.L1, p.s + 1), math.comb(len(self.free_zone), p.M - p.s - 1)]
                + [q ** (self.n_u - p.L2)] * (p.s + 1)
                + [q ** self.n_u] * (p.M - p.delta - p.s - 1))

    def message_from_index(self, index: int) -> LmMessage:
        self.check_index(index)
        d = mixed_radix_split(index, self.radices)
        h = self.p.s + 1
        return LmMessage(d[0], d[1], tuple(d[2:2 + h]), tuple(d[2 + h:]))

    def message_index(self, msg: LmMessage) -> int:
        digits = [msg.high_rank, msg.low_rank, *msg.head, *msg.body]
        if len(digits) != len(self.radices):
            raise ValueError("message has the wrong number of parts")
        return mixed_radix_join(digits, self.radices)

    # -- helpers ---------------------------------------------------------------
    def high_words(self, rank: int) -> list:
        p = self.p
        w0, w1 = p.window
        out = []
        for v in unrank_subset(rank, 2 ** p.L1, p.s + 1):
            bits = seq_unrank(v, 2, p.L1)
            out.append(seq_rank([w1 if x else w0 for x in bits], p.q))
        return sorted(out, reverse=True)

    def high_rank(self, words: list) -> int:
        w0 = self.p.window[0]
        ranks = []
        for v in words:
            digits = seq_unrank(v, self.p.q, self.p.L1)
            ranks.append(seq_rank([x - w0 for x in digits], 2))
        return rank_subset(ranks)

    def in_window(self, v: int) -> bool:
        w0, w1 = self.p.window
        return all(w0 <= a <= w1 for a in seq_unrank(v, self.p.q, self.p.L1))

    def head_symbols(self, mask: int) -> tuple:
        """K * f(parity of the address set): L2 symbols of Z_q."""
        p = self.p
        e = 0
        for bit in self.bch.parity_bits(mask):
            e = (e << 1) | bit
        return tuple(p.K * d for d in seq_unrank(e, p.q // p.K, p.L2))

    # -- codec -----------------------------------------------------------------
    def encode(self, msg: LmMessage) -> SequenceSet:
        p = self.p
        self.message_index(msg)
        high = self.high_words(msg.high_rank)
        low = sorted((self.free_zone[i] for i in unrank_subset(msg.low_rank, len(self.free_zone),
                                                               p.M - p.s - 1)), reverse=True)
        addrs = high + low
        mask = sum(1 << a for a in addrs)
        head = self.head_symbols(mask)
        hv = seq_rank(head, p.q) * p.q ** (self.n_u - p.L2)
        u = [hv + f for f in msg.head] + list(msg.body)
        u += self.rs.parity(u)
        words = [seq_unrank(a, p.q, p.L1) + seq_unrank(ui, p.q, self.n_u) for a, ui in zip(addrs, u)]
        return SequenceSet(words, q=p.q, L=p.L)

    def decode(self, received) -> LmMessage:
        p = self.p
        q, K = p.q, p.K
        full = [tuple(x) for x in received if len(x) == p.L]
        lo_win = q - 1 - K
        # step 1: heads are exactly the words whose prefix lies in [q-1-K, q-1]^L1
        cands = sorted(x for x in full if all(a >= lo_win for a in x[:p.L1]))
        if not cands:
            raise DecodeError("no received prefix lies in the head window")
        decoded = set()
        for x in cands:
            digits = [round_magnitude(c, K, p.k_plus, p.k_minus, q // K)
                      for c in x[p.L1:p.L1 + p.L2]]
            decoded.add(seq_rank(digits, q // K))
        if len(decoded) != 1:
            raise DecodeError("head payloads disagree after rounding")
        e = decoded.pop()
        if e >= 1 << p.enc_len:
            raise DecodeError("head payload is not an image of the parity map")
        par = 0
        for j in range(p.enc_len):
            if (e >> (p.enc_len - 1 - j)) & 1:
                par |= 1 << j
        # step 2: address set
        prefixes = [seq_rank(x[:p.L1], q) for x in full]
        mask = 0
        for a in prefixes:
            mask |= 1 << a
        try:
            mask = self.bch.decode_int(mask, par)
        except DecodeFailure as exc:
            raise DecodeError(f"address set: {exc}") from None
        if mask.bit_count() != p.M:
            raise DecodeError("corrected address set has the wrong size")
        A = [v for v in range(q ** p.L1) if (mask >> v) & 1]
        high = sorted((v for v in A if self.in_window(v)), reverse=True)
        low = sorted((v for v in A if v in self._free_index), reverse=True)
        if len(high) != p.s + 1 or len(low) != p.M - p.s - 1:
            raise DecodeError("address set does not split into the two zones")
        addrs = high + low
        # step 3: payload column
        by_addr: dict = {}
        for a, x in zip(prefixes, full):
            by_addr.setdefault(a, []).append(seq_rank(x[p.L1:], q))
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
        except DecodeFailure as exc:
            raise DecodeError(f"payload column: {exc}") from None
        tail = q ** (self.n_u - p.L2)
        hv = seq_rank(self.head_symbols(mask), q) * tail
        head = []
        for ui in u[: p.s + 1]:
            if ui - ui % tail != hv:
                raise DecodeError("decoded head payload disagrees with the address parity")
            head.append(ui % tail)
        low_rank = rank_subset(self._free_index[v] for v in low)
        return LmMessage(self.high_rank(high), low_rank, tuple(head), tuple(u[p.s + 1:]))

    def to_json(self) -> dict:
        return self.p.to_json()


def lm_params_for(s: int, t: int, M: int, q: int, k_plus: int = 1, k_minus: int = 0,
                  L: int | None = None) -> LmParams:
    """L1 = 2 log_q M (rounded up) and the smallest admissible L unless one is given."""
    K = k_plus + k_minus + 1
    if not 2 * K * 2 * K < q:  # log_q(2K) < 1/2
        raise ValueError("need log_q(2K) < 1/2")
    L1 = 1
    while q ** L1 < M * M:
        L1 += 1
    if L is None:
        L = L1 + 1
        while True:
            try:
                return LmParams(q, k_plus, k_minus, s, t, M, L, L1)
            except ValueError:
                L += 1
                if L > 64 * L1 + 64:
                    raise
    return LmParams(q, k_plus, k_minus, s, t, M, L, L1)


# --- mod-p wrapper ---------------------------------------------------------------

@dataclass(frozen=True)
class ModWrapParams:
    p: int
    q: int
    k_plus: int
    k_minus: int
    eps: int

    def __post_init__(self):
        if self.p < self.k_plus + self.k_minus + 1:
            raise ValueError("need p >= k+ + k- + 1")
        if self.q % self.p:
            raise ValueError(f"p={self.p} must divide q={self.q}")

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "k_plus": self.k_plus, "k_minus": self.k_minus,
                "eps": self.eps}


@dataclass(frozen=True)
class ModWrapMessage:
    inner: object
    free_digits: tuple  # M rows of L digits in [0, q/p), rows follow descending inner order

    def to_json(self) -> dict:
        inner = self.inner.to_json() if hasattr(self.inner, "to_json") else self.inner
        return {"inner": inner, "free_digits": [list(r) for r in self.free_digits]}


def min_intra_distance(S) -> int:
    words = list(S)
    return min((sum(a != b for a, b in zip(x, y)) for x, y in itertools.combinations(words, 2)),
               default=len(words[0]) if words else 0)


class ModWrapCodec(SetCodec):
    family = "modwrap"

    def __init__(self, params: ModWrapParams, inner: SetCodec):
        if inner.q != params.p:
            raise ValueError(f"inner code alphabet {inner.q} differs from p={params.p}")
        self.mp = params
        self.inner = inner
        self.q, self.L, self.M = params.q, inner.L, inner.M
        self.lift = params.q // params.p

    def __repr__(self) -> str:
        return f"ModWrapCodec({self.mp}, inner={self.inner!r})"

    def size(self) -> int:
        return self.lift ** (self.M * self.L) * self.inner.size()

    def check_inner_codeword(self, C) -> bool:
        return min_intra_distance(C) >= 2 * self.mp.eps + 1

    def message_from_index(self, index: int) -> ModWrapMessage:
        self.check_index(index)
        hi, lo = divmod(index, self.lift ** (self.M * self.L))
        digits = mixed_radix_split(lo, [self.lift] * (self.M * self.L))
        rows = tuple(tuple(digits[i * self.L:(i + 1) * self.L]) for i in range(self.M))
        return ModWrapMessage(self.inner.message_from_index(hi), rows)

    def message_index(self, msg: ModWrapMessage) -> int:
        flat = [d for row in msg.free_digits for d in row]
        if len(flat) != self.M * self.L:
            raise ValueError("free digits must be M rows of L digits")
        lo = mixed_radix_join(flat, [self.lift] * len(flat))
        return self.inner.message_index(msg.inner) * self.lift ** len(flat) + lo

    def encode(self, msg: ModWrapMessage) -> SequenceSet:
        self.message_index(msg)
        chis = sorted(self.inner.encode(msg.inner), reverse=True)
        p = self.mp.p
        words = [tuple(c + p * f for c, f in zip(chi, row)) for chi, row in zip(chis, msg.free_digits)]
        return SequenceSet(words, q=self.q, L=self.L)

    def decode(self, received) -> ModWrapMessage:
        mp = self.mp
        ys = [tuple(y) for y in received]
        if len(ys) != self.M:
            raise DecodeError(f"expected {self.M} sequences, got {len(ys)}")
        psis = [tuple(a % mp.p for a in y) for y in ys]
        inner_msg = self.inner.decode(frozenset(psis))
        chis = sorted(self.inner.encode(inner_msg), reverse=True)
        rows, used = [], set()
        for chi in chis:
            hit = [j for j, psi in enumerate(psis)
                   if sum(a != b for a, b in zip(chi, psi)) <= mp.eps]
            if len(hit) != 1 or hit[0] in used:
                raise DecodeError("no unique received word within eps of a decoded word")
            j = hit[0]
            used.add(j)
            x = [y - lift_error(psi - c, mp.p, mp.k_plus)
                 for y, psi, c in zip(ys[j], psis[j], chi)]
            if any(not 0 <= v < self.q for v in x):
                raise DecodeError("corrected symbol leaves Z_q")
            rows.append(tuple((v - c) // mp.p for v, c in zip(x, chi)))
        return ModWrapMessage(inner_msg, tuple(rows))

    def to_json(self) -> dict:
        d = self.mp.to_json()
        d["family"] = "modwrap"
        d["inner"] = self.inner.to_json()
        return d


# --- function-style entry points ---------------------------------------------------

@lru_cache(maxsize=8)
def _lm_codec(p: LmParams) -> LmCodec:
    return LmCodec(p)


def lm_encode(msg: LmMessage, p: LmParams) -> SequenceSet:
    return _lm_codec(p).encode(msg)


def lm_decode(S_prime, p: LmParams) -> LmMessage:
    return _lm_codec(p).decode(S_prime)


def modwrap_encode(msg_inner, free_digits, p: ModWrapParams, inner: SetCodec) -> SequenceSet:
    return ModWrapCodec(p, inner).encode(ModWrapMessage(msg_inner, tuple(map(tuple, free_digits))))


def modwrap_decode(S_prime, p: ModWrapParams, inner: SetCodec) -> tuple:
    msg = ModWrapCodec(p, inner).decode(S_prime)
    return msg.inner, msg.free_digits
