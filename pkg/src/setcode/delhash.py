"""Deletion hashes: VT syndromes for one deletion and greedy-coloring hashes for more.

Two contracts are provided.

* :class:`DeletionHash` (``VTHash``, ``ColoringHash``): words with equal hash
  have disjoint eps-deletion balls, so ``c`` is recovered from any
  eps-deleted copy when its hash is known exactly.
* :class:`SystematicHash`: the words ``(c, Hash(c))`` themselves form an
  eps-deletion-correcting code, so deletions may also hit the hash bits.
  Set codes that read the hash from the channel need this one.

Hash values are ints; as bit strings they are little-endian within h bits.
"""
from __future__ import annotations

import array
import itertools
import math
import os
from functools import lru_cache

from .core import bits_to_int, int_to_bits


class HashDecodeError(ValueError):
    """No (or more than one) word matches the received word and hash."""


def deletions_exact(c: tuple, k: int) -> set:
    """Subsequences of c obtained by exactly k deletions."""
    n = len(c)
    if k > n:
        return set()
    return {tuple(c[p] for p in keep) for keep in itertools.combinations(range(n), n - k)}


def supersequences(y: tuple, n: int) -> set:
    """All binary words of length n containing y as a subsequence."""
    cur = {tuple(y)}
    for _ in range(n - len(y)):
        nxt = set()
        for w in cur:
            for i in range(len(w) + 1):
                nxt.add(w[:i] + (0,) + w[i:])
                nxt.add(w[:i] + (1,) + w[i:])
        cur = nxt
    return cur


def hash_bits(value: int, h: int) -> tuple:
    return tuple((value >> j) & 1 for j in range(h))


def bits_hash(bits) -> int:
    return sum(b << j for j, b in enumerate(bits))


class DeletionHash:
    """Hash_eps on {0,1}^n: equal hashes imply disjoint eps-deletion balls."""

    eps: int
    n: int
    h: int

    def __call__(self, c) -> int:
        raise NotImplementedError

    def decode(self, c_prime, value: int) -> tuple:
        """The unique length-n word with this hash that contains ``c_prime`` as a subsequence."""
        c_prime = tuple(c_prime)
        if len(c_prime) == self.n:
            return c_prime
        if not self.n - self.eps <= len(c_prime) < self.n:
            raise HashDecodeError(f"received length {len(c_prime)} outside [{self.n - self.eps}, {self.n}]")
        hits = [c for c in supersequences(c_prime, self.n) if self(c) == value]
        if len(hits) != 1:
            raise HashDecodeError(f"{len(hits)} candidate words match the hash")
        return hits[0]

    def bits(self, c) -> tuple:
        return hash_bits(self(c), self.h)

    def is_sound(self) -> bool:
        """Exhaustive check of the hash invariant over {0,1}^n."""
        owner = {}
        for v in range(1 << self.n):
            c = int_to_bits(v, self.n)
            hv = self(c)
            for y in deletions_exact(c, min(self.eps, self.n)):
                key = (hv, y)
                if key in owner and owner[key] != c:
                    return False
                owner[key] = c
        return True


class VTHash(DeletionHash):
    """Single-deletion hash: (sum i*c_i mod n+1, weight parity), positions 1-indexed.

    Packed value: syndrome in the low ceil(log2(n+1)) bits, parity above.
    """

    eps = 1

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.k = max(1, math.ceil(math.log2(n + 1)))
        self.h = self.k + 1

    def __repr__(self) -> str:
        return f"VTHash(n={self.n})"

    def syndrome(self, c) -> tuple:
        return vt_hash(c)

    def __call__(self, c) -> int:
        syn, par = vt_hash(c)
        return syn | (par << self.k)

    def decode(self, c_prime, value: int) -> tuple:
        c_prime = tuple(c_prime)
        n = self.n
        syn = value & ((1 << self.k) - 1)
        par = value >> self.k
        if len(c_prime) == n:
            return c_prime
        if len(c_prime) != n - 1:
            raise HashDecodeError(f"received length {len(c_prime)} outside [{n - 1}, {n}]")
        c = vt_insert(c_prime, syn, n)
        if sum(c) % 2 != par:
            raise HashDecodeError("weight parity mismatch")
        return c


def vt_hash(c) -> tuple:
    """(sum_{i>=1} i*c_i mod (n+1), weight mod 2) for a bit string c of length n."""
    n = len(c)
    return sum(i * b for i, b in enumerate(c, start=1)) % (n + 1), sum(c) % 2


def vt_insert(y: tuple, a: int, n: int) -> tuple:
    """Levenshtein's single-deletion decoder for the VT code with syndrome a."""
    w = sum(y)
    D = (a - sum(i * b for i, b in enumerate(y, start=1))) % (n + 1)
    if D <= w:
        # a 0 was deleted; it had D ones to its right
        ones = 0
        pos = len(y)
        while ones < D:
            pos -= 1
            ones += y[pos]
        return y[:pos] + (0,) + y[pos:]
    # a 1 was deleted; it had D - w - 1 zeros to its left
    zeros = 0
    pos = 0
    while zeros < D - w - 1:
        zeros += 1 - y[pos]
        pos += 1
    return y[:pos] + (1,) + y[pos:]


class ColoringHash(DeletionHash):
    """Greedy coloring of the eps-deletion confusability graph on {0,1}^n.

    Words are colored in rank order with the least color unused by earlier
    neighbors; the color is the hash.  Exponential in n, so limited to
    n <= MAX_N; tables can be cached on disk.
    """

    MAX_N = 18

    def __init__(self, eps: int, n: int, table=None):
        if eps < 0 or n < 1:
            raise ValueError("need eps >= 0 and n >= 1")
        if n > self.MAX_N:
            raise ValueError(f"n={n} too large for exhaustive coloring (max {self.MAX_N})")
        self.eps, self.n = eps, n
        self.table = list(table) if table is not None else self._color()
        ncol = max(self.table) + 1
        self.h = 0 if ncol <= 1 else (ncol - 1).bit_length()

    def __repr__(self) -> str:
        return f"ColoringHash(eps={self.eps}, n={self.n}, h={self.h})"

    def _color(self) -> list:
        n, e = self.n, self.eps
        if e == 0:
            return [0] * (1 << n)
        holders = {}  # subsequence -> colors already used by words containing it
        table = []
        for v in range(1 << n):
            subs = deletions_exact(int_to_bits(v, n), min(e, n))
            used = set()
            for y in subs:
                used |= holders.get(y, set())
            col = 0
            while col in used:
                col += 1
            table.append(col)
            for y in subs:
                holders.setdefault(y, set()).add(col)
        return table

    def __call__(self, c) -> int:
        return self.table[bits_to_int(c)]

    # binary cache: header (eps, n, h) then 2^n values, little-endian uint32
    def save(self, path: str) -> None:
        arr = array.array("I", [self.eps, self.n, self.h] + self.table)
        if arr.itemsize != 4:
            raise RuntimeError("platform lacks a 4-byte unsigned int array type")
        with open(path, "wb") as fh:
            if os.sys.byteorder != "little":
                arr.byteswap()
            arr.tofile(fh)

    @classmethod
    def load(cls, path: str) -> "ColoringHash":
        arr = array.array("I")
        with open(path, "rb") as fh:
            arr.frombytes(fh.read())
        if os.sys.byteorder != "little":
            arr.byteswap()
        eps, n, h = arr[:3]
        if len(arr) != 3 + (1 << n):
            raise ValueError("truncated hash table file")
        inst = cls(eps, n, table=arr[3:])
        if inst.h != h:
            raise ValueError("hash table header disagrees with its contents")
        return inst


def bf_hash(eps: int, n: int, cache_dir: str | None = None) -> DeletionHash:
    """Brute-force deletion hash, read from / written to ``cache_dir`` when given."""
    if cache_dir:
        path = os.path.join(cache_dir, f"delhash_e{eps}_n{n}.bin")
        if os.path.exists(path):
            return ColoringHash.load(path)
        inst = ColoringHash(eps, n)
        os.makedirs(cache_dir, exist_ok=True)
        inst.save(path)
        return inst
    return _bf_hash_cached(eps, n)


@lru_cache(maxsize=None)
def _bf_hash_cached(eps: int, n: int) -> ColoringHash:
    return ColoringHash(eps, n)


def del_decode(c_prime, hash_value: int, hash_: DeletionHash) -> tuple:
    return hash_.decode(c_prime, hash_value)


# --- systematic codes ---------------------------------------------------------

class SystematicHash:
    """Hash with {(c, Hash(c))} an eps-deletion-correcting code of length n + h.

    Built by search: for h from a sphere-packing estimate upward, assign
    each c a hash value whose codeword's deletion ball avoids those already
    placed, first in rank order, then most-constrained-first.
    """

    MAX_N = 14

    def __init__(self, eps: int, n: int, h: int | None = None):
        if n > self.MAX_N:
            raise ValueError(f"n={n} too large for systematic hash search (max {self.MAX_N})")
        self.eps, self.n = eps, n
        if eps == 0:
            self.h, self.table = 0, [0] * (1 << n)
            return
        hs = [h] if h is not None else range(_min_h(n, eps), n + 8)
        for cand in hs:
            table = _greedy_systematic(n, cand, eps) or _dsatur_systematic(n, cand, eps)
            if table is not None:
                self.h, self.table = cand, table
                return
        raise ValueError(f"no systematic {eps}-deletion hash found for n={n}")

    def __repr__(self) -> str:
        return f"SystematicHash(eps={self.eps}, n={self.n}, h={self.h})"

    @property
    def length(self) -> int:
        return self.n + self.h

    def __call__(self, c) -> int:
        return self.table[bits_to_int(c)]

    def bits(self, c) -> tuple:
        return hash_bits(self(c), self.h)

    def encode(self, c) -> tuple:
        c = tuple(c)
        return c + self.bits(c)

    def decode(self, y) -> tuple:
        """Recover c from (c, Hash(c)) after at most eps deletions anywhere."""
        y = tuple(y)
        N = self.length
        if not N - self.eps <= len(y) <= N:
            raise HashDecodeError(f"received length {len(y)} outside [{N - self.eps}, {N}]")
        hits = [w[: self.n] for w in supersequences(y, N)
                if self.encode(w[: self.n]) == w]
        if len(hits) != 1:
            raise HashDecodeError(f"{len(hits)} codewords contain the received word")
        return hits[0]

    def is_sound(self) -> bool:
        seen = {}
        for v in range(1 << self.n):
            w = self.encode(int_to_bits(v, self.n))
            for y in deletions_exact(w, self.eps):
                if seen.setdefault(y, v) != v:
                    return False
        return True


def _min_h(n: int, eps: int) -> int:
    """Smallest h passing a sphere-packing estimate: 2^h * eps! >= (n + h - eps + 1)^eps."""
    h = eps
    while (1 << h) * math.factorial(eps) < (n + h - eps + 1) ** eps:
        h += 1
    return h


def _word_ball(w: tuple, eps: int) -> frozenset:
    return frozenset(deletions_exact(w, eps))


def _greedy_systematic(n: int, h: int, eps: int):
    used = set()
    table = []
    for v in range(1 << n):
        c = int_to_bits(v, n)
        for hv in range(1 << h):
            b = _word_ball(c + hash_bits(hv, h), eps)
            if used.isdisjoint(b):
                used |= b
                table.append(hv)
                break
        else:
            return None
    return table


def _dsatur_systematic(n: int, h: int, eps: int):
    """Most-constrained-first assignment: always place the word with fewest options left."""
    N = 1 << h
    holders = {}  # subsequence -> candidate ids (v * N + hv) whose ball contains it
    balls = []
    for v in range(1 << n):
        c = int_to_bits(v, n)
        for hv in range(N):
            b = _word_ball(c + hash_bits(hv, h), eps)
            balls.append(b)
            for y in b:
                holders.setdefault(y, []).append(v * N + hv)
    alive = bytearray([1]) * len(balls)
    options = [N] * (1 << n)
    table = [None] * (1 << n)
    todo = set(range(1 << n))
    while todo:
        v = min(todo, key=lambda u: (options[u], u))
        if options[v] == 0:
            return None
        hv = next(x for x in range(N) if alive[v * N + x])
        table[v] = hv
        todo.discard(v)
        for y in balls[v * N + hv]:
            for cid in holders[y]:
                if alive[cid]:
                    alive[cid] = 0
                    options[cid // N] -= 1
        for x in range(N):  # the other options of v are spent
            if alive[v * N + x]:
                alive[v * N + x] = 0
    return table


@lru_cache(maxsize=None)
def systematic_hash(eps: int, n: int) -> SystematicHash:
    return SystematicHash(eps, n)
