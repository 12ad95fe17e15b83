"""Shortened systematic BCH codes over GF(2^b), including Reed-Solomon (b = m).

Word layout used everywhere: message symbols first, then the parity
symbols, then optional zero padding up to a requested parity length.  A
word ``w`` of length n is read as the polynomial sum(w[i] x^(n-1-i)), so
position i has error locator alpha^(n-1-i).

Decoding handles errors and erasures together: Forney-modified syndromes,
the least-degree consistent error locator found by elimination, a root
search restricted to the valid positions, then a linear solve for the
values.  Every accepted output is re-checked against all syndromes, so a
pattern beyond the design radius raises :class:`DecodeFailure` or lands on
another codeword; it never returns a non-codeword.
"""
from __future__ import annotations

import itertools
import math
from functools import cached_property

from .fields import GF2m, gf2m, solve_linear


class DecodeFailure(Exception):
    """Received word is outside the decoding radius."""


class BCHCode:
    """Shortened BCH code with k message symbols over GF(2^b) embedded in GF(2^m).

    ``d`` is the design distance; the generator has the consecutive roots
    alpha^1 .. alpha^(d-1).  ``parity_len`` pads the parity part with zero
    symbols when a caller needs a fixed width (it must be at least the
    generator degree).
    """

    def __init__(self, m: int, k: int, d: int, b: int | None = None,
                 parity_len: int | None = None, field: GF2m | None = None):
        b = m if b is None else b
        if m % b:
            raise ValueError(f"subfield degree {b} does not divide {m}")
        if d < 1 or k < 1:
            raise ValueError("need k >= 1 and d >= 1")
        self.F = field if field is not None else gf2m(m)
        self.m, self.b, self.k, self.d = m, b, k, d
        self.q = 1 << b
        self.t = (d - 1) // 2
        self.natural_length = (1 << m) - 1
        self._setup_subfield()
        self.gen = self._generator()
        self.r = len(self.gen) - 1
        self.parity_len = self.r if parity_len is None else parity_len
        if self.parity_len < self.r:
            raise ValueError(f"parity length {self.parity_len} below generator degree {self.r}")
        if k + self.r > self.natural_length:
            raise ValueError(f"length {k + self.r} exceeds natural length {self.natural_length}")
        self.n = k + self.parity_len
        self.n_eff = k + self.r

    # -- construction --------------------------------------------------------

    def _setup_subfield(self) -> None:
        F, b, m = self.F, self.b, self.m
        if b == m or b == 1:
            self._to_el = self._to_sym = None
            return
        beta = F.alpha_pow(((1 << m) - 1) // ((1 << b) - 1))
        basis = [F.pow(beta, i) for i in range(b)]
        to_el = [0] * (1 << b)
        for v in range(1 << b):
            e = 0
            for i in range(b):
                if (v >> i) & 1:
                    e ^= basis[i]
            to_el[v] = e
        self._to_el = to_el
        self._to_sym = {e: v for v, e in enumerate(to_el)}
        if len(self._to_sym) != 1 << b:
            raise AssertionError("subfield basis is degenerate")

    def sym_to_el(self, v: int) -> int:
        return v if self._to_el is None else self._to_el[v]

    def el_to_sym(self, e: int) -> int:
        if self._to_sym is None:
            if self.b == 1 and e > 1:
                raise KeyError(e)
            return e
        return self._to_sym[e]

    def _generator(self) -> list:
        """Generator coefficients, highest degree first, monic."""
        F = self.F
        N = self.natural_length
        roots = set()
        for j in range(1, self.d):
            c = j % N
            while c not in roots:
                roots.add(c)
                c = (c * self.q) % N
        g = [1]
        for e in sorted(roots):
            a = F.alpha_pow(e)
            # g(x) * (x - a)
            out = g + [0]
            for i in range(len(g)):
                out[i + 1] ^= F.mul(g[i], a)
            g = out
        for c in g:
            self.el_to_sym(c)  # raises if a coefficient left the subfield
        return g

    # -- encoding ------------------------------------------------------------

    def parity(self, msg) -> list:
        """Parity symbols (padded) for a length-k message of symbol ints."""
        if len(msg) != self.k:
            raise ValueError(f"message length {len(msg)} != {self.k}")
        F, g, r = self.F, self.gen, self.r
        rem = [0] * r
        for v in msg:
            if not 0 <= v < self.q:
                raise ValueError(f"symbol {v} outside GF(2^{self.b})")
            fb = self.sym_to_el(v) ^ (rem[0] if r else 0)
            if r:
                rem = rem[1:] + [0]
                if fb:
                    for i in range(r):
                        rem[i] ^= F.mul(fb, g[i + 1])
        return [self.el_to_sym(c) for c in rem] + [0] * (self.parity_len - r)

    def encode(self, msg) -> list:
        msg = list(msg)
        return msg + self.parity(msg)

    def message(self, word) -> list:
        return list(word[: self.k])

    # -- checks --------------------------------------------------------------

    def syndromes(self, word) -> list:
        """S_j for j = 1..d-1 over the unpadded part of ``word``."""
        F, n = self.F, self.n_eff
        w = [self.sym_to_el(v) for v in word[:n]]
        out = []
        for j in range(1, self.d):
            s = 0
            aj = F.alpha_pow(j)
            for v in w:  # Horner in alpha^j
                s = F.mul(s, aj) ^ v
            out.append(s)
        return out

    def is_codeword(self, word) -> bool:
        if len(word) != self.n or any(word[self.n_eff:]):
            return False
        return not any(self.syndromes(word))

    # -- decoding ------------------------------------------------------------

    def decode(self, word, erasures=(), max_errors: int | None = None) -> list:
        """Nearest codeword within the errors-and-erasures radius.

        ``word`` entries at erased positions are ignored (``None`` allowed).
        Padding positions are discarded.  Raises DecodeFailure when no
        codeword lies within 2e + f <= d - 1.
        """
        if len(word) != self.n:
            raise ValueError(f"word length {len(word)} != {self.n}")
        F, n = self.F, self.n_eff
        eras = sorted({p for p in erasures if p < n})
        f = len(eras)
        if f > self.d - 1:
            raise DecodeFailure("too many erasures")
        eset = set(eras)
        w = [0 if i in eset else word[i] for i in range(n)]
        if any(v is None for v in w):
            raise ValueError("None entries must be listed as erasures")
        S = self.syndromes(w)
        if not any(S):
            return w + [0] * (self.parity_len - self.r)
        loc = [F.alpha_pow(n - 1 - p) for p in eras]
        # erasure locator Gamma(x) = prod (1 - X x), low degree first
        gamma = [1]
        for X in loc:
            nxt = gamma + [0]
            for i in range(len(gamma)):
                nxt[i + 1] ^= F.mul(gamma[i], X)
            gamma = nxt
        # T_j = sum_l Gamma_l S_{j-l}, j = f+1..d-1 (S_j stored at S[j-1])
        T = {}
        for j in range(f + 1, self.d):
            acc = 0
            for l_, gl in enumerate(gamma):
                acc ^= F.mul(gl, S[j - l_ - 1])
            T[j] = acc
        limit = (self.d - 1 - f) // 2
        if max_errors is not None:
            limit = min(limit, max_errors)
        valid = [p for p in range(n) if p not in eset]
        for nu in range(0, limit + 1):
            lam = self._locator(T, f, nu)
            if lam is None:
                continue
            err_pos = []
            for p in valid:
                xinv = F.alpha_pow(-(n - 1 - p))
                acc = 0
                for c in reversed(lam):  # lam low degree first
                    acc = F.mul(acc, xinv) ^ c
                if acc == 0:
                    err_pos.append(p)
            if len(err_pos) != nu:
                continue
            fixed = self._solve_values(w, S, err_pos, eras, n)
            if fixed is not None:
                return fixed + [0] * (self.parity_len - self.r)
        raise DecodeFailure("no codeword within the decoding radius")

    def _locator(self, T: dict, f: int, nu: int):
        if nu == 0:
            return [1] if not any(T.values()) else None
        F = self.F
        rows, rhs = [], []
        for j in range(f + nu + 1, self.d):
            rows.append([T[j - l_] for l_ in range(1, nu + 1)])
            rhs.append(T[j])
        if not rows:
            return None
        sol = solve_linear(F, rows, rhs)
        if sol is None:
            return None
        return [1] + sol

    def _solve_values(self, w, S, err_pos, eras, n):
        F = self.F
        pos = list(err_pos) + list(eras)
        if not pos:
            return None
        X = [F.alpha_pow(n - 1 - p) for p in pos]
        rows = [[F.pow(x, j) for x in X] for j in range(1, self.d)]
        Y = solve_linear(F, rows, S)
        if Y is None:
            return None
        out = list(w)
        for idx, (p, y) in enumerate(zip(pos, Y)):
            if idx < len(err_pos) and y == 0:
                return None
            try:
                e = self.el_to_sym(y)
            except KeyError:
                return None
            out[p] ^= e
        if any(self.syndromes(out)):
            return None
        return out

    def decode_message(self, word, erasures=(), max_errors: int | None = None) -> list:
        return self.decode(word, erasures, max_errors)[: self.k]

    # -- matrices ------------------------------------------------------------

    def generator_matrix(self) -> list:
        """k x n systematic generator over the symbol field (symbol ints)."""
        rows = []
        for i in range(self.k):
            e = [0] * self.k
            e[i] = 1
            rows.append(self.encode(e))
        return rows

    def parity_check_matrix(self) -> list:
        """(d-1) x n matrix over GF(2^m): row j holds alpha^(j(n-1-i)); zero on padding."""
        F, n = self.F, self.n_eff
        H = []
        for j in range(1, self.d):
            H.append([F.alpha_pow(j * (n - 1 - i)) for i in range(n)]
                     + [0] * (self.parity_len - self.r))
        return H

    def min_distance_exhaustive(self) -> int:
        """Minimum nonzero codeword weight by full enumeration (q^k words)."""
        best = self.n
        for msg in itertools.product(range(self.q), repeat=self.k):
            if any(msg):
                best = min(best, sum(1 for v in self.encode(msg) if v))
        return best

    def to_json(self) -> dict:
        return {
            "field": self.F.spec(),
            "symbol_bits": self.b,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "generator_polynomial": [hex(c) for c in self.gen],
            "generator_rows": [_row_hex(r, self.b) for r in self.generator_matrix()],
        }

    def __repr__(self) -> str:
        return (f"BCHCode(n={self.n}, k={self.k}, d={self.d}, "
                f"GF(2^{self.b}) in GF(2^{self.m}))")


def _row_hex(row, b: int) -> str:
    v = 0
    for s in row:
        v = (v << b) | s
    return hex(v)


class BinaryBCH(BCHCode):
    """Binary BCH code with int-packed fast paths.

    Packed convention: bit i of an int is word position i (so a
    CharacteristicVector mask is directly a message).  Parity ints hold
    the unpadded r parity bits, bit j = parity position j.
    """

    TABLE_LIMIT = 200_000

    def __init__(self, m: int, k: int, d: int, parity_len: int | None = None):
        super().__init__(m, k, d, b=1, parity_len=parity_len)
        self._cols = []
        for i in range(k):
            e = [0] * k
            e[i] = 1
            self._cols.append(_pack(self.parity(e)[: self.r]))

    def parity_int(self, msg: int) -> int:
        p, i = 0, 0
        cols = self._cols
        while msg:
            if msg & 1:
                p ^= cols[i]
            msg >>= 1
            i += 1
        return p

    def parity_bits(self, msg: int) -> list:
        """Padded parity bits for a packed message."""
        p = self.parity_int(msg)
        return [(p >> j) & 1 for j in range(self.parity_len)]

    @cached_property
    def pattern_count(self) -> int:
        return sum(math.comb(self.n_eff, w) for w in range(self.t + 1))

    @cached_property
    def _table(self):
        """Syndrome -> (message error mask, parity error mask) for weight <= t."""
        table = {}
        n, k = self.n_eff, self.k
        for w in range(self.t + 1):
            for pos in itertools.combinations(range(n), w):
                em = ep = 0
                for p in pos:
                    if p < k:
                        em |= 1 << p
                    else:
                        ep |= 1 << (p - k)
                syn = self.parity_int(em) ^ ep
                if syn in table:
                    return None  # distance below 2t+1
                table[syn] = (em, ep)
        return table

    def table_is_sound(self) -> bool:
        """All patterns of weight <= t have distinct syndromes (distance >= 2t+1)."""
        return self._table is not None

    def decode_int(self, msg: int, par: int) -> int:
        """Corrected packed message from packed received message and parity bits."""
        par &= (1 << self.r) - 1
        syn = self.parity_int(msg) ^ par
        if not syn:
            return msg
        if self.pattern_count <= self.TABLE_LIMIT and self._table is not None:
            hit = self._table.get(syn)
            if hit is None:
                raise DecodeFailure("syndrome outside the coset-leader table")
            return msg ^ hit[0]
        word = _unpack(msg, self.k) + _unpack(par, self.r) + [0] * (self.parity_len - self.r)
        return _pack(self.decode(word)[: self.k])


def _pack(bits) -> int:
    v = 0
    for i, b in enumerate(bits):
        if b:
            v |= 1 << i
    return v


def _unpack(v: int, n: int) -> list:
    return [(v >> i) & 1 for i in range(n)]


# --- named constructors ------------------------------------------------------

def rs_code(m: int, n: int, k: int) -> BCHCode:
    """Systematic [n, k, n-k+1] Reed-Solomon code over GF(2^m)."""
    if n > (1 << m) - 1:
        raise ValueError(f"RS length {n} exceeds field size limit {(1 << m) - 1}")
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return BCHCode(m, k, n - k + 1, b=m)


def rs_decode(code: BCHCode, word, erasures=(), max_errors: int | None = None,
              max_erasures: int | None = None) -> list:
    """Message of the unique codeword within radius; DecodeFailure otherwise."""
    if max_erasures is not None and len(set(erasures)) > max_erasures:
        raise DecodeFailure("erasure budget exceeded")
    return code.decode_message(word, erasures, max_errors)


def bch_systematic(ell: int, delta: int) -> BinaryBCH:
    """Binary [2^ell + delta(ell+1), 2^ell, 2 delta + 1] systematic code.

    Shortened primitive BCH of natural length 2^(ell+1) - 1; the parity
    part is zero-padded to exactly delta(ell+1) bits.
    """
    if ell < 1 or delta < 1:
        raise ValueError("ell and delta must be positive")
    if delta * (ell + 1) > (1 << ell) - 1:
        raise ValueError(f"delta={delta} exceeds (2^ell-1)/(ell+1) for ell={ell}")
    return BinaryBCH(ell + 1, 1 << ell, 2 * delta + 1, parity_len=delta * (ell + 1))


def binary_bch(k: int, eps: int) -> BinaryBCH:
    """Shortest shortened binary BCH code with k message bits correcting eps errors."""
    m = 2
    while True:
        try:
            return BinaryBCH(m, k, 2 * eps + 1)
        except ValueError:
            m += 1
            if m > 30:
                raise


def field_code(m: int, n: int, t: int) -> BCHCode:
    """Code of length n over GF(2^m) correcting t symbol errors.

    Reed-Solomon when n fits the field, otherwise a BCH code over GF(2^m)
    inside the smallest extension GF(2^(m j)) that is long enough.
    """
    j = 1
    while n > (1 << (m * j)) - 1:
        j += 1
    probe = BCHCode(m * j, 1, 2 * t + 1, b=m)
    if n - probe.r < 1:
        raise ValueError(f"no [{n}, >=1] code over GF(2^{m}) corrects {t} errors")
    return BCHCode(m * j, n - probe.r, 2 * t + 1, b=m)
