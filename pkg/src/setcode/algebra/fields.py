"""Finite fields GF(2^m) and GF(p).

Elements are plain ints.  For GF(2^m) an element is the bit mask of its
polynomial-basis coordinates (bit i <-> x^i), so field addition is XOR and
``int.to_bytes`` style conversions from bit strings are linear maps.
"""
from __future__ import annotations

from functools import lru_cache

TABLE_MAX_DEGREE = 20


# --- GF(2)[x] helpers on int-encoded polynomials ------------------------------

def _deg(a: int) -> int:
    return a.bit_length() - 1


def poly2_mulmod(a: int, b: int, mod: int) -> int:
    m = _deg(mod)
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> m) & 1:
            a ^= mod
    return r


def poly2_mod(a: int, mod: int) -> int:
    dm = _deg(mod)
    while a and _deg(a) >= dm:
        a ^= mod << (_deg(a) - dm)
    return a


def poly2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly2_mod(a, b)
    return a


def _prime_factors(n: int) -> list:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(poly: int) -> bool:
    """Rabin's irreducibility test over GF(2)."""
    m = _deg(poly)
    if m < 1:
        return False
    if m == 1:
        return True

    def x_pow_2k(k: int) -> int:
        r = 0b10
        for _ in range(k):
            r = poly2_mulmod(r, r, poly)
        return r

    if x_pow_2k(m) != 0b10:
        return False
    for p in _prime_factors(m):
        h = x_pow_2k(m // p) ^ 0b10
        if poly2_gcd(poly, h) != 1:
            return False
    return True


def _is_primitive_small(poly: int) -> bool:
    m = _deg(poly)
    if not poly & 1:
        return False
    order = (1 << m) - 1
    x = a = poly2_mod(0b10, poly)
    for i in range(1, order):
        if a == 1:
            return False
        a = poly2_mulmod(a, x, poly)
    return a == 1


@lru_cache(maxsize=None)
def default_modulus(m: int) -> int:
    """Fixed modulus per degree.

    Up to ``TABLE_MAX_DEGREE`` this is the least primitive polynomial (x then
    generates the multiplicative group, which the log tables need); above it
    the least irreducible polynomial.
    """
    if m < 1:
        raise ValueError("degree must be positive")
    for cand in range((1 << m) + 1, 1 << (m + 1), 2):
        if m <= TABLE_MAX_DEGREE:
            if _is_primitive_small(cand):
                return cand
        elif is_irreducible(cand):
            return cand
    raise AssertionError("unreachable")


class GF2m:
    """GF(2^m) with log/antilog tables for small m, carry-less arithmetic above."""

    characteristic = 2

    def __init__(self, m: int, modulus: int | None = None):
        self.m = m
        self.degree = m
        self.size = 1 << m
        self.modulus = default_modulus(m) if modulus is None else modulus
        if _deg(self.modulus) != m or not is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus:#x} is not irreducible of degree {m}")
        self.q1 = self.size - 1
        self.tables = m <= TABLE_MAX_DEGREE
        if self.tables:
            exp = [0] * (2 * self.q1)
            log = [0] * self.size
            a = 1
            for i in range(self.q1):
                exp[i] = a
                log[a] = i
                a <<= 1
                if a & self.size:
                    a ^= self.modulus
            if a != 1 or (self.q1 > 1 and len(set(exp[: self.q1])) != self.q1):
                raise ValueError(f"modulus {self.modulus:#x} is not primitive")
            exp[self.q1:] = exp[: self.q1]
            self.exp, self.log = exp, log

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, modulus={self.modulus:#x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF2m) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self) -> int:
        return hash(("GF2m", self.m, self.modulus))

    def spec(self) -> dict:
        return {"characteristic": 2, "degree": self.m, "modulus": hex(self.modulus)}

    zero, one = 0, 1

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    @staticmethod
    def neg(a: int) -> int:
        return a

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.tables:
            return self.exp[self.log[a] + self.log[b]]
        return poly2_mulmod(a, b, self.modulus)

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.tables:
            return self.exp[(self.q1 - self.log[a]) % self.q1]
        return self.pow(a, self.size - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if not a:
            return 0 if e else 1
        if self.tables:
            return self.exp[(self.log[a] * e) % self.q1]
        r = 1
        while e:
            if e & 1:
                r = poly2_mulmod(r, a, self.modulus)
            a = poly2_mulmod(a, a, self.modulus)
            e >>= 1
        return r

    def alpha_pow(self, e: int) -> int:
        """x^e, x being the class of the indeterminate."""
        if self.tables:
            return self.exp[e % self.q1]
        return self.pow(2, e % self.q1)


class GFp:
    """Prime field Z_p."""

    degree = 1

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = self.characteristic = self.size = p
        self.modulus = p

    def __repr__(self) -> str:
        return f"GFp({self.p})"

    def spec(self) -> dict:
        return {"characteristic": self.p, "degree": 1, "modulus": hex(self.p)}

    zero, one = 0, 1

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        return pow(a, e, self.p)


@lru_cache(maxsize=None)
def gf2m(m: int) -> GF2m:
    return GF2m(m)


def solve_linear(F, A: list, b: list):
    """Solve A y = b over field F by Gauss-Jordan elimination.

    Returns one solution (free variables set to zero) or ``None`` when the
    system is inconsistent.  ``A`` is a list of rows.
    """
    rows = [list(r) + [v] for r, v in zip(A, b)]
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][-1]:
            return None
    y = [0] * ncols
    for i, c in enumerate(pivots):
        y[c] = rows[i][-1]
    return y


def rank(F, A: list) -> int:
    rows = [list(r) for r in A]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, v) for v in rows[r]]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(rows[i], rows[r])]
        r += 1
    return r
