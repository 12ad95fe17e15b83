"""Exact evaluation of the size and redundancy bounds.

Everything is big-integer or rational until the last step.  Inequalities of
the form ``log2(x) <= sum_i c_i log2(b_i) + k log2(e)`` are decided exactly
by :class:`LogBound` (raising both sides to a common power and bracketing
e^n between rational Taylor sums).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

E = "e"


# --- exact log comparisons ---------------------------------------------------------

def exp_bracket(n: int, terms: int) -> tuple:
    """Rationals lo <= e^n <= hi for integer n >= 0."""
    lo = Fraction(0)
    term = Fraction(1)
    for j in range(terms):
        lo += term
        term = term * n / (j + 1)
    # remainder of the series is at most term * e^n <= term * 3^n
    return lo, lo + term * 3 ** n


@dataclass
class LogBound:
    """The real number sum_b coeff[b] * log2(b); the key ``E`` stands for Euler's number."""

    coeff: dict = field(default_factory=dict)

    @classmethod
    def of(cls, *pairs) -> "LogBound":
        lb = cls()
        for c, b in pairs:
            lb = lb + cls({b: Fraction(c)})
        return lb

    @classmethod
    def bits(cls, c) -> "LogBound":
        return cls({2: Fraction(c)})

    def __add__(self, other: "LogBound") -> "LogBound":
        out = dict(self.coeff)
        for b, c in other.coeff.items():
            out[b] = out.get(b, 0) + Fraction(c)
        return LogBound({b: c for b, c in out.items() if c})

    def value(self) -> float:
        return float(sum(float(c) * (math.log2(math.e) if b == E else math.log2(b))
                         for b, c in self.coeff.items()))

    def ge_log2(self, x: Fraction, strict: bool = False) -> bool:
        """Exactly decide log2(x) <= self (or < with ``strict``)."""
        x = Fraction(x)
        if x <= 0:
            raise ValueError("log of a non-positive number")
        D = 1
        for c in self.coeff.values():
            D = D * Fraction(c).denominator // math.gcd(D, Fraction(c).denominator)
        lhs, rhs = x ** D, Fraction(1)
        k = 0
        for b, c in self.coeff.items():
            cD = Fraction(c) * D
            assert cD.denominator == 1
            cD = int(cD)
            if b == E:
                k = cD
            elif cD >= 0:
                rhs *= Fraction(b) ** cD
            else:
                lhs *= Fraction(b) ** (-cD)
        if k == 0:
            return lhs < rhs if strict else lhs <= rhs
        # e^k is irrational for k != 0, so equality cannot occur and strictness is moot
        for terms in range(8, 4000, 8):
            lo, hi = exp_bracket(abs(k), terms)
            if k > 0:
                if lhs <= rhs * lo:
                    return True
                if lhs >= rhs * hi:
                    return False
            else:
                if lhs * hi <= rhs:
                    return True
                if lhs * lo >= rhs:
                    return False
        raise ArithmeticError("could not separate the two sides")


def redundancy_ratio(total: int, size: int) -> Fraction:
    """C(q^L, M) / |code| as an exact fraction; its log2 is the redundancy in bits."""
    return Fraction(total, size)


# --- packing bounds ----------------------------------------------------------------

def ub_size_bullet_S(M: int, L: int, s: int, t: int) -> int:
    """Size bound for codes against s losses and t arbitrary substitutions or edits."""
    if s + t > M:
        raise ValueError("need s + t <= M")
    k = max(M - s - 2 * t, 0)
    return math.comb(2 ** L, k) // math.comb(M, k)


def ub_size_bullet_D(M: int, L: int, s: int, t: int) -> int:
    """Size bound for codes against s losses and t arbitrary deletion patterns."""
    if s + t > M:
        raise ValueError("need s + t <= M")
    k = M - s - t
    return math.comb(2 ** L, k) // math.comb(M, k)


def lb_redundancy_from_size(M: int, L: int, size_bound: int, q: int = 2) -> float:
    return (math.log2(math.comb(q ** L, M)) - math.log2(size_bound)) / math.log2(q)


def lb_redundancy_bullet(M: int, L: int, s: int, t: int, kind: str) -> float:
    ub = ub_size_bullet_D(M, L, s, t) if kind == "D" else ub_size_bullet_S(M, L, s, t)
    return lb_redundancy_from_size(M, L, max(ub, 1))


# --- occupancy count and the deletion lower bound ------------------------------------

def occupancy_count(L_eps: int, M: int, eps: int) -> int:
    """Multisets of size M over 2^L_eps symbols with every multiplicity <= 2^eps."""
    U, c = 2 ** L_eps, 2 ** eps
    total = 0
    for j in range(0, min(U, M // (c + 1)) + 1):
        total += (-1) ** j * math.comb(U, j) * math.comb(U + M - j * (c + 1) - 1, U - 1)
    return total


def occupancy_dp(U: int, M: int, cap: int) -> int:
    """Same count by dynamic programming over the urns (independent oracle)."""
    ways = [1] + [0] * M
    for _ in range(U):
        nxt = [0] * (M + 1)
        for used, w in enumerate(ways):
            if w:
                for k in range(0, min(cap, M - used) + 1):
                    nxt[used + k] += w
        ways = nxt
    return ways[M]


def _hamming_sum(M: int, t: int, eps: int) -> int:
    return sum(math.comb(M, i) * (2 ** eps - 1) ** i for i in range(t // 2 + 1))


def lb_redundancy_D_eps(M: int, L: int, t: int, eps: int) -> float:
    """log2 of the Hamming-type sum minus 1; valid when L > 3 log M + eps."""
    if not L > 3 * math.log2(M) + eps:
        raise ValueError("bound is only claimed for L > 3 log M + eps")
    return math.log2(_hamming_sum(M, t, eps)) - 1


def lb_redundancy_D_eps_core(M: int, t: int, eps: int) -> float:
    """Leading terms without the O(1): floor(t/2) (log M + eps)."""
    return (t // 2) * (math.log2(M) + eps)


def lb_redundancy_S_eps_one(M: int, L: int, eps: int) -> float:
    """Counting bound for one substituted sequence: outputs S - {x} + {y} are all distinct.

    Each codeword has at least 1 + M (V - M) distinct outputs of size M, with
    V the Hamming ball volume of radius eps; a code with t >= 1 obeys it too.
    """
    V = sum(math.comb(L, i) for i in range(eps + 1))
    return math.log2(1 + M * max(V - M, 0))


# --- construction bounds ------------------------------------------------------------

def bullet_redundancy_bound(delta: int, M: int, L: int) -> LogBound:
    """delta L + (4 delta^2 + 2 delta + 1) log M + 2 delta^2 + delta + 3 log e."""
    return LogBound.of((delta * L + 2 * delta * delta + delta, 2),
                       (4 * delta * delta + 2 * delta + 1, M), (3, E))


def outcode_bound(s: int, L_o: int, h: int) -> LogBound:
    """s L_o + s + h + 2 log e (needs 2^L' >= M^2)."""
    return LogBound.of((s * L_o + s + h, 2), (2, E))


def tcon_redundancy_bound(t: int, eps: int, M: int, L: int) -> LogBound:
    """(8t+2) log M + (2t+1) eps ceil(log L) + (2t+1)(4 eps^2 + 2) + log e - 1."""
    clog = (L - 1).bit_length()
    return LogBound.of((8 * t + 2, M), ((2 * t + 1) * eps * clog + (2 * t + 1) * (4 * eps * eps + 2) - 1, 2),
                       (1, E))


# --- table ----------------------------------------------------------------------------

DASH = "\u2014"


@dataclass(frozen=True)
class BoundReport:
    channel: str
    quantity: str
    value: float | None
    source: str
    note: str = ""

    def cell(self) -> str:
        return DASH if self.value is None else f"{self.value:.3f}"


def table_report(M: int, L: int, s: int, t: int, eps: int) -> list:
    """Bound rows evaluated at one parameter point (bits of redundancy)."""
    lg, lgL = math.log2(M), math.log2(L)
    rows = []
    for kind in ("L", "S", "D"):
        ch = f"({s},{t},•)_{kind}"
        d = s + t if kind == "D" else s + 2 * t
        prev = (s + t) * L + t * lg if kind == "L" else None
        rows.append(BoundReport(ch, "previous lower", prev,
                                "Lenz et al. 2020" if prev is not None else DASH))
        exact = lb_redundancy_bullet(M, L, s, t, kind) if s + t <= M else None
        rows.append(BoundReport(ch, "packing lower (exact)", exact, "packing bound",
                                "low-order terms included"))
        rows.append(BoundReport(ch, "packing lower (leading)", d * L, "packing bound",
                                "o(1) dropped"))
        rows.append(BoundReport(ch, "upper", d * L,
                                "constant-weight existence" if kind == "D"
                                else "Lenz et al. 2020", "o(1) dropped"))
        rows.append(BoundReport(ch, "construction", d * L + (4 * d * d + 2 * d + 1) * lg,
                                "address parity + Reed-Solomon construction", "O(1) dropped"))
    ch = f"(0,{t},{eps})_S"
    rows.append(BoundReport(ch, "previous lower", t * lg + t * eps * lgL, "Lenz et al. 2020",
                            "o-terms dropped"))
    rows.append(BoundReport(ch, "counting lower (exact)", lb_redundancy_S_eps_one(M, L, eps),
                            "single-substitution output count"))
    rows.append(BoundReport(ch, "upper", 2 * t * lg + 2 * t * eps * lgL, "Lenz et al. 2020"))
    rows.append(BoundReport(ch, "construction", (8 * t + 2) * lg + (2 * t + 1) * eps * lgL,
                            "four-stage construction", "O(1) dropped"))
    rows.append(BoundReport(ch, "previous construction", M * math.log2(math.e) + 4 * t * lg
                            + 2 * t * eps * lgL, "Lenz et al. 2019 ISIT"))
    ch = f"(0,{t},{eps})_D"
    rows.append(BoundReport(ch, "previous lower", t * eps * lgL, "Lenz et al. 2020",
                            "o-terms dropped"))
    try:
        exact = lb_redundancy_D_eps(M, L, t, eps)
    except ValueError:
        exact = None
    rows.append(BoundReport(ch, "Hamming-type lower (exact)", exact, "occupancy argument",
                            "requires L > 3 log M + eps"))
    rows.append(BoundReport(ch, "Hamming-type lower (leading)", lb_redundancy_D_eps_core(M, t, eps),
                            "occupancy argument", "O(1) dropped"))
    rows.append(BoundReport(ch, "upper", t * lg + 2 * t * eps * math.log2(L / 2),
                            "Lenz et al. 2020"))
    rows.append(BoundReport(ch, "upper (t=1)", 4 * eps * lgL if t == 1 else None,
                            "hash-sum construction" if t == 1 else DASH))
    ch = f"({s},0,0)"
    rows.append(BoundReport(ch, "previous construction", M * math.log2(math.e) + s * (L - math.ceil(lg)),
                            "Lenz et al. 2020"))
    rows.append(BoundReport(ch, "construction", s * L + 4 * s * math.log2(max(lg, 1)),
                            "hashed address-parity construction", "o(log log M) dropped"))
    return rows


def format_table(rows: list) -> str:
    head = ("channel", "quantity", "bits", "source", "note")
    body = [(r.channel, r.quantity, r.cell(), r.source, r.note) for r in rows]
    widths = [max(len(x[i]) for x in [head] + body) for i in range(5)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(x, widths)).rstrip() for x in [head] + body]
    return "\n".join(lines) + "\n"


def format_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["channel", "quantity", "bits", "source", "note"])
    for r in rows:
        w.writerow([r.channel, r.quantity, r.cell(), r.source, r.note])
    return buf.getvalue()
