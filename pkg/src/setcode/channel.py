"""The (s, t, eps)_T set channel: random corruption, exact error balls, and the correcting-property oracle.

Channel outputs are ``frozenset`` objects of tuples, since deletions and
insertions change sequence lengths.  ``eps=None`` is the bullet case: an
erroneous sequence may become any sequence of the error kind's reach.
"""
from __future__ import annotations

import enum
import itertools
import os
import random
from dataclasses import dataclass
from typing import Iterable, Iterator

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    return int(os.environ.get("SETCODE_BUDGET", DEFAULT_BUDGET))


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the caller's budget."""


class Kind(enum.Enum):
    S = "S"    # substitutions
    D = "D"    # deletions
    L = "L"    # edits: substitutions, insertions, deletions
    LM = "LM"  # limited-magnitude integer perturbations


_BULLET_TOKENS = {"•", "*", "bullet", "inf"}


@dataclass(frozen=True)
class ChannelSpec:
    s: int
    t: int
    eps: int | None
    kind: Kind
    k_plus: int = 0
    k_minus: int = 0

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", Kind(self.kind))
        if self.s < 0 or self.t < 0:
            raise ValueError("s and t must be non-negative")
        if self.eps is not None and self.eps < 0:
            raise ValueError("eps must be non-negative")
        if self.kind is Kind.LM:
            if self.k_plus < 0 or self.k_minus < 0 or self.k_plus + self.k_minus < 1:
                raise ValueError("limited-magnitude errors need k_plus + k_minus >= 1")

    @property
    def bullet(self) -> bool:
        return self.eps is None

    @classmethod
    def parse(cls, text: str) -> "ChannelSpec":
        """Parse ``s:t:eps:KIND[:kplus:kminus]``; eps may be written as •, *, bullet or eps=•."""
        parts = text.strip().split(":")
        if len(parts) not in (4, 6):
            raise ValueError(f"bad channel spec {text!r}; expected s:t:eps:KIND[:kplus:kminus]")
        s, t, eps, kind = parts[:4]
        eps = eps.split("=", 1)[-1]
        e = None if eps in _BULLET_TOKENS else int(eps)
        kp, km = (int(parts[4]), int(parts[5])) if len(parts) == 6 else (0, 0)
        try:
            k = Kind(kind.upper())
        except ValueError:
            raise ValueError(f"unknown error kind {kind!r}") from None
        if k is Kind.LM and len(parts) != 6:
            raise ValueError("LM channel needs kplus and kminus")
        return cls(int(s), int(t), e, k, kp, km)

    def __str__(self) -> str:
        e = "•" if self.eps is None else str(self.eps)
        base = f"{self.s}:{self.t}:{e}:{self.kind.value}"
        if self.kind is Kind.LM:
            base += f":{self.k_plus}:{self.k_minus}"
        return base

    def radius(self, L: int) -> int:
        return L if self.eps is None else self.eps


# --- per-sequence error reach ---------------------------------------------------

def substitution_ball(x: tuple, q: int, radius: int) -> set:
    L = len(x)
    out = set()
    for r in range(min(radius, L) + 1):
        for pos in itertools.combinations(range(L), r):
            choices = [[a for a in range(q) if a != x[p]] for p in pos]
            for vals in itertools.product(*choices):
                y = list(x)
                for p, v in zip(pos, vals):
                    y[p] = v
                out.add(tuple(y))
    return out


def deletion_ball(x: tuple, radius: int) -> set:
    """All subsequences of x obtained by at most ``radius`` deletions."""
    L = len(x)
    out = set()
    for r in range(min(radius, L) + 1):
        for pos in itertools.combinations(range(L), L - r):
            out.add(tuple(x[p] for p in pos))
    return out


def edit_ball(x: tuple, q: int, radius: int) -> set:
    """Words within ``radius`` substitutions/insertions/deletions of x."""
    frontier = {tuple(x)}
    seen = set(frontier)
    for _ in range(radius):
        nxt = set()
        for y in frontier:
            n = len(y)
            for i in range(n):
                nxt.add(y[:i] + y[i + 1:])
                for a in range(q):
                    if a != y[i]:
                        nxt.add(y[:i] + (a,) + y[i + 1:])
            for i in range(n + 1):
                for a in range(q):
                    nxt.add(y[:i] + (a,) + y[i:])
        frontier = nxt - seen
        seen |= frontier
    return seen


def magnitude_ball(x: tuple, q: int, radius: int, k_plus: int, k_minus: int) -> set:
    """Perturb at most ``radius`` positions by e in [-k_minus, k_plus], staying inside Z_q."""
    L = len(x)
    out = set()
    for r in range(min(radius, L) + 1):
        for pos in itertools.combinations(range(L), r):
            choices = [[x[p] + e for e in range(-k_minus, k_plus + 1)
                        if e and 0 <= x[p] + e < q] for p in pos]
            for vals in itertools.product(*choices):
                y = list(x)
                for p, v in zip(pos, vals):
                    y[p] = v
                out.add(tuple(y))
    return out


_OFF = object()  # stands for "some word of another length" in the L-bullet ball


def sequence_reach(x: tuple, q: int, spec: ChannelSpec) -> list:
    """Possible outputs of one erroneous sequence (including x itself).

    For the edit kind with eps = bullet the list holds every length-L word
    plus the marker ``_OFF``: every word of another length is reachable from
    every input, so the ball is enumerated on that quotient.
    """
    L = len(x)
    e = spec.radius(L)
    kind = spec.kind
    if kind is Kind.S:
        if spec.bullet:
            return list(itertools.product(range(q), repeat=L))
        return sorted(substitution_ball(x, q, e))
    if kind is Kind.D:
        return sorted(deletion_ball(x, e))
    if kind is Kind.L:
        if spec.bullet:
            return list(itertools.product(range(q), repeat=L)) + [_OFF]
        return sorted(edit_ball(x, q, e))
    return sorted(magnitude_ball(x, q, e, spec.k_plus, spec.k_minus))


def off_length_placeholders(L: int, count: int) -> list:
    """Canonical distinct words of length != L used for bullet edit outputs."""
    out = []
    n = L - 1
    while len(out) < count:
        if n < 0:
            n = L + 1
        out.append((0,) * n)
        n = n - 1 if n < L else n + 1
    return out


# --- corruption ---------------------------------------------------------------

def corrupt(S: Iterable[tuple], spec: ChannelSpec, seed=None, q: int | None = None) -> frozenset:
    """Sample one admissible channel output.

    ``seed`` may be an int or a ``random.Random``.  The numbers of lost and
    erroneous sequences and of per-sequence errors are drawn uniformly
    within the channel's limits.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    words = sorted(S)
    M = len(words)
    if spec.s + spec.t > M:
        raise ValueError(f"spec {spec} needs s + t <= M = {M}")
    if q is None:
        q = getattr(S, "q", 2)
    L = len(words[0])
    idx = list(range(M))
    rng.shuffle(idx)
    s1 = rng.randint(0, spec.s)
    t1 = rng.randint(0, spec.t)
    lost, victims, rest = idx[:s1], idx[s1:s1 + t1], idx[s1 + t1:]
    out = [words[i] for i in rest]
    for i in victims:
        out.append(_corrupt_one(words[i], q, spec, rng, L))
    return frozenset(out)


def _corrupt_one(x: tuple, q: int, spec: ChannelSpec, rng: random.Random, L: int) -> tuple:
    kind = spec.kind
    if spec.bullet:
        if kind is Kind.S:
            return tuple(rng.randrange(q) for _ in range(L))
        if kind is Kind.D:
            keep = sorted(rng.sample(range(L), rng.randint(0, L)))
            return tuple(x[p] for p in keep)
        if kind is Kind.L:
            n = L if rng.random() < 0.5 else rng.randint(0, 2 * L)
            return tuple(rng.randrange(q) for _ in range(n))
        return tuple(_lm_step(a, q, spec, rng) for a in x)
    e = rng.randint(0, spec.eps)
    y = list(x)
    if kind is Kind.S:
        for p in rng.sample(range(L), min(e, L)):
            y[p] = rng.choice([a for a in range(q) if a != y[p]])
    elif kind is Kind.D:
        for _ in range(min(e, L)):
            del y[rng.randrange(len(y))]
    elif kind is Kind.L:
        for _ in range(e):
            op = rng.randrange(3)
            if op == 0 and y:
                p = rng.randrange(len(y))
                y[p] = rng.choice([a for a in range(q) if a != y[p]])
            elif op == 1 and y:
                del y[rng.randrange(len(y))]
            else:
                y.insert(rng.randint(0, len(y)), rng.randrange(q))
    else:
        for p in rng.sample(range(L), min(e, L)):
            y[p] = _lm_step(y[p], q, spec, rng)
    return tuple(y)


def _lm_step(a: int, q: int, spec: ChannelSpec, rng: random.Random) -> int:
    opts = [a + e for e in range(-spec.k_minus, spec.k_plus + 1) if 0 <= a + e < q]
    return rng.choice(opts)


# --- error balls ------------------------------------------------------------------

def iter_ball(S: Iterable[tuple], spec: ChannelSpec, q: int | None = None,
              budget: int | None = None) -> Iterator[frozenset]:
    """Yield every channel output for input S (duplicates possible).

    Enumerates exactly j lost sequences for each j <= s and min(t, M - j)
    erroneous ones; fewer erroneous sequences are covered because each
    sequence's reach contains the sequence itself.
    """
    words = sorted(S)
    M = len(words)
    if spec.s + spec.t > M:
        raise ValueError(f"spec {spec} needs s + t <= M = {M}")
    if q is None:
        q = getattr(S, "q", 2)
    L = len(words[0])
    if budget is None:
        budget = default_budget()
    reach = {}
    produced = 1
    yield frozenset(words)  # the error-free output comes first
    for j in range(spec.s + 1):
        for lost in itertools.combinations(range(M), j):
            remaining = [i for i in range(M) if i not in lost]
            tv = min(spec.t, len(remaining))
            for victims in itertools.combinations(remaining, tv):
                base = [words[i] for i in remaining if i not in victims]
                opts = []
                for i in victims:
                    if i not in reach:
                        reach[i] = sequence_reach(words[i], q, spec)
                    opts.append(reach[i])
                for outs in itertools.product(*opts):
                    produced += 1
                    if produced > budget:
                        raise BudgetExceeded(f"error ball exceeds budget {budget}")
                    n_off = sum(1 for o in outs if o is _OFF)
                    if not n_off:
                        yield frozenset(base + list(outs))
                        continue
                    kept = [o for o in outs if o is not _OFF]
                    for c in range(1, n_off + 1):
                        yield frozenset(base + kept + off_length_placeholders(L, c))


@dataclass(frozen=True)
class ErrorBall:
    center: frozenset
    spec: ChannelSpec
    members: frozenset

    def __contains__(self, item) -> bool:
        return frozenset(item) in self.members

    def __len__(self) -> int:
        return len(self.members)


def error_ball(S: Iterable[tuple], spec: ChannelSpec, q: int | None = None,
               budget: int | None = None) -> ErrorBall:
    if q is None:
        q = getattr(S, "q", 2)
    members = frozenset(iter_ball(S, spec, q, budget))
    return ErrorBall(frozenset(S), spec, members)


def canonical_output(out: Iterable[tuple], L: int, spec: ChannelSpec) -> frozenset:
    """Map a sampled output onto the enumerated ball's representative.

    Only the bullet edit kind uses a quotient (off-length words become the
    canonical placeholders); other kinds are returned unchanged.
    """
    out = frozenset(out)
    if not (spec.kind is Kind.L and spec.bullet):
        return out
    full = [x for x in out if len(x) == L]
    n_off = len(out) - len(full)
    return frozenset(full + off_length_placeholders(L, n_off))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: tuple | None = None  # (i, j, common output)

    def __bool__(self) -> bool:
        return self.ok


def verify_correcting(codebook: list, spec: ChannelSpec, q: int | None = None,
                      budget: int | None = None) -> Verdict:
    """Exhaustively check that the error balls of all codewords are pairwise disjoint."""
    if budget is None:
        budget = default_budget()
    owner = {}
    spent = 0
    for i, S in enumerate(codebook):
        seen_here = set()
        try:
            for out in iter_ball(S, spec, q, budget - spent):
                spent += 1
                if out in seen_here:
                    continue
                seen_here.add(out)
                j = owner.get(out)
                if j is not None and j != i:
                    return Verdict(False, (j, i, out))
                owner[out] = i
        except BudgetExceeded:
            raise BudgetExceeded(f"error balls exceed budget {budget}") from None
    return Verdict(True)
