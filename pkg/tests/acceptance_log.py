"""Collects per-part outcomes of the acceptance suite and folds them into one line per criterion."""
import functools

TITLES = {
    1: "bullet (0,1,•)_L ball decoding and toy verification",
    2: "bullet size formula by enumeration",
    3: "bullet redundancy within the closed-form bound and below 3 delta L",
    4: "loss-only outcode: loss patterns, size, redundancy",
    5: "hash-sum code: single-deletion sweep and census",
    6: "four-stage code: substitution ball and redundancy bound",
    7: "limited-magnitude codes: mod-p wrapper ball, trials, size",
    8: "bounds: occupancy count, packing dominance, sandwich",
    9: "primitive suites at full scale",
}

_parts: dict = {}


def record(n: int, part: str, ok: bool, note: str = "") -> None:
    _parts.setdefault(n, []).append((part, ok, note))
    print(f"{'PASS' if ok else 'FAIL'} [{n}] {part}{': ' + note if note else ''}")


def part(n: int, name: str):
    """Decorator: record the wrapped test's outcome as one part of criterion n."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                note = fn(*args, **kwargs)
            except BaseException as e:
                record(n, name, False, f"{type(e).__name__}: {e}"[:200])
                raise
            record(n, name, True, note or "")
        return run
    return wrap


def summary() -> list:
    out = []
    for n in sorted(_parts):
        parts = _parts[n]
        ok = all(p[1] for p in parts)
        failed = [f"{p[0]} ({p[2]})" if p[2] else p[0] for p in parts if not p[1]]
        line = f"{'PASS' if ok else 'FAIL'}  criterion {n}: {TITLES.get(n, '')}"
        if failed:
            line += " | failed: " + "; ".join(failed)
        out.append(line)
    return out
