"""Command-line front end: encode, decode, simulate, verify, bounds, census.

Exit codes: 0 success / PASS, 1 FAIL, 2 usage or input error, 3 inconclusive.
Codec parameters come from a JSON file whose ``family`` key (or the
``--family`` option) selects the construction.
"""
from __future__ import annotations

import argparse
import json
import math
import random
import sys

from .bounds import format_csv, format_table, table_report
from .bullet import BulletCodec, BulletParams
from .channel import BudgetExceeded, ChannelSpec, Kind, corrupt, default_budget, verify_correcting
from .codec import DecodeError, SetCodec
from .concat import OutcodeCodec, OutcodeParams, concat_deletion, concat_substitution
from .core import format_set, parse_set
from .lm import LmCodec, LmParams, ModWrapCodec, ModWrapParams
from .noloss import HashSumCodec, HashSumParams, TconCodec, TconParams, best_a, census, default_hash

FAMILIES = ("bullet", "outcode", "concat-S", "concat-D", "hashsum", "tcon", "lm", "modwrap")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def build_codec(params: dict, family: str | None = None) -> SetCodec:
    family = family or params.get("family")
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose one of {', '.join(FAMILIES)}")
    try:
        if family == "bullet":
            return BulletCodec(BulletParams.from_json(params))
        if family == "outcode":
            return OutcodeCodec(OutcodeParams.from_json(params))
        if family in ("concat-S", "concat-D"):
            outer = OutcodeCodec(OutcodeParams.from_json(params["outer"]))
            make = concat_substitution if family == "concat-S" else concat_deletion
            return make(outer, int(params.get("eps", 1)))
        if family == "hashsum":
            return HashSumCodec(HashSumParams.from_json(params))
        if family == "tcon":
            return TconCodec(TconParams.from_json(params))
        if family == "lm":
            return LmCodec(LmParams.from_json(params))
        mp = ModWrapParams(int(params["p"]), int(params["q"]), int(params["k_plus"]),
                           int(params["k_minus"]), int(params["eps"]))
        return ModWrapCodec(mp, TconCodec(TconParams.from_json(params["inner"])))
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"invalid {family} parameters: {e}") from None


def capability(codec: SetCodec) -> ChannelSpec:
    """The channel the codec is built to correct."""
    fam = getattr(codec, "family", "")
    if isinstance(codec, BulletCodec):
        p = codec.p
        return ChannelSpec(p.s, p.t, None, p.kind)
    if isinstance(codec, OutcodeCodec):
        return ChannelSpec(codec.p.s, 0, 0, Kind.S)
    if fam in ("concat-S", "concat-D"):
        s = codec.outer.p.s
        return ChannelSpec(s, codec.M - s, codec.inner.eps, Kind.S if fam == "concat-S" else Kind.D)
    if isinstance(codec, HashSumCodec):
        return ChannelSpec(0, 1, codec.p.eps, Kind.D)
    if isinstance(codec, TconCodec):
        return ChannelSpec(0, codec.p.t, codec.p.eps, Kind.S)
    if isinstance(codec, LmCodec):
        p = codec.p
        return ChannelSpec(p.s, p.t, None, Kind.LM, p.k_plus, p.k_minus)
    if isinstance(codec, ModWrapCodec):
        inner = codec.inner
        return ChannelSpec(0, inner.p.t, codec.mp.eps, Kind.LM, codec.mp.k_plus, codec.mp.k_minus)
    raise UsageError(f"no declared capability for {codec!r}")


def within(spec: ChannelSpec, cap: ChannelSpec) -> bool:
    if spec.s > cap.s or spec.t > cap.t:
        return False
    if spec.t == 0:
        return True  # losses only: every kind is the same channel
    if cap.kind is Kind.L and cap.bullet:
        ok_kind = spec.kind in (Kind.S, Kind.D, Kind.L)
    elif cap.kind is Kind.S and cap.bullet:
        ok_kind = spec.kind is Kind.S
    else:
        ok_kind = spec.kind is cap.kind
    if not ok_kind:
        return False
    if cap.kind is Kind.LM and (spec.k_plus > cap.k_plus or spec.k_minus > cap.k_minus):
        return False
    if cap.bullet:
        return True
    return not spec.bullet and spec.eps <= cap.eps


def _load_params(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read params file {path}: {e}") from None


def _read_index(path: str) -> int:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read message file: {e}") from None
    tokens = text.split()
    if not tokens:
        raise UsageError("message file is empty")
    try:
        return int(tokens[0])
    except ValueError:
        raise UsageError(f"message must be a decimal integer, got {tokens[0]!r}") from None


def _codec_from_args(args) -> SetCodec:
    return build_codec(_load_params(args.params), args.family)


def _write(path: str | None, text: str, out) -> None:
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


# --- commands ---------------------------------------------------------------------

def cmd_encode(args, out, err) -> int:
    codec = _codec_from_args(args)
    index = _read_index(args.message)
    size = codec.size()
    if not 0 <= index < size:
        raise UsageError(f"message {index} out of range [0, {size - 1}]")
    S = codec.encode_index(index)
    _write(args.output, format_set(S, codec.q, codec.L), out)
    err.write(f"redundancy: {codec.redundancy():.6f} (q-ary symbols), size: {size}\n")
    return EXIT_OK


def cmd_decode(args, out, err) -> int:
    codec = _codec_from_args(args)
    try:
        with open(args.input) as fh:
            _, _, received = parse_set(fh.read(), strict=False)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read set file: {e}") from None
    try:
        index = codec.decode_index(received)
    except (DecodeError, ValueError) as e:
        err.write(f"decode failure: {e}\n")
        return EXIT_FAIL
    _write(args.output, f"{index}\n", out)
    return EXIT_OK


def cmd_simulate(args, out, err) -> int:
    codec = _codec_from_args(args)
    try:
        spec = ChannelSpec.parse(args.spec)
    except ValueError as e:
        raise UsageError(str(e)) from None
    cap = capability(codec)
    inside = within(spec, cap)
    if not inside and not args.stress:
        raise UsageError(f"spec {spec} exceeds the code's capability {cap}; pass --stress to run anyway")
    rng = random.Random(args.seed)
    size = codec.size()
    ok = 0
    for _ in range(args.trials):
        index = rng.randrange(size)
        S = codec.encode_index(index)
        received = corrupt(S, spec, rng, q=codec.q)
        try:
            if codec.decode_index(received) == index:
                ok += 1
        except (DecodeError, ValueError):
            pass
    out.write(f"family: {codec.family}\nspec: {spec}\ncapability: {cap}\n"
              f"mode: {'within capability' if inside else 'stress'}\nseed: {args.seed}\n"
              f"successes: {ok}/{args.trials}\n")
    if inside and ok != args.trials:
        return EXIT_FAIL
    return EXIT_OK


def spread_indices(size: int, count: int) -> list:
    """count distinct indices spread evenly over range(size)."""
    count = min(count, size)
    return sorted({(i * size) // count for i in range(count)})


def cmd_verify(args, out, err) -> int:
    codec = _codec_from_args(args)
    try:
        spec = ChannelSpec.parse(args.spec)
    except ValueError as e:
        raise UsageError(str(e)) from None
    budget = args.budget if args.budget is not None else default_budget()
    size = codec.size()
    if args.codewords is not None:
        indices = spread_indices(size, args.codewords)
        scope = f"{len(indices)} of {size} codewords"
    elif size <= args.max_codewords:
        indices = list(range(size))
        scope = f"full codebook ({size} codewords)"
    else:
        out.write(f"INCONCLUSIVE: codebook has {size} codewords (limit {args.max_codewords}); "
                  f"pass --codewords N to check a subset\n")
        return EXIT_INCONCLUSIVE
    if len(indices) > budget:
        out.write(f"INCONCLUSIVE: {len(indices)} codewords exceed the budget {budget}\n")
        return EXIT_INCONCLUSIVE
    book = [codec.encode_index(i) for i in indices]
    try:
        verdict = verify_correcting(book, spec, q=codec.q, budget=budget)
    except BudgetExceeded as e:
        out.write(f"INCONCLUSIVE: {e}\n")
        return EXIT_INCONCLUSIVE
    if verdict.ok:
        out.write(f"PASS: {spec} on {scope}\n")
        return EXIT_OK
    i, j, shared = verdict.witness
    out.write(f"FAIL: {spec} on {scope}\n"
              f"codewords with messages {indices[i]} and {indices[j]} share the output\n")
    out.write(format_set(shared, codec.q, codec.L))
    return EXIT_FAIL


def cmd_bounds(args, out, err) -> int:
    rows = table_report(args.M, args.L, args.s, args.t, args.eps)
    out.write(format_csv(rows) if args.csv else format_table(rows))
    return EXIT_OK


def cmd_census(args, out, err) -> int:
    total = math.comb(2 ** args.L, args.M)
    if total > args.limit:
        out.write(f"INCONCLUSIVE: C(2^{args.L}, {args.M}) = {total} exceeds the census limit\n")
        return EXIT_INCONCLUSIVE
    h = default_hash(args.eps, args.L)
    counts = census(args.M, args.L, h)
    a, best = best_a(args.M, args.L, h)
    out.write(f"hash: {h!r}\ntotal sets: {total}\n")
    for v, c in enumerate(counts):
        out.write(f"a={v} size={c}\n")
    ok = best * 2 ** h.h >= total
    out.write(f"best a: {a} size {best}; pigeonhole max_a |S_a| >= C(2^L,M)/2^h: "
              f"{'holds' if ok else 'VIOLATED'}\n")
    return EXIT_OK if ok and sum(counts) == total else EXIT_FAIL


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="setcode", description="Codes over sets of sequences.")
    sub = ap.add_subparsers(dest="command", required=True)

    def codec_args(p):
        p.add_argument("--params", required=True, help="codec parameters (JSON)")
        p.add_argument("--family", choices=FAMILIES, help="overrides the family key of the params")

    p = sub.add_parser("encode", help="encode a message index into a set file")
    codec_args(p)
    p.add_argument("--message", required=True, help="file holding the decimal message index")
    p.add_argument("-o", "--output", help="output set file (default stdout)")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a received set file to a message index")
    codec_args(p)
    p.add_argument("--input", required=True, help="received set file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="random encode, corrupt, decode trials")
    codec_args(p)
    p.add_argument("--spec", required=True, help="channel s:t:eps:KIND[:kplus:kminus]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--stress", action="store_true", help="allow specs beyond the code's capability")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="exhaustive ball-disjointness check")
    codec_args(p)
    p.add_argument("--spec", required=True)
    p.add_argument("--budget", type=int, help="max enumerated outputs (default SETCODE_BUDGET)")
    p.add_argument("--codewords", type=int, help="check this many evenly spread codewords")
    p.add_argument("--max-codewords", type=int, default=5000,
                   help="largest codebook checked in full when --codewords is absent")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="redundancy bound table")
    for name in ("M", "L"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--eps", type=int, default=1)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("census", help="sizes of all hash-sum classes S_a")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--eps", type=int, default=1)
    p.add_argument("--limit", type=int, default=10**8)
    p.set_defaults(func=cmd_census)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out, err)
    except UsageError as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
