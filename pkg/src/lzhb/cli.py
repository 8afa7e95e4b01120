"""Command line front end.

Subcommands: parse, decode, verify, access, gen, sweep, curve.  Inputs
and outputs are raw bytes; ``-`` means standard input/output.  Exit
codes: 0 success, 1 verification or library failure, 2 usage, 3 I/O.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .access import RandomAccessIndex
from .encodings import (
    MalformedEncodingError,
    SerializationError,
    Unbounded,
    decode,
    deserialize,
    format_height,
    serialize,
    verify,
)
from .harness import (
    DEFAULT_GRID,
    DEFAULT_RATIOS,
    DEFAULT_VARIANTS,
    ingest_corpus,
    min_height_for_ratio,
    sweep,
    write_curve_csv,
    write_sweep_csv,
)
from .parsers import (
    VARIANTS,
    gen_greedy_adversary,
    gen_tall_lz77_string,
    gen_versioned,
    parse,
)


def _height(token: str) -> float:
    if token == "inf":
        return Unbounded
    try:
        h = int(token)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"height must be a non-negative integer or 'inf', got {token!r}")
    if h < 0:
        raise argparse.ArgumentTypeError("height must be >= 0")
    return h


def _height_list(tokens: str) -> list[float]:
    return [_height(t.strip()) for t in tokens.split(",") if t.strip()]


def _float_list(tokens: str) -> list[float]:
    try:
        return [float(t) for t in tokens.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad float list {tokens!r}")


def _positions(tokens: str) -> list[int]:
    out = []
    try:
        for t in tokens.split(","):
            t = t.strip()
            if not t:
                continue
            if "-" in t:
                a, _, b = t.partition("-")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(t))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad position list {tokens!r}")
    if not out:
        raise argparse.ArgumentTypeError("no positions given")
    return out


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write_bytes(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(path).write_text(text, encoding="utf-8")


def _cmd_parse(args) -> int:
    data = _read_bytes(args.input)
    enc = parse(data, args.variant, args.h)
    report = verify(enc, data, args.h)
    print(f"n={enc.n}", file=sys.stderr)
    print(f"z={enc.z}", file=sys.stderr)
    print(f"max_height={report.max_height}", file=sys.stderr)
    if not report.ok:
        for p in report.problems:
            print(f"error: {p}", file=sys.stderr)
        return 1
    _write_text(args.out, serialize(enc))
    return 0


def _cmd_decode(args) -> int:
    enc = deserialize(_read_bytes(args.input).decode("utf-8"))
    _write_bytes(args.out, decode(enc))
    return 0


def _cmd_verify(args) -> int:
    enc = deserialize(_read_bytes(args.encoding).decode("utf-8"))
    data = _read_bytes(args.original)
    h = args.h if args.h is not None else enc.h
    report = verify(enc, data, h)
    print(f"decodes_equal={report.decodes_equal}", file=sys.stderr)
    print(f"sources_match={report.sources_match}", file=sys.stderr)
    print(f"periods_valid={report.periods_valid}", file=sys.stderr)
    print(f"max_height={report.max_height}", file=sys.stderr)
    print(f"height_ok={report.height_ok} (h={format_height(h)})",
          file=sys.stderr)
    print(f"z={report.z}", file=sys.stderr)
    for p in report.problems:
        print(f"problem: {p}", file=sys.stderr)
    return 0 if report.ok else 1


def _cmd_access(args) -> int:
    enc = deserialize(_read_bytes(args.encoding).decode("utf-8"))
    index = RandomAccessIndex(enc)
    lines = []
    for pos in args.positions:
        symbol, steps = index.access(pos)
        lines.append(f"{pos} {symbol} {steps}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_gen(args) -> int:
    if args.family == "versioned":
        data = gen_versioned(args.seed_len, args.copies, args.rate, args.seed)
    else:
        if args.k is None:
            raise ValueError(f"family {args.family!r} needs a block count k")
        if args.family == "adversary":
            data = gen_greedy_adversary(args.k)
        else:
            data = gen_tall_lz77_string(args.k)
    _write_bytes(args.out, data)
    return 0


def _corpus_or_stdin(paths) -> list[tuple[str, bytes]]:
    texts = []
    for p in paths:
        if p == "-":
            texts.append(("-", sys.stdin.buffer.read()))
        else:
            texts.extend((c.name, c.data) for c in ingest_corpus([p]))
    return texts


def _cmd_sweep(args) -> int:
    variants = (DEFAULT_VARIANTS if args.variants == "all"
                else [v.strip() for v in args.variants.split(",") if v.strip()])
    for v in variants:
        if v not in VARIANTS:
            raise ValueError(f"unknown variant {v!r}")
    rows = []
    for name, data in _corpus_or_stdin(args.inputs):
        rows.extend(sweep(data, variants, args.grid, file_id=name,
                          timings=args.timings))
    if args.out == "-":
        write_sweep_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as f:
            write_sweep_csv(rows, f)
    return 0


def _cmd_curve(args) -> int:
    texts = _corpus_or_stdin([args.input])
    prefixes = None
    if args.prefixes != "auto":
        prefixes = [int(t) for t in args.prefixes.split(",") if t.strip()]
    rows = []
    for name, data in texts:
        rows.extend(min_height_for_ratio(
            data, args.variant, args.ratios, prefixes, args.grid,
            file_id=name))
    if args.out == "-":
        write_curve_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as f:
            write_curve_csv(rows, f)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lzhb",
        description="Height-bounded LZ-like compression tools",
        allow_abbrev=False)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", help="parse bytes into an encoding file")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--variant", required=True, choices=VARIANTS)
    sp.add_argument("--h", type=_height, default=Unbounded,
                    help="height bound (integer or 'inf')")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=_cmd_parse)

    sp = sub.add_parser("decode", help="decode an encoding file to bytes")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=_cmd_decode)

    sp = sub.add_parser("verify", help="check an encoding against a file")
    sp.add_argument("encoding")
    sp.add_argument("original")
    sp.add_argument("--h", type=_height, default=None,
                    help="height bound to check (default: the encoding's)")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("access", help="random access without full decode")
    sp.add_argument("encoding")
    sp.add_argument("--positions", type=_positions, required=True,
                    help="comma list, ranges allowed: 1,5,9-12")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=_cmd_access)

    sp = sub.add_parser("gen", help="generate benchmark strings")
    sp.add_argument("family", choices=("adversary", "tall", "versioned"))
    sp.add_argument("k", nargs="?", type=int, default=None)
    sp.add_argument("--seed-len", type=int, default=100_000)
    sp.add_argument("--copies", type=int, default=100)
    sp.add_argument("--rate", type=float, default=0.001)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=_cmd_gen)

    sp = sub.add_parser("sweep", help="size-vs-height sweep to CSV")
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("--variants", default="all",
                    help="comma list of variants, or 'all'")
    sp.add_argument("--grid", type=_height_list, default=list(DEFAULT_GRID))
    sp.add_argument("--timings", action="store_true",
                    help="fill parse_ms (makes CSV non-reproducible)")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("curve", help="smallest height per target ratio")
    sp.add_argument("input")
    sp.add_argument("--variant", required=True, choices=VARIANTS)
    sp.add_argument("--ratios", type=_float_list, default=list(DEFAULT_RATIOS))
    sp.add_argument("--prefixes", default="auto",
                    help="comma list of prefix lengths, or 'auto'")
    sp.add_argument("--grid", type=_height_list, default=list(DEFAULT_GRID))
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=_cmd_curve)

    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (MalformedEncodingError, SerializationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
