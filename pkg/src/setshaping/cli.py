"""Command-line surface over the shaping library.

Subcommands reproduce the reference tables and the per-rank series, expose
the transform on files, and run the compression experiment.  Stdout carries
machine-readable output only (CSV or JSON); diagnostics and summaries go to
stderr.  Every randomized command takes an explicit --seed (default 0) and
is byte-reproducible for any --threads value.

Exit codes: 0 success, 2 invalid arguments, 3 domain error (invalid symbol,
bad block length, not in image, corrupt stream, degenerate sample),
4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Sequence

from .analyzer import (
    AverageReport,
    average_info_exact,
    rank_info_series,
    shaped_average_info_exact,
)
from .bijection import ShapingParameters, shape, string_rank, string_unrank, unshape
from .codec import shaping_experiment
from .errors import (
    BlockLengthError,
    CorruptStreamError,
    DegenerateSampleError,
    InvalidSymbolError,
    NotInImageError,
    ResourceLimitError,
    ShapingError,
)
from .montecarlo import McConfig, estimate_table
from .source import SourceEnsemble

TABLE_COLUMNS = [
    "alphabet_size",
    "block_length",
    "surplus",
    "method",
    "source_bits",
    "shaped_bits",
    "diff_bits",
    "source_stderr",
    "shaped_stderr",
    "samples",
    "seed",
]


def _round_floats(record: dict, digits: int) -> dict:
    out = {}
    for key, value in record.items():
        if isinstance(value, float):
            value = round(value, digits)
        out[key] = value
    return out


def _open_output(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="ascii", newline=""), True


def _emit_records(records: list[dict], columns: list[str], args, digits: int) -> None:
    """Write records as CSV (fixed-decimal floats) or JSON (rounded floats)."""
    stream, owned = _open_output(args.output)
    try:
        if args.format == "json":
            json.dump([_round_floats(r, digits) for r in records], stream, indent=2)
            stream.write("\n")
        else:
            writer = csv.DictWriter(stream, fieldnames=columns, lineterminator="\n")
            writer.writeheader()
            for record in records:
                row = {}
                for key, value in record.items():
                    if value is None:
                        row[key] = ""
                    elif isinstance(value, float):
                        row[key] = f"{value:.{digits}f}"
                    else:
                        row[key] = value
                writer.writerow(row)
    finally:
        if owned:
            stream.close()


def _report_records(reports: list[AverageReport]) -> list[dict]:
    return [r.to_dict() for r in reports]


# -- symbol text handling ---------------------------------------------------


def _parse_symbol_text(text: str, alphabet_size: int) -> list[int]:
    """Digits for alphabets up to 10, whitespace/comma separated ints beyond."""
    stripped = "".join(text.split())
    if not stripped:
        return []
    if alphabet_size <= 10:
        if not stripped.isdigit():
            raise InvalidSymbolError("text mode expects decimal digits only")
        return [int(ch) for ch in stripped]
    return [int(tok) for tok in text.replace(",", " ").split()]


def _format_symbols(symbols: Sequence[int], alphabet_size: int) -> str:
    if alphabet_size <= 10:
        return "".join(str(s) for s in symbols)
    return ",".join(str(s) for s in symbols)


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as handle:
        return handle.read()


def _write_output(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as handle:
            handle.write(data)


def _blocks_of(symbols: list[int], block: int) -> list[list[int]]:
    if len(symbols) == 0 or len(symbols) % block:
        raise BlockLengthError(
            f"input holds {len(symbols)} symbols, not a positive multiple of {block}"
        )
    return [symbols[i : i + block] for i in range(0, len(symbols), block)]


def _transform_file(args, forward: bool) -> int:
    params = ShapingParameters(args.alphabet, args.length, args.order_k)
    if not args.text and args.alphabet > 256:
        raise ValueError("byte mode supports alphabets up to 256 symbols")
    raw = _read_input(args.in_file)
    if args.text:
        symbols = _parse_symbol_text(raw.decode("ascii"), args.alphabet)
    else:
        symbols = list(raw)
    block = params.n if forward else params.output_length
    out: list[int] = []
    for piece in _blocks_of(symbols, block):
        mapped = shape(piece, params) if forward else unshape(piece, params)
        out.extend(mapped)
    if args.text:
        data = _format_symbols(out, args.alphabet).encode("ascii")
    else:
        data = bytes(out)
    _write_output(args.output, data)
    return 0


# -- subcommand handlers -----------------------------------------------------


def cmd_table1(args) -> int:
    reports = []
    for a in range(2, 8):
        n, k = a, 1
        if args.interpretation == "literal":
            source = n * math.log2(a)
            shaped = (n + k) * math.log2(a)
        else:
            source = average_info_exact(SourceEnsemble.uniform(a), n)
            shaped = shaped_average_info_exact(a, n, k)
        reports.append(AverageReport(a, n, k, source, shaped, method="exact"))
    _emit_records(_report_records(reports), TABLE_COLUMNS, args, digits=3)
    return 0


def cmd_table2(args) -> int:
    n, k = 100, 1
    alphabets = range(2, 11)
    if args.interpretation == "literal":
        reports = [
            AverageReport(
                a, n, k, n * math.log2(a), (n + k) * math.log2(a), method="exact"
            )
            for a in alphabets
        ]
    else:
        configs = [
            McConfig(
                alphabet_size=a,
                n=n,
                k=k,
                samples=args.samples,
                seed=args.seed + a,
                threads=args.threads,
            )
            for a in alphabets
        ]
        reports = estimate_table(configs, method=args.method)
    _emit_records(_report_records(reports), TABLE_COLUMNS, args, digits=6)
    return 0


def cmd_figure1(args) -> int:
    xs, ys = rank_info_series(args.alphabet, args.length, args.order_k)
    if args.format == "json":
        records = [
            {"rank": i, "i_x_bits": float(x), "i_y_bits": float(y)}
            for i, (x, y) in enumerate(zip(xs, ys))
        ]
        _emit_records(records, ["rank", "i_x_bits", "i_y_bits"], args, digits=6)
    else:
        stream, owned = _open_output(args.output)
        try:
            stream.write("rank,i_x_bits,i_y_bits\n")
            for i, (x, y) in enumerate(zip(xs, ys)):
                stream.write(f"{i},{float(x):.6f},{float(y):.6f}\n")
        finally:
            if owned:
                stream.close()
    print(
        f"mean_i_x_bits={float(xs.mean()):.6f} mean_i_y_bits={float(ys.mean()):.6f}",
        file=sys.stderr,
    )
    return 0


def cmd_shape(args) -> int:
    return _transform_file(args, forward=True)


def cmd_unshape(args) -> int:
    return _transform_file(args, forward=False)


def cmd_rank(args) -> int:
    symbols = _parse_symbol_text(args.string, args.alphabet)
    print(string_rank(symbols, args.alphabet))
    return 0


def cmd_unrank(args) -> int:
    symbols = string_unrank(args.rank, args.length, args.alphabet)
    print(_format_symbols(symbols, args.alphabet))
    return 0


def cmd_codec_experiment(args) -> int:
    params = ShapingParameters(args.alphabet, args.length, args.order_k)
    report = shaping_experiment(params, samples=args.samples, seed=args.seed)
    record = report.to_dict()
    _emit_records([record], list(record.keys()), args, digits=6)
    return 0


# -- parser ------------------------------------------------------------------


def _add_format_flags(sub, default_format="csv"):
    sub.add_argument(
        "--format",
        choices=("csv", "json"),
        default=default_format,
        help="output encoding (default %(default)s)",
    )
    sub.add_argument(
        "--output", "-o", default=None, help="output path (default stdout)"
    )


def _add_shape_params(sub, length_help, alphabet_default=None, length_default=None):
    sub.add_argument(
        "--alphabet",
        "-a",
        type=int,
        required=alphabet_default is None,
        default=alphabet_default,
        help="alphabet size",
    )
    sub.add_argument(
        "--length",
        "-n",
        type=int,
        required=length_default is None,
        default=length_default,
        help=length_help,
    )
    sub.add_argument(
        "--order-k",
        type=int,
        default=1,
        help="length surplus of the transform (default %(default)s)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setshaping",
        description="Exact and Monte Carlo analysis of information-content "
        "shaping, plus the transform itself on files.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser(
        "table1", help="exact mean content for alphabets 2..7 at n = alphabet size"
    )
    sub.add_argument(
        "--interpretation",
        choices=("empirical", "literal"),
        default="empirical",
        help="which notion of content to tabulate (default %(default)s)",
    )
    _add_format_flags(sub)
    sub.set_defaults(handler=cmd_table1)

    sub = commands.add_parser(
        "table2", help="mean content for alphabets 2..10 at n=100, k=1"
    )
    sub.add_argument(
        "--method",
        choices=("auto", "exact", "mc"),
        default="auto",
        help="exact enumeration, Monte Carlo, or auto per row (default %(default)s)",
    )
    sub.add_argument(
        "--samples",
        "-M",
        type=int,
        default=10**6,
        help="Monte Carlo sample count (default %(default)s)",
    )
    sub.add_argument(
        "--seed", type=int, default=0, help="base seed; row seed = seed + alphabet"
    )
    sub.add_argument(
        "--threads", type=int, default=1, help="worker threads (default %(default)s)"
    )
    sub.add_argument(
        "--interpretation",
        choices=("empirical", "literal"),
        default="empirical",
        help="which notion of content to tabulate (default %(default)s)",
    )
    _add_format_flags(sub)
    sub.set_defaults(handler=cmd_table2)

    sub = commands.add_parser(
        "figure1", help="per-rank content series before and after shaping"
    )
    _add_shape_params(sub, "block length n", alphabet_default=3, length_default=10)
    _add_format_flags(sub)
    sub.set_defaults(handler=cmd_figure1)

    sub = commands.add_parser("shape", help="apply the transform to a file blockwise")
    sub.add_argument("in_file", help="input path, or - for stdin")
    _add_shape_params(sub, "input block length n")
    sub.add_argument(
        "--text",
        action="store_true",
        help="treat input as ASCII digit text instead of one byte per symbol",
    )
    sub.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    sub.set_defaults(handler=cmd_shape)

    sub = commands.add_parser("unshape", help="invert the transform blockwise")
    sub.add_argument("in_file", help="input path, or - for stdin")
    _add_shape_params(sub, "output block length n (input blocks are n+k)")
    sub.add_argument(
        "--text",
        action="store_true",
        help="treat input as ASCII digit text instead of one byte per symbol",
    )
    sub.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    sub.set_defaults(handler=cmd_unshape)

    sub = commands.add_parser(
        "rank", help="position of a string in the content-sorted order"
    )
    sub.add_argument("string", help="symbols as digits (a <= 10) or comma ints")
    sub.add_argument("--alphabet", "-a", type=int, required=True)
    sub.set_defaults(handler=cmd_rank)

    sub = commands.add_parser("unrank", help="string at a given order position")
    sub.add_argument("rank", type=int)
    sub.add_argument("--length", "-n", type=int, required=True)
    sub.add_argument("--alphabet", "-a", type=int, required=True)
    sub.set_defaults(handler=cmd_unrank)

    sub = commands.add_parser(
        "codec-experiment",
        help="compressed size of seeded strings before vs after shaping",
    )
    _add_shape_params(sub, "block length n")
    sub.add_argument(
        "--samples", "-M", type=int, default=10**4, help="default %(default)s"
    )
    sub.add_argument("--seed", type=int, default=0)
    _add_format_flags(sub, default_format="json")
    sub.set_defaults(handler=cmd_codec_experiment)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (
        InvalidSymbolError,
        BlockLengthError,
        NotInImageError,
        CorruptStreamError,
        DegenerateSampleError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ShapingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
