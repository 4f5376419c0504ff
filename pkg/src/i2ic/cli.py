"""Command-line interface: ``i2ic encode|decode|roundtrip|bench|design|synth``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bench import LosslessFailure, load_corpus, run_bench
from .codec import decode_plane, encode_plane
from .container import CodedStream
from .design import Ar1Model, ar1_intra_autocorr, chen_design, quantize_cascade
from .errors import CorruptHeader, I2ICError, MalformedStream, UnsupportedFormat
from .pgm import read_pgm, write_pgm
from .residual import SystemConfig
from .synth import ar1_corpus, synth_ar1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_MALFORMED = 4
EXIT_MISMATCH = 5
EXIT_CODEC = 6

SYSTEM_NAMES = [c.cli_name for c in SystemConfig]


def _cmd_encode(args) -> int:
    img = read_pgm(args.input)
    stream = encode_plane(img, SystemConfig.from_name(args.system))
    Path(args.output).write_bytes(stream.to_bytes())
    print(f"{args.output}: {8 * (len(stream.to_bytes()))} bits")
    return EXIT_OK


def _cmd_decode(args) -> int:
    img = decode_plane(CodedStream.from_bytes(Path(args.input).read_bytes()))
    write_pgm(img, args.output)
    return EXIT_OK


def _cmd_roundtrip(args) -> int:
    img = read_pgm(args.input)
    data = encode_plane(img, SystemConfig.from_name(args.system)).to_bytes()
    if args.output:
        Path(args.output).write_bytes(data)
    decoded = decode_plane(CodedStream.from_bytes(data))
    if decoded.shape != img.shape or not np.array_equal(decoded, img):
        print(f"error: {args.input} did not round-trip under {args.system}", file=sys.stderr)
        return EXIT_MISMATCH
    print(f"{args.input}: lossless, {8 * len(data)} bits ({8 * len(data) / img.size:.3f} bpp)")
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.corpus:
        images = load_corpus(args.corpus)
        if not images:
            print(f"error: no .pgm files in {args.corpus}", file=sys.stderr)
            return EXIT_IO
    else:
        images = ar1_corpus(args.synthetic, args.size)
    systems = [SystemConfig.from_name(s) for s in args.systems.split(",")]
    report = run_bench(images, systems, runs=args.runs, max_blocks=args.max_blocks)
    if args.csv:
        report.write_csv(args.csv)
    if args.json:
        report.write_json(args.json)
    for name, pct in report.mean_reduction().items():
        print(f"{name:>14}  {report.mean_bits()[name]:12.1f} bits  {pct:7.3f} % vs skip")
    return EXIT_OK


def _cmd_design(args) -> int:
    R = ar1_intra_autocorr(Ar1Model(args.rho, args.size))
    cascade, report = chen_design(R, args.rotations, method=args.method, rho=args.rho)
    lifted = quantize_cascade(cascade, args.bits)
    out = report.to_dict()
    out["bits"] = args.bits
    out["lifting_factors"] = [str(f) for f in lifted.lifting_factors()]
    text = json.dumps(out, indent=2, sort_keys=True)
    if args.report:
        Path(args.report).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _cmd_synth(args) -> int:
    write_pgm(synth_ar1(args.width, args.height, args.rho, args.seed), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="i2ic", description="Lossless 4x4 intra codec with integer-to-integer transforms.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="PGM to .i2ic")
    p.add_argument("--system", choices=SYSTEM_NAMES, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help=".i2ic to PGM")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("roundtrip", help="encode, decode and compare")
    p.add_argument("--system", choices=SYSTEM_NAMES, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", help="also keep the .i2ic file")
    p.set_defaults(func=_cmd_roundtrip)

    p = sub.add_parser("bench", help="compare systems on a corpus")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--corpus", help="directory of .pgm files")
    src.add_argument("--synthetic", type=int, default=10, help="number of pinned AR(1) images (default 10)")
    p.add_argument("--size", type=int, default=64, help="synthetic image side")
    p.add_argument("--systems", default=",".join(SYSTEM_NAMES))
    p.add_argument("--runs", type=int, default=5, help="timing runs; the median is reported")
    p.add_argument("--max-blocks", type=int, default=None)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("design", help="design a rotation cascade for an AR(1) source")
    p.add_argument("--rho", type=float, default=0.99)
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--rotations", type=int, default=4)
    p.add_argument("--bits", type=int, default=3)
    p.add_argument("--method", choices=["search", "greedy"], default="search")
    p.add_argument("--report")
    p.set_defaults(func=_cmd_design)

    p = sub.add_parser("synth", help="write a pinned AR(1) test image")
    p.add_argument("--width", type=int, default=64)
    p.add_argument("--height", type=int, default=64)
    p.add_argument("--rho", type=float, default=0.95)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=_cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "systems", None):
        bad = [s for s in args.systems.split(",") if s not in SYSTEM_NAMES]
        if bad:
            print(f"error: unknown system(s): {', '.join(bad)}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (MalformedStream, CorruptHeader, UnsupportedFormat) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except LosslessFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (I2ICError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CODEC


if __name__ == "__main__":
    sys.exit(main())
