"""Command-line front end.

    imginfo compare A B [--metric mi] [--size 256x256] [--normalize]
    imginfo matrix INPUT... [--metric mi] [--format csv|json] [--output PATH|-]
    imginfo plot-data INPUT... [--metric mi] [--output PATH|-]

Data goes to standard output (or ``--output``), diagnostics to standard
error.  Exit status: 0 success, 1 usage error, 2 I/O or decode error.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from typing import Sequence

from .imaging import DEFAULT_SIZE, GrayImage, ImageDecodeError, TargetSize, load_grayscale, normalize_intensity
from .matrix import MetricKind, format_value, pair_metric, pairwise_matrix, plot_series, serialize_matrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _size(text):
    try:
        return TargetSize.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _metric(text):
    try:
        return MetricKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--metric", type=_metric, default=MetricKind.MUTUAL_INFORMATION,
                        metavar="{" + ",".join(k.value for k in MetricKind) + "}",
                        help="pairwise measure (default: mi)")
    common.add_argument("--size", type=_size, default=DEFAULT_SIZE, metavar="WxH",
                        help="resize every image to this size first (default: 256x256)")
    common.add_argument("--normalize", action="store_true",
                        help="min-max stretch intensities after resizing")
    common.add_argument("--output", default="-", metavar="PATH",
                        help="output file, '-' for standard output (default)")

    parser = _Parser(prog="imginfo", description="Information-theoretic image comparison.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compare", parents=[common], help="metric value for one image pair")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("matrix", parents=[common], help="pairwise metric matrix")
    p.add_argument("inputs", nargs="+", help="image files or a directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("plot-data", parents=[common], help="matrix flattened to pair,value rows")
    p.add_argument("inputs", nargs="+", help="image files or a directory")
    return parser


def resolve_inputs(inputs: Sequence[str]) -> list[str]:
    """Expand directories to their PNG/JPEG files in lexicographic filename order."""
    paths = []
    for item in inputs:
        if os.path.isdir(item):
            found = sorted(name for name in os.listdir(item)
                           if name.lower().endswith(IMAGE_SUFFIXES)
                           and os.path.isfile(os.path.join(item, name)))
            if not found:
                raise InputError(f"no .png/.jpg/.jpeg files in directory {item!r}")
            paths.extend(os.path.join(item, name) for name in found)
        else:
            paths.append(item)
    return paths


def _load(path: str, size: TargetSize, normalize: bool) -> GrayImage:
    try:
        img = load_grayscale(path, size)
    except (OSError, ImageDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    return normalize_intensity(img) if normalize else img


def _labelled(paths, args):
    return [(os.path.basename(p), _load(p, args.size, args.normalize)) for p in paths]


def compare_line(label_a: str, label_b: str, kind: MetricKind, value: float) -> str:
    return f"The {kind.title} between '{label_a}' and '{label_b}' is: {format_value(value)}"


def _run(args) -> bytes:
    if args.command == "compare":
        a = _load(args.a, args.size, args.normalize)
        b = _load(args.b, args.size, args.normalize)
        value = pair_metric(args.metric)(a, b)
        line = compare_line(os.path.basename(args.a), os.path.basename(args.b), args.metric, value)
        return (line + "\n").encode("utf-8")

    images = _labelled(resolve_inputs(args.inputs), args)
    m = pairwise_matrix(images, args.metric)
    if args.command == "matrix":
        return serialize_matrix(m, args.format)

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["pair", "value"])
    for pair, value in plot_series(m):
        w.writerow([pair, format_value(value)])
    return buf.getvalue().encode("utf-8")


def _write(data: bytes, target: str):
    if target == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(target, "wb") as fh:
            fh.write(data)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        data = _run(args)
        _write(data, args.output)
    except InputError as exc:
        print(f"imginfo: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"imginfo: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK
