"""Command-line interface.

Subcommands:
  enhance   one image file in, one image file out
  stream    headerless raw RGB24 frames, stdin to stdout
  bench     resolution sweep with CSV / SVG output and scaling fits

Exit codes: 0 success, 2 unreadable input, 3 invalid parameters or missing
geometry, 4 write failure, 5 truncated stream frame.
"""

import argparse
import json
import sys
import warnings

import numpy as np

from . import __version__
from .backend import active_backend
from .bench import (
    DEFAULT_RESOLUTIONS,
    compare_backends,
    fit_scaling,
    records_to_csv_text,
    run_sweep,
    write_csv,
    write_svg,
)
from .exceptions import ImageFormatError, ParamError
from .imageio import read_image, write_image
from .params import MODES, EnhanceParams, default_params
from .pipeline import FrameStream, enhance, enhance_stream
from .spectral import DegenerateRangeWarning

EXIT_OK = 0
EXIT_UNREADABLE = 2
EXIT_BAD_PARAMS = 3
EXIT_WRITE_FAILURE = 4
EXIT_TRUNCATED = 5

_NORM_ALIASES = {"frame": "per_frame", "per_frame": "per_frame", "fixed": "fixed"}


def _err(message: str) -> None:
    print(f"vevid: {message}", file=sys.stderr)


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--mode", choices=MODES, help="plane to enhance (default lowlight)")
    sub.add_argument("--lite", action="store_true", help="use the closed-form path")
    sub.add_argument("--S", type=float, help="phase strength")
    sub.add_argument("--T", type=float, help="phase kernel variance")
    sub.add_argument("--G", type=float, help="phase gain")
    sub.add_argument("--b", type=float, help="brightness bias")
    sub.add_argument(
        "--norm",
        choices=("frame", "fixed"),
        help="output normalization (fixed is lite-only)",
    )
    sub.add_argument("--config", help="JSON file with parameter overrides")


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParamError(f"cannot load config {path}: {exc}") from exc
    if not isinstance(config, dict):
        raise ParamError(f"config {path} must hold a JSON object")
    return config


def resolve_params(args) -> EnhanceParams:
    """Merge parameter sources: flags beat config file beats built-ins."""
    config = _load_config(args.config) if args.config else {}
    allowed = {"S", "T", "G", "b", "mode", "path", "norm", "lite"}
    unknown = set(config) - allowed
    if unknown:
        raise ParamError(f"unknown config keys: {sorted(unknown)}")

    mode = args.mode or config.get("mode") or "lowlight"
    overrides = {}
    for key in ("S", "T", "G", "b", "path"):
        if key in config:
            overrides[key] = config[key]
    if config.get("lite"):
        overrides["path"] = "lite"
    if "norm" in config:
        norm = _NORM_ALIASES.get(config["norm"])
        if norm is None:
            raise ParamError(f"config norm must be 'frame' or 'fixed', got {config['norm']!r}")
        overrides["norm"] = norm

    for key in ("S", "T", "G", "b"):
        value = getattr(args, key)
        if value is not None:
            overrides[key] = value
    if args.lite:
        overrides["path"] = "lite"
    if args.norm is not None:
        overrides["norm"] = _NORM_ALIASES[args.norm]

    return default_params(mode).with_overrides(overrides)


def _print_params(params: EnhanceParams, stream) -> None:
    print(
        f"params: mode={params.mode} path={params.path} S={params.S:g} "
        f"T={params.T:g} G={params.G:g} b={params.b:g} norm={params.norm} "
        f"backend={active_backend()}",
        file=stream,
    )


def cmd_enhance(args) -> int:
    try:
        params = resolve_params(args)
    except ParamError as exc:
        _err(str(exc))
        return EXIT_BAD_PARAMS
    try:
        image = read_image(args.input)
    except (OSError, ImageFormatError) as exc:
        _err(f"cannot read {args.input}: {exc}")
        return EXIT_UNREADABLE
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateRangeWarning)
        result = enhance(image, params)
    for w in caught:
        _err(f"warning: {w.message}")
    _print_params(params, sys.stdout)
    try:
        write_image(args.output, result)
    except (OSError, ImageFormatError) as exc:
        _err(f"cannot write {args.output}: {exc}")
        return EXIT_WRITE_FAILURE
    return EXIT_OK


class _TruncatedInput(Exception):
    def __init__(self, index: int, got: int, need: int):
        super().__init__(f"truncated frame {index}: got {got} of {need} bytes")


def _stdin_frames(stdin, width: int, height: int):
    frame_bytes = width * height * 3
    index = 0
    while True:
        data = stdin.read(frame_bytes)
        if not data:
            return
        if len(data) < frame_bytes:
            raise _TruncatedInput(index, len(data), frame_bytes)
        yield np.frombuffer(data, dtype=np.uint8).reshape(height, width, 3)
        index += 1


def cmd_stream(args) -> int:
    if args.width is None or args.height is None:
        _err("--width and --height are required for stream")
        return EXIT_BAD_PARAMS
    if args.width < 1 or args.height < 1:
        _err(f"bad geometry {args.width}x{args.height}")
        return EXIT_BAD_PARAMS
    try:
        params = resolve_params(args)
    except ParamError as exc:
        _err(str(exc))
        return EXIT_BAD_PARAMS

    stdin = sys.stdin.buffer
    stdout = sys.stdout.buffer
    _print_params(params, sys.stderr)

    # stdout carries frame bytes only; warnings go to stderr
    warnings.simplefilter("always", DegenerateRangeWarning)
    source = FrameStream(args.width, args.height, _stdin_frames(stdin, args.width, args.height))
    try:
        for frame in enhance_stream(source, params):
            stdout.write(frame.tobytes())
        stdout.flush()
    except _TruncatedInput as exc:
        _err(str(exc))
        return EXIT_TRUNCATED
    except (OSError, BrokenPipeError) as exc:
        _err(f"cannot write output: {exc}")
        return EXIT_WRITE_FAILURE
    return EXIT_OK


def _parse_resolutions(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        part = part.strip().lower()
        w, sep, h = part.partition("x")
        if not sep or not w.isdigit() or not h.isdigit():
            raise ParamError(f"bad resolution {part!r}, expected WIDTHxHEIGHT")
        out.append((int(w), int(h)))
    if not out:
        raise ParamError("at least one resolution is required")
    return out


def cmd_bench(args) -> int:
    try:
        params = resolve_params(args)
        resolutions = (
            _parse_resolutions(args.resolutions)
            if args.resolutions
            else DEFAULT_RESOLUTIONS
        )
    except ParamError as exc:
        _err(str(exc))
        return EXIT_BAD_PARAMS

    if args.compare_backends:
        rows = compare_backends()
        print(f"{'kernel':<20} {'backend':<10} {'mean_ms':>10}")
        for row in rows:
            print(f"{row.kernel:<20} {row.backend:<10} {row.mean_ms:>10.3f}")
        return EXIT_OK

    try:
        records = run_sweep(
            resolutions=resolutions,
            params=params,
            warmup_iters=args.warmup,
            timed_iters=args.iters,
        )
    except ParamError as exc:
        _err(str(exc))
        return EXIT_BAD_PARAMS

    report_stream = sys.stdout
    if args.csv:
        try:
            write_csv(records, args.csv)
        except OSError as exc:
            _err(f"cannot write {args.csv}: {exc}")
            return EXIT_WRITE_FAILURE
    else:
        sys.stdout.write(records_to_csv_text(records))
        report_stream = sys.stderr

    if args.svg:
        try:
            write_svg(records, args.svg)
        except OSError as exc:
            _err(f"cannot write {args.svg}: {exc}")
            return EXIT_WRITE_FAILURE

    # the scaling fit needs >= 3 resolutions; short sweeps just emit CSV
    if len({(r.width, r.height) for r in records}) >= 3:
        report = fit_scaling(records)
        for path in sorted(report.paths):
            fit = report.paths[path]
            print(
                f"fit {path}: best={fit.best_model} "
                f"(linear rmse={fit.linear.rmse:.4f} ms, nlogn rmse={fit.nlogn.rmse:.4f} ms)",
                file=report_stream,
            )
        if report.ratio_full_over_lite is not None:
            print(
                f"full/lite mean-time ratio at {report.largest_megapixels:.3f} Mpx: "
                f"{report.ratio_full_over_lite:.2f}x",
                file=report_stream,
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vevid",
        description="Low-light and color image enhancement",
    )
    parser.add_argument("--version", action="version", version=f"vevid {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enh = sub.add_parser("enhance", help="enhance one image file")
    p_enh.add_argument("input", help="input image (PPM or PNG)")
    p_enh.add_argument("output", help="output image (.ppm, .pnm, or .png)")
    _add_param_flags(p_enh)
    p_enh.set_defaults(func=cmd_enhance)

    p_str = sub.add_parser(
        "stream", help="enhance raw RGB24 frames from stdin to stdout"
    )
    p_str.add_argument("--width", type=int, help="frame width in pixels")
    p_str.add_argument("--height", type=int, help="frame height in pixels")
    _add_param_flags(p_str)
    p_str.set_defaults(func=cmd_stream)

    p_ben = sub.add_parser("bench", help="run a resolution sweep")
    p_ben.add_argument(
        "--resolutions",
        help="comma-separated WIDTHxHEIGHT list (default 640x480,1280x720,1920x1080,3840x2160)",
    )
    p_ben.add_argument("--iters", type=int, default=10, help="timed iterations per point")
    p_ben.add_argument("--warmup", type=int, default=5, help="discarded warm-up iterations")
    p_ben.add_argument("--csv", help="write records to this CSV file")
    p_ben.add_argument("--svg", help="write a timing plot to this SVG file")
    p_ben.add_argument(
        "--compare-backends",
        action="store_true",
        help="time each per-pixel kernel on every available backend",
    )
    _add_param_flags(p_ben)
    p_ben.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
