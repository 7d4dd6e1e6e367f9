"""Command-line front end: gen, encode, decode, analyze, roundtrip.

Exit statuses: 0 success, 2 usage or configuration error, 3 input parse
error, 4 geometry or consistency error, 5 I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import os
import sys

from . import analysis, pipeline, synth
from .errors import (
    EmptyInput,
    GeometryMismatch,
    LengthMismatch,
    MalformedImage,
    MalformedManifest,
    MalformedRiff,
    UnsupportedFormat,
    UnsupportedImage,
)
from .raster_codec import (
    DEFAULT_QUALITY,
    CodecSpec,
    ImageFormat,
    manifest_path_for,
    read_manifest,
    write_manifest,
)
from .signal_prep import PrepMode
from .wav_io import AudioSignal, parse_wav, write_wav

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_GEOMETRY = 4
EXIT_IO = 5

_PARSE_ERRORS = (
    MalformedRiff, UnsupportedFormat, MalformedImage, UnsupportedImage,
    MalformedManifest, EmptyInput,
)
_GEOMETRY_ERRORS = (GeometryMismatch, LengthMismatch)


class CommandError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def exit_status_for(exc: BaseException) -> int:
    if isinstance(exc, CommandError):
        return exc.status
    if isinstance(exc, _PARSE_ERRORS):
        return EXIT_PARSE
    if isinstance(exc, _GEOMETRY_ERRORS):
        return EXIT_GEOMETRY
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_USAGE


@contextlib.contextmanager
def stage(name: str):
    """Re-raise failures as CommandError labelled with the pipeline stage."""
    try:
        yield
    except CommandError:
        raise
    except (OSError, ValueError) as exc:
        detail = exc.strerror if isinstance(exc, OSError) and exc.strerror else str(exc)
        if isinstance(exc, OSError) and exc.filename:
            detail = f"{exc.filename}: {detail}"
        raise CommandError(exit_status_for(exc), f"{name}: {type(exc).__name__}: {detail}") from exc


def _read(path) -> bytes:
    with open(path, "rb") as f:
        return f.read()


def _check_writable(paths, force: bool):
    for path in paths:
        if not force and os.path.exists(path):
            raise CommandError(EXIT_USAGE, f"refusing to overwrite {path} (use --force)")


def _write(path, data: bytes, force: bool) -> int:
    with open(path, "wb" if force else "xb") as f:
        f.write(data)
    return len(data)


def _codec_spec(fmt: ImageFormat, bits, quality) -> CodecSpec:
    return CodecSpec(fmt, bits, DEFAULT_QUALITY if quality is None else quality)


def reference_wav_bytes(prepared, sample_rate: int) -> int:
    """Size of the prepared stream saved as a 16-bit WAV, the size baseline."""
    return len(write_wav(AudioSignal(prepared, sample_rate=sample_rate), 16))


def cmd_gen(args, out) -> int:
    _check_writable([args.output], args.force)
    with stage("generate"):
        signal = synth.generate(args.kind, args.seconds, args.rate, args.seed, args.freq)
    with stage("write"):
        size = _write(args.output, write_wav(signal, 16), args.force)
    print(f"wrote {args.output}: {len(signal)} samples at {args.rate} Hz, {size} bytes", file=out)
    return EXIT_OK


def cmd_encode(args, out) -> int:
    with stage("config"):
        fmt = ImageFormat.parse(args.format) if args.format else ImageFormat.from_path(args.output)
        spec = _codec_spec(fmt, args.bits, args.quality)
        mode = PrepMode.parse(args.mode)
        if args.take is not None and args.take < 1:
            raise ValueError("--take must be >= 1")
        if args.rows is not None and args.rows < 1:
            raise ValueError("--rows must be >= 1")
        if args.cols < 1:
            raise ValueError("--cols must be >= 1")
    manifest_path = args.manifest or manifest_path_for(args.output)
    targets = [args.output, manifest_path]
    if args.reference_wav:
        targets.append(args.reference_wav)
    _check_writable(targets, args.force)

    with stage("read"):
        raw = _read(args.input)
    with stage("parse"):
        signal = parse_wav(raw)
    with stage("encode"):
        enc = pipeline.encode_signal(signal, spec, mode, args.take, args.cols, args.rows)
    with stage("write"):
        image_size = _write(args.output, enc.image, args.force)
        _write(manifest_path, write_manifest(enc.manifest), args.force)
        reference = write_wav(AudioSignal(enc.prepared, sample_rate=signal.sample_rate), 16)
        if args.reference_wav:
            _write(args.reference_wav, reference, args.force)

    m = enc.manifest
    print(f"shape: {m.rows}x{m.cols} ({fmt.value}, {m.bits}-bit, mode {m.mode.value})", file=out)
    print(f"samples: source {m.source_total_samples}, encoded {m.meaningful_count}", file=out)
    print(f"bytes: image {image_size}, reference wav {len(reference)}", file=out)
    print(f"manifest: {manifest_path}", file=out)
    return EXIT_OK


def cmd_decode(args, out) -> int:
    with stage("config"):
        fmt = ImageFormat.parse(args.format) if args.format else ImageFormat.from_path(args.image)
    manifest_path = args.manifest or manifest_path_for(args.image)
    _check_writable([args.output], args.force)

    with stage("read"):
        image = _read(args.image)
        manifest_bytes = _read(manifest_path)
    with stage("manifest"):
        manifest = read_manifest(manifest_bytes)
    with stage("decode"):
        signal = pipeline.decode_signal(image, manifest, fmt)
    with stage("write"):
        size = _write(args.output, write_wav(signal, 16), args.force)
    print(f"wrote {args.output}: {len(signal)} samples at {signal.sample_rate} Hz, "
          f"{size} bytes", file=out)
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    if args.csv:
        _check_writable([args.csv], args.force)
    with stage("read"):
        original_raw = _read(args.original)
        decoded_raw = _read(args.decoded)
        encoded_bytes = os.path.getsize(args.image) if args.image else len(decoded_raw)
    with stage("parse"):
        original = parse_wav(original_raw)
        decoded = parse_wav(decoded_raw)
    with stage("analyze"):
        errors = analysis.compute_error(original.samples, decoded.samples)
        report = analysis.build_report(
            args.label, original.samples, decoded.samples, len(original_raw), encoded_bytes
        )
    print(analysis.format_table([report]), end="", file=out)
    if args.csv:
        with stage("write"):
            buf = io.BytesIO()
            analysis.emit_csv(errors, buf)
            _write(args.csv, buf.getvalue(), args.force)
    return EXIT_OK


def roundtrip_reports(signal, formats, bits, mode, take_count, cols, quality):
    """Run encode+decode per format; yield (format, report, errors) or (format, exc, None)."""
    for fmt in formats:
        try:
            with stage(f"{fmt.value}: config"):
                spec = _codec_spec(fmt, bits, quality)
            with stage(f"{fmt.value}: encode"):
                enc = pipeline.encode_signal(signal, spec, mode, take_count, cols)
            with stage(f"{fmt.value}: decode"):
                decoded = pipeline.decode_stream(enc.image, enc.manifest, fmt)
            with stage(f"{fmt.value}: analyze"):
                errors = analysis.compute_error(enc.prepared, decoded)
                report = analysis.build_report(
                    f"{fmt.value}/{spec.bits}", enc.prepared, decoded,
                    reference_wav_bytes(enc.prepared, signal.sample_rate), len(enc.image),
                )
        except CommandError as exc:
            yield fmt, exc, None
        else:
            yield fmt, report, errors


def cmd_roundtrip(args, out) -> int:
    with stage("config"):
        formats = [ImageFormat.parse(f) for f in args.formats.split(",") if f.strip()]
        if not formats:
            raise ValueError("--formats is empty")
        mode = PrepMode.parse(args.mode)
        if args.take is not None and args.take < 1:
            raise ValueError("--take must be >= 1")
        if args.cols < 1:
            raise ValueError("--cols must be >= 1")
    if args.csv_dir:
        _check_writable([os.path.join(args.csv_dir, f"error_{f.value}.csv") for f in formats],
                        args.force)
    with stage("read"):
        raw = _read(args.input)
    with stage("parse"):
        signal = parse_wav(raw)

    reports = []
    status = EXIT_OK
    for fmt, result, errors in roundtrip_reports(
        signal, formats, args.bits, mode, args.take, args.cols, args.quality
    ):
        if errors is None:
            print(f"error: {result}", file=sys.stderr)
            if status == EXIT_OK:
                status = result.status
            continue
        reports.append(result)
        if args.csv_dir:
            with stage("write"):
                os.makedirs(args.csv_dir, exist_ok=True)
                buf = io.BytesIO()
                analysis.emit_csv(errors, buf)
                _write(os.path.join(args.csv_dir, f"error_{fmt.value}.csv"), buf.getvalue(),
                       args.force)
    if reports:
        print(analysis.format_table(reports), end="", file=out)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcmraster",
        description="Store LPCM audio in grayscale PNG/TIFF/JPEG images and measure the damage.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write seeded synthetic audio")
    p.add_argument("output")
    p.add_argument("--kind", choices=synth.KINDS, default="noise-bursts")
    p.add_argument("--seconds", type=float, default=60.0)
    p.add_argument("--rate", type=int, default=44100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--freq", type=float, default=synth.DEFAULT_FREQUENCY,
                   help="sine frequency in Hz (sine and mixed kinds)")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_gen)

    def add_codec_flags(p, bits_help):
        p.add_argument("--mode", default="positive", choices=[m.value for m in PrepMode])
        p.add_argument("--bits", type=int, choices=(8, 16), default=None, help=bits_help)
        p.add_argument("--cols", type=int, default=pipeline.DEFAULT_COLS)
        p.add_argument("--take", type=int, default=None,
                       help="keep only the first N prepared samples")
        p.add_argument("--quality", type=int, default=None,
                       help=f"JPEG quality 1-100 (default {DEFAULT_QUALITY})")

    p = sub.add_parser("encode", help="turn a WAV file into an image plus manifest")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--format", default=None, help="png, tif or jpg (default: from extension)")
    add_codec_flags(p, "pixel depth (default 16 for png/tif, 8 for jpg)")
    p.add_argument("--rows", type=int, default=None,
                   help="explicit row count (default: just enough rows for the samples)")
    p.add_argument("--manifest", default=None)
    p.add_argument("--reference-wav", default=None,
                   help="also save the prepared sample stream as a 16-bit WAV")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="turn an image plus manifest back into a WAV file")
    p.add_argument("image")
    p.add_argument("output")
    p.add_argument("--manifest", default=None)
    p.add_argument("--format", default=None)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("analyze", help="compare two WAV files sample by sample")
    p.add_argument("original")
    p.add_argument("decoded")
    p.add_argument("--image", default=None, help="count this file's size as the encoded size")
    p.add_argument("--label", default="decoded")
    p.add_argument("--csv", default=None, help="write index,error rows here")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("roundtrip", help="encode and decode in memory, report per format")
    p.add_argument("input")
    p.add_argument("--formats", default="png,tif,jpg")
    add_codec_flags(p, "pixel depth for every format (default 16 lossless, 8 jpg)")
    p.add_argument("--csv-dir", default=None)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_roundtrip)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.status


if __name__ == "__main__":
    sys.exit(main())
