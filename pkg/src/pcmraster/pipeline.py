"""End-to-end encode and decode, shared by the CLI subcommands."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GeometryMismatch, ShapeMismatch
from .raster_codec import (
    CodecSpec,
    ImageFormat,
    Manifest,
    QuantizedGrid,
    decode_image,
    dequantize,
    encode_image,
    quantize,
)
from .signal_prep import (
    PrepMode,
    SampleGrid,
    apply_mode,
    default_shape,
    flatten_grid,
    invert_mode,
    reshape_to_grid,
    take,
)
from .wav_io import AudioSignal

DEFAULT_COLS = 2000

# Largest sample a 16-bit writer keeps distinct from the clamp.
_SAMPLE_CEILING = 1.0 - 2.0 ** -15


@dataclass(frozen=True)
class Encoded:
    image: bytes
    manifest: Manifest
    prepared: np.ndarray
    quantized: QuantizedGrid


def prepare(signal: AudioSignal, mode: PrepMode, take_count: int | None = None) -> np.ndarray:
    return take(apply_mode(signal, mode), take_count)


def encode_signal(
    signal: AudioSignal,
    spec: CodecSpec,
    mode: PrepMode = PrepMode.POSITIVE,
    take_count: int | None = None,
    cols: int = DEFAULT_COLS,
    rows: int | None = None,
) -> Encoded:
    prepared = prepare(signal, mode, take_count)
    if rows is None:
        rows, cols = default_shape(prepared.size, cols)
    grid = reshape_to_grid(prepared, rows, cols, pad=True)
    q = quantize(grid, spec.bits)
    manifest = Manifest(
        rows=rows,
        cols=cols,
        bits=spec.bits,
        mode=mode,
        sample_rate=signal.sample_rate,
        meaningful_count=grid.meaningful_count,
        source_total_samples=len(signal),
    )
    return Encoded(encode_image(q, spec), manifest, prepared, q)


def decode_stream(image: bytes, manifest: Manifest, fmt: ImageFormat) -> np.ndarray:
    """Recover the prepared (unit-interval) stream from an image and its manifest."""
    q = decode_image(image, fmt)
    if (q.rows, q.cols) != (manifest.rows, manifest.cols):
        raise GeometryMismatch(
            f"manifest says {manifest.rows}x{manifest.cols}, image is {q.rows}x{q.cols}"
        )
    if q.bits != manifest.bits:
        raise GeometryMismatch(f"manifest says {manifest.bits}-bit, image is {q.bits}-bit")
    full = dequantize(q)
    try:
        grid = SampleGrid(full.values, meaningful_count=manifest.meaningful_count)
    except ShapeMismatch as exc:
        raise GeometryMismatch(str(exc)) from None
    return flatten_grid(grid)


def reconstruct(stream, manifest: Manifest) -> AudioSignal:
    samples = np.clip(invert_mode(stream, manifest.mode), -1.0, _SAMPLE_CEILING)
    return AudioSignal(samples, sample_rate=manifest.sample_rate)


def decode_signal(image: bytes, manifest: Manifest, fmt: ImageFormat) -> AudioSignal:
    return reconstruct(decode_stream(image, manifest, fmt), manifest)
