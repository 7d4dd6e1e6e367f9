"""Parsers must reject arbitrary garbage with their own error types, never crash."""

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from pcmraster.errors import (
    MalformedImage,
    MalformedManifest,
    MalformedRiff,
    UnsupportedFormat,
    UnsupportedImage,
)
from pcmraster.raster_codec import (
    CodecSpec,
    ImageFormat,
    Manifest,
    QuantizedGrid,
    decode_image,
    encode_image,
    read_manifest,
    write_manifest,
)
from pcmraster.signal_prep import PrepMode
from pcmraster.wav_io import AudioSignal, parse_wav, write_wav

WAV_ERRORS = (MalformedRiff, UnsupportedFormat)
IMAGE_ERRORS = (MalformedImage, UnsupportedImage)

SEED_WAV = write_wav(AudioSignal(np.linspace(-0.9, 0.9, 24), sample_rate=8000), 16)
SEED_IMAGES = {
    fmt: encode_image(QuantizedGrid(np.arange(48).reshape(6, 8) * 5, 8), CodecSpec(fmt, 8))
    for fmt in ImageFormat
}
SEED_MANIFEST = write_manifest(Manifest(
    rows=6, cols=8, bits=8, mode=PrepMode.OFFSET, sample_rate=8000,
    meaningful_count=40, source_total_samples=40,
))


def mutate(seed: bytes, rng: np.random.Generator, header_len: int | None = None) -> bytes:
    """Flip, overwrite, insert, delete or truncate bytes, biased toward the header."""
    data = bytearray(seed)
    limit = min(len(data), header_len or len(data))
    for _ in range(int(rng.integers(1, 6))):
        op = int(rng.integers(0, 6))
        pos = int(rng.integers(0, max(1, limit)))
        if op == 0 and data:
            data[pos % len(data)] ^= 1 << int(rng.integers(0, 8))
        elif op == 1 and data:
            data[pos % len(data)] = int(rng.integers(0, 256))
        elif op == 2:
            data[pos:pos] = bytes(rng.integers(0, 256, int(rng.integers(1, 5)), dtype=np.uint8))
        elif op == 3 and data:
            del data[pos:pos + int(rng.integers(1, 5))]
        elif op == 4:
            data = data[: int(rng.integers(0, len(data) + 1))]
        elif op == 5 and len(data) >= pos + 4:
            # plant an extreme 32-bit value, e.g. a chunk size
            value = int(rng.choice([0, 1, 0x7FFFFFFF, 0xFFFFFFFF, len(seed)]))
            data[pos:pos + 4] = value.to_bytes(4, "little")
    return bytes(data)


def parse_wav_total(data: bytes) -> None:
    try:
        sig = parse_wav(data)
    except WAV_ERRORS:
        return
    assert np.all(sig.samples >= -1.0) and np.all(sig.samples < 1.0)


def test_wav_header_mutations():
    rng = np.random.default_rng(2024)
    for _ in range(3000):
        parse_wav_total(mutate(SEED_WAV, rng, header_len=44))


@settings(max_examples=500, suppress_health_check=[HealthCheck.too_slow])
@given(st.binary(max_size=120))
def test_wav_random_bytes(data):
    parse_wav_total(data)
    parse_wav_total(b"RIFF" + data)
    parse_wav_total(SEED_WAV[:12] + data)


@pytest.mark.parametrize("fmt", list(ImageFormat))
def test_image_mutations(fmt):
    rng = np.random.default_rng(7)
    seed = SEED_IMAGES[fmt]
    for _ in range(400):
        try:
            q = decode_image(mutate(seed, rng, header_len=200), fmt)
        except IMAGE_ERRORS:
            continue
        assert q.pixels.ndim == 2


@settings(max_examples=300)
@given(st.binary(max_size=200), st.sampled_from(list(ImageFormat)))
def test_image_random_bytes(data, fmt):
    prefix = SEED_IMAGES[fmt][:16]
    for blob in (data, prefix + data):
        try:
            decode_image(blob, fmt)
        except IMAGE_ERRORS:
            pass


def test_manifest_mutations():
    rng = np.random.default_rng(11)
    for _ in range(2000):
        try:
            read_manifest(mutate(SEED_MANIFEST, rng))
        except MalformedManifest:
            pass


@settings(max_examples=300)
@given(st.text(max_size=200))
def test_manifest_random_text(text):
    for blob in (text.encode("utf-8"), ("WIF1\n" + text).encode("utf-8")):
        try:
            read_manifest(blob)
        except MalformedManifest:
            pass
