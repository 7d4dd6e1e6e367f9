"""Reading and writing integer LPCM RIFF/WAVE files.

Only the subset the pipeline needs is handled: format code 1 (PCM), 8-bit
unsigned or 16-bit signed little-endian samples.  Multi-channel files are
accepted but only the first channel is kept.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from ._rounding import round_half_away
from .errors import MalformedRiff, UnsupportedFormat

WAVE_FORMAT_PCM = 1
SUPPORTED_BITS = (8, 16)

_CHUNK_HEADER = struct.Struct("<4sI")
_FMT_BODY = struct.Struct("<HHIIHH")


@dataclass(frozen=True)
class WavFormat:
    audio_format_code: int
    channels: int
    sample_rate: int
    bits_per_sample: int

    @property
    def block_align(self) -> int:
        return self.channels * (self.bits_per_sample // 8)


@dataclass(frozen=True, eq=False)
class AudioSignal:
    """One channel of normalized samples in [-1, 1)."""

    samples: np.ndarray
    sample_rate: int
    source_bits: int = 16
    channels_in_source: int = 1

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.float64).reshape(-1)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        if self.sample_rate < 1:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        if self.source_bits not in SUPPORTED_BITS:
            raise ValueError(f"source_bits must be 8 or 16, got {self.source_bits}")
        if self.channels_in_source < 1:
            raise ValueError("channels_in_source must be positive")
        if samples.size and not (np.all(samples >= -1.0) and np.all(samples < 1.0)):
            raise ValueError("samples must lie in [-1, 1)")

    def __len__(self):
        return self.samples.size

    def __eq__(self, other):
        if not isinstance(other, AudioSignal):
            return NotImplemented
        return (
            self.sample_rate == other.sample_rate
            and self.source_bits == other.source_bits
            and self.channels_in_source == other.channels_in_source
            and np.array_equal(self.samples, other.samples)
        )


def _iter_chunks(data: bytes):
    """Yield (chunk_id, payload_start, payload_size) for each RIFF sub-chunk."""
    if len(data) < 12:
        raise MalformedRiff(f"file is {len(data)} bytes, shorter than a RIFF header")
    magic, _riff_size = _CHUNK_HEADER.unpack_from(data, 0)
    if magic != b"RIFF":
        raise MalformedRiff(f"bad magic {magic!r}, expected b'RIFF'")
    if data[8:12] != b"WAVE":
        raise MalformedRiff(f"bad form type {data[8:12]!r}, expected b'WAVE'")

    # Streaming writers leave the RIFF size at 0 or 0xFFFFFFFF; walk the buffer.
    end = len(data)
    pos = 12
    while pos < end:
        if end - pos < _CHUNK_HEADER.size:
            raise MalformedRiff(f"truncated chunk header at offset {pos}")
        chunk_id, size = _CHUNK_HEADER.unpack_from(data, pos)
        start = pos + _CHUNK_HEADER.size
        yield chunk_id, start, size
        pos = start + size + (size & 1)


def _parse_fmt(payload: bytes) -> WavFormat:
    if len(payload) < _FMT_BODY.size:
        raise MalformedRiff(f"fmt chunk is {len(payload)} bytes, need {_FMT_BODY.size}")
    code, channels, rate, _byte_rate, _align, bits = _FMT_BODY.unpack_from(payload, 0)
    if code != WAVE_FORMAT_PCM:
        raise UnsupportedFormat(f"audio format code {code:#06x} is not integer PCM")
    if bits not in SUPPORTED_BITS:
        raise UnsupportedFormat(f"{bits}-bit samples are not supported")
    if channels < 1:
        raise MalformedRiff("fmt chunk declares zero channels")
    if rate < 1:
        raise MalformedRiff("fmt chunk declares zero sample rate")
    return WavFormat(code, channels, rate, bits)


def read_format(data: bytes) -> tuple[WavFormat, memoryview]:
    """Locate the fmt and data chunks; return the format and raw frame bytes."""
    fmt = None
    frames = None
    for chunk_id, start, size in _iter_chunks(data):
        if chunk_id == b"fmt ":
            if start + size > len(data):
                raise MalformedRiff("truncated fmt chunk")
            fmt = _parse_fmt(data[start:start + size])
        elif chunk_id == b"data":
            if start + size > len(data):
                raise MalformedRiff(
                    f"data chunk declares {size} bytes, only {len(data) - start} present"
                )
            frames = memoryview(data)[start:start + size]
        elif start + size > len(data):
            raise MalformedRiff(f"truncated {chunk_id!r} chunk")
        if fmt is not None and frames is not None:
            break
    if fmt is None:
        raise MalformedRiff("no fmt chunk")
    if frames is None:
        raise MalformedRiff("no data chunk")
    return fmt, frames


def parse_wav(data: bytes) -> AudioSignal:
    fmt, frames = read_format(bytes(data))
    n_frames = len(frames) // fmt.block_align
    usable = frames[: n_frames * fmt.block_align]
    if fmt.bits_per_sample == 16:
        raw = np.frombuffer(usable, dtype="<i2").reshape(n_frames, fmt.channels)[:, 0]
        samples = raw.astype(np.float64) / 32768.0
    else:
        raw = np.frombuffer(usable, dtype=np.uint8).reshape(n_frames, fmt.channels)[:, 0]
        samples = (raw.astype(np.float64) - 128.0) / 128.0
    return AudioSignal(
        samples,
        sample_rate=fmt.sample_rate,
        source_bits=fmt.bits_per_sample,
        channels_in_source=fmt.channels,
    )


def denormalize(samples, bits: int) -> np.ndarray:
    """Map [-1, 1) floats onto the integer codes stored for ``bits``-bit PCM."""
    x = np.asarray(samples, dtype=np.float64)
    if bits == 16:
        return np.clip(round_half_away(x * 32768.0), -32768, 32767).astype("<i2")
    if bits == 8:
        return np.clip(round_half_away(x * 128.0) + 128, 0, 255).astype(np.uint8)
    raise UnsupportedFormat(f"cannot write {bits}-bit PCM")


def write_wav(signal: AudioSignal, target_bits: int = 16) -> bytes:
    """Serialize as a canonical 44-byte-header mono PCM file."""
    if target_bits not in SUPPORTED_BITS:
        raise UnsupportedFormat(f"cannot write {target_bits}-bit PCM")
    payload = denormalize(signal.samples, target_bits).tobytes()
    fmt = WavFormat(WAVE_FORMAT_PCM, 1, signal.sample_rate, target_bits)
    fmt_body = _FMT_BODY.pack(
        fmt.audio_format_code,
        fmt.channels,
        fmt.sample_rate,
        fmt.sample_rate * fmt.block_align,
        fmt.block_align,
        fmt.bits_per_sample,
    )
    pad = b"\x00" if len(payload) & 1 else b""
    riff_size = 4 + (8 + len(fmt_body)) + (8 + len(payload) + len(pad))
    return b"".join([
        _CHUNK_HEADER.pack(b"RIFF", riff_size),
        b"WAVE",
        _CHUNK_HEADER.pack(b"fmt ", len(fmt_body)),
        fmt_body,
        _CHUNK_HEADER.pack(b"data", len(payload)),
        payload,
        pad,
    ])


def read_wav_file(path) -> AudioSignal:
    with open(path, "rb") as f:
        return parse_wav(f.read())


def write_wav_file(path, signal: AudioSignal, target_bits: int = 16) -> int:
    data = write_wav(signal, target_bits)
    with open(path, "wb") as f:
        f.write(data)
    return len(data)
