"""Minimal baseline TIFF: grayscale, uncompressed, one image per file.

The writer always emits little-endian ("II") files with a single strip.
The reader also accepts big-endian files and multiple strips, since both
are common in files produced by other tools.
"""

from __future__ import annotations

import struct

import numpy as np

from ..errors import MalformedImage, UnsupportedImage
from .quantize import QuantizedGrid

IMAGE_WIDTH = 256
IMAGE_LENGTH = 257
BITS_PER_SAMPLE = 258
COMPRESSION = 259
PHOTOMETRIC = 262
STRIP_OFFSETS = 273
SAMPLES_PER_PIXEL = 277
ROWS_PER_STRIP = 278
STRIP_BYTE_COUNTS = 279
X_RESOLUTION = 282
Y_RESOLUTION = 283
PLANAR_CONFIG = 284
RESOLUTION_UNIT = 296
SAMPLE_FORMAT = 339
TILE_TAGS = frozenset({322, 323, 324, 325})

SHORT, LONG, RATIONAL = 3, 4, 5
_TYPE_SIZES = {1: 1, 2: 1, 3: 2, 4: 4, 5: 8, 6: 1, 7: 1, 8: 2, 9: 4, 10: 8, 11: 4, 12: 8}

PHOTOMETRIC_MIN_IS_BLACK = 1


def encode_tiff(q: QuantizedGrid) -> bytes:
    pixel_bytes = q.pixels.astype("<u2" if q.bits == 16 else np.uint8).tobytes()

    # Layout: 8-byte header, pixel strip, two resolution rationals, IFD.
    strip_offset = 8
    rational_offset = strip_offset + len(pixel_bytes)
    rational_offset += rational_offset & 1  # word alignment
    ifd_offset = rational_offset + 16

    entries = [
        (IMAGE_WIDTH, LONG, 1, q.cols),
        (IMAGE_LENGTH, LONG, 1, q.rows),
        (BITS_PER_SAMPLE, SHORT, 1, q.bits),
        (COMPRESSION, SHORT, 1, 1),
        (PHOTOMETRIC, SHORT, 1, PHOTOMETRIC_MIN_IS_BLACK),
        (STRIP_OFFSETS, LONG, 1, strip_offset),
        (SAMPLES_PER_PIXEL, SHORT, 1, 1),
        (ROWS_PER_STRIP, LONG, 1, q.rows),
        (STRIP_BYTE_COUNTS, LONG, 1, len(pixel_bytes)),
        (X_RESOLUTION, RATIONAL, 1, rational_offset),
        (Y_RESOLUTION, RATIONAL, 1, rational_offset + 8),
        (PLANAR_CONFIG, SHORT, 1, 1),
        (RESOLUTION_UNIT, SHORT, 1, 2),
    ]
    ifd = [struct.pack("<H", len(entries))]
    for tag, typ, count, value in entries:
        packed = (struct.pack("<H", value) + b"\x00\x00") if typ == SHORT else struct.pack("<I", value)
        ifd.append(struct.pack("<HHI", tag, typ, count) + packed)
    ifd.append(struct.pack("<I", 0))

    return b"".join([
        b"II*\x00",
        struct.pack("<I", ifd_offset),
        pixel_bytes,
        b"\x00" * (rational_offset - strip_offset - len(pixel_bytes)),
        struct.pack("<IIII", 72, 1, 72, 1),
        *ifd,
    ])


def _read_ifd(data: bytes, order: str, offset: int) -> dict[int, tuple[int, ...]]:
    if offset + 2 > len(data):
        raise MalformedImage(f"TIFF IFD offset {offset} lies past end of file")
    (count,) = struct.unpack_from(order + "H", data, offset)
    if offset + 2 + 12 * count > len(data):
        raise MalformedImage("truncated TIFF IFD")
    tags: dict[int, tuple[int, ...]] = {}
    for i in range(count):
        tag, typ, n = struct.unpack_from(order + "HHI", data, offset + 2 + 12 * i)
        if typ not in (SHORT, LONG):
            continue  # only integer-valued tags matter for decoding
        size = _TYPE_SIZES[typ] * n
        field_pos = offset + 2 + 12 * i + 8
        if size > 4:
            (field_pos,) = struct.unpack_from(order + "I", data, field_pos)
        if field_pos + size > len(data):
            raise MalformedImage(f"TIFF tag {tag} values lie past end of file")
        code = "H" if typ == SHORT else "I"
        tags[tag] = struct.unpack_from(f"{order}{n}{code}", data, field_pos)
    return tags


def _scalar(tags, tag, default=None):
    values = tags.get(tag)
    if not values:
        if default is None:
            raise MalformedImage(f"TIFF is missing required tag {tag}")
        return default
    return values[0]


def decode_tiff(data: bytes) -> QuantizedGrid:
    data = bytes(data)
    if len(data) < 8:
        raise MalformedImage("file too short for a TIFF header")
    if data[:4] == b"II*\x00":
        order = "<"
    elif data[:4] == b"MM\x00*":
        order = ">"
    else:
        raise MalformedImage("missing TIFF byte-order header")
    (ifd_offset,) = struct.unpack_from(order + "I", data, 4)
    tags = _read_ifd(data, order, ifd_offset)

    width = _scalar(tags, IMAGE_WIDTH)
    height = _scalar(tags, IMAGE_LENGTH)
    if width < 1 or height < 1:
        raise MalformedImage(f"TIFF has empty dimensions {width}x{height}")
    samples = _scalar(tags, SAMPLES_PER_PIXEL, 1)
    if samples != 1:
        raise UnsupportedImage(f"TIFF has {samples} samples per pixel; only grayscale is supported")
    photometric = _scalar(tags, PHOTOMETRIC)
    if photometric != PHOTOMETRIC_MIN_IS_BLACK:
        raise UnsupportedImage(f"TIFF photometric interpretation {photometric} is not supported")
    depth = _scalar(tags, BITS_PER_SAMPLE, 1)
    if depth not in (8, 16):
        raise UnsupportedImage(f"{depth}-bit TIFF is not supported")
    if _scalar(tags, COMPRESSION, 1) != 1:
        raise UnsupportedImage("compressed TIFF is not supported")
    if _scalar(tags, SAMPLE_FORMAT, 1) != 1:
        raise UnsupportedImage("only unsigned-integer TIFF samples are supported")
    if TILE_TAGS & tags.keys():
        raise UnsupportedImage("tiled TIFF is not supported")

    offsets = tags.get(STRIP_OFFSETS)
    counts = tags.get(STRIP_BYTE_COUNTS)
    if not offsets or not counts or len(offsets) != len(counts):
        raise MalformedImage("TIFF strip offsets and byte counts are missing or inconsistent")
    expected = width * height * (depth // 8)
    strips = []
    for off, n in zip(offsets, counts):
        if off + n > len(data):
            raise MalformedImage("TIFF strip lies past end of file")
        strips.append(data[off:off + n])
    raw = b"".join(strips)
    if len(raw) < expected:
        raise MalformedImage(f"TIFF strips hold {len(raw)} bytes, expected {expected}")
    dtype = np.dtype(np.uint8) if depth == 8 else np.dtype(order + "u2")
    pixels = np.frombuffer(raw[:expected], dtype=dtype).astype(np.uint8 if depth == 8 else np.uint16)
    return QuantizedGrid(pixels.reshape(height, width), depth)

