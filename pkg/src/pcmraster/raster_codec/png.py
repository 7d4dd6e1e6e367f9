"""Grayscale PNG (color type 0, 8 or 16 bit, non-interlaced)."""

from __future__ import annotations

import struct
import zlib

import numpy as np

from ..errors import MalformedImage, UnsupportedImage
from .quantize import QuantizedGrid

SIGNATURE = b"\x89PNG\r\n\x1a\n"

_IHDR = struct.Struct(">IIBBBBB")

FILTER_NONE, FILTER_SUB, FILTER_UP, FILTER_AVERAGE, FILTER_PAETH = range(5)

_COLOR_NAMES = {2: "RGB", 3: "palette", 4: "gray+alpha", 6: "RGBA"}


def _chunk(tag: bytes, body: bytes) -> bytes:
    crc = zlib.crc32(body, zlib.crc32(tag))
    return struct.pack(">I", len(body)) + tag + body + struct.pack(">I", crc)


def _raw_rows(q: QuantizedGrid) -> np.ndarray:
    """Pixel bytes as a (rows, row_bytes) uint8 array, samples big-endian."""
    if q.bits == 16:
        data = q.pixels.astype(">u2")
    else:
        data = q.pixels.astype(np.uint8)
    return np.frombuffer(data.tobytes(), dtype=np.uint8).reshape(q.rows, -1)


def _filter_rows(raw: np.ndarray, bpp: int) -> bytes:
    """Pick None, Sub or Up per row by the minimum-sum-of-absolute-differences rule.

    Average and Paeth are left out so that decoding our own output stays
    fully vectorised.
    """
    left = np.zeros_like(raw)
    left[:, bpp:] = raw[:, :-bpp]
    up = np.zeros_like(raw)
    up[1:] = raw[:-1]

    candidates = np.stack([raw, raw - left, raw - up])  # uint8 arithmetic wraps mod 256
    signed = candidates.view(np.int8).astype(np.int32)
    cost = np.abs(signed).sum(axis=2)
    choice = cost.argmin(axis=0)

    rows = raw.shape[0]
    out = np.empty((rows, raw.shape[1] + 1), dtype=np.uint8)
    out[:, 0] = choice
    out[:, 1:] = candidates[choice, np.arange(rows)]
    return out.tobytes()


def encode_png(q: QuantizedGrid, level: int = 6) -> bytes:
    bpp = q.bits // 8
    header = _IHDR.pack(q.cols, q.rows, q.bits, 0, 0, 0, 0)
    idat = zlib.compress(_filter_rows(_raw_rows(q), bpp), level)
    return SIGNATURE + _chunk(b"IHDR", header) + _chunk(b"IDAT", idat) + _chunk(b"IEND", b"")


def _iter_chunks(data: bytes):
    pos = len(SIGNATURE)
    while True:
        if pos + 8 > len(data):
            raise MalformedImage("PNG ends before IEND")
        length, tag = struct.unpack_from(">I4s", data, pos)
        body_start = pos + 8
        body_end = body_start + length
        if body_end + 4 > len(data):
            raise MalformedImage(f"truncated PNG chunk {tag!r}")
        body = data[body_start:body_end]
        (crc,) = struct.unpack_from(">I", data, body_end)
        if zlib.crc32(body, zlib.crc32(tag)) != crc:
            raise MalformedImage(f"CRC mismatch in PNG chunk {tag!r}")
        yield tag, body
        if tag == b"IEND":
            return
        pos = body_end + 4


def _unfilter_sequential(kind: int, line: np.ndarray, prior: np.ndarray, bpp: int) -> np.ndarray:
    out = bytearray(line.tobytes())
    prev = prior.tobytes()
    for i in range(len(out)):
        a = out[i - bpp] if i >= bpp else 0
        b = prev[i]
        if kind == FILTER_AVERAGE:
            pred = (a + b) >> 1
        else:
            c = prev[i - bpp] if i >= bpp else 0
            p = a + b - c
            pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
            if pa <= pb and pa <= pc:
                pred = a
            elif pb <= pc:
                pred = b
            else:
                pred = c
        out[i] = (out[i] + pred) & 0xFF
    return np.frombuffer(bytes(out), dtype=np.uint8)


def _unfilter(filtered: np.ndarray, bpp: int) -> np.ndarray:
    rows, stride = filtered.shape
    width = stride - 1
    recon = np.zeros((rows, width), dtype=np.uint8)
    prior = np.zeros(width, dtype=np.uint8)
    for r in range(rows):
        kind = int(filtered[r, 0])
        line = filtered[r, 1:]
        if kind == FILTER_NONE:
            cur = line
        elif kind == FILTER_SUB:
            lanes = line.reshape(-1, bpp).astype(np.uint64)
            cur = (np.cumsum(lanes, axis=0) & 0xFF).astype(np.uint8).reshape(-1)
        elif kind == FILTER_UP:
            cur = line + prior
        elif kind in (FILTER_AVERAGE, FILTER_PAETH):
            cur = _unfilter_sequential(kind, line, prior, bpp)
        else:
            raise MalformedImage(f"unknown PNG filter type {kind} on row {r}")
        recon[r] = cur
        prior = recon[r]
    return recon


def decode_png(data: bytes) -> QuantizedGrid:
    data = bytes(data)
    if not data.startswith(SIGNATURE):
        raise MalformedImage("missing PNG signature")
    header = None
    idat = []
    for tag, body in _iter_chunks(data):
        if header is None:
            if tag != b"IHDR" or len(body) != _IHDR.size:
                raise MalformedImage("PNG must start with a 13-byte IHDR chunk")
            header = _IHDR.unpack(body)
        elif tag == b"IDAT":
            idat.append(body)
        elif tag == b"IHDR":
            raise MalformedImage("duplicate IHDR chunk")

    width, height, depth, color, compression, filter_method, interlace = header
    if width < 1 or height < 1:
        raise MalformedImage(f"PNG has empty dimensions {width}x{height}")
    if color != 0:
        name = _COLOR_NAMES.get(color, f"color type {color}")
        raise UnsupportedImage(f"{name} PNG is not single-channel grayscale")
    if depth not in (8, 16):
        raise UnsupportedImage(f"{depth}-bit grayscale PNG is not supported")
    if compression != 0 or filter_method != 0:
        raise MalformedImage("unknown PNG compression or filter method")
    if interlace != 0:
        raise UnsupportedImage("interlaced PNG is not supported")
    if not idat:
        raise MalformedImage("PNG has no IDAT chunk")

    try:
        raw = zlib.decompress(b"".join(idat))
    except zlib.error as exc:
        raise MalformedImage(f"corrupt PNG image data: {exc}") from None

    bpp = depth // 8
    stride = width * bpp + 1
    if len(raw) != stride * height:
        raise MalformedImage(f"PNG image data is {len(raw)} bytes, expected {stride * height}")
    recon = _unfilter(np.frombuffer(raw, dtype=np.uint8).reshape(height, stride), bpp)
    if depth == 16:
        pixels = np.frombuffer(recon.tobytes(), dtype=">u2").astype(np.uint16)
    else:
        pixels = recon
    return QuantizedGrid(pixels.reshape(height, width), depth)
