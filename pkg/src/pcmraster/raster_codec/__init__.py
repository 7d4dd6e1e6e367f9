"""Pixel quantization and the PNG / TIFF / JPEG containers that carry it."""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass

from ..errors import UnsupportedDepth
from .jpeg import DEFAULT_QUALITY, decode_jpeg, encode_jpeg
from .manifest import Manifest, manifest_path_for, read_manifest, write_manifest
from .png import decode_png, encode_png
from .quantize import QuantizedGrid, dequantize, max_code, quantize
from .tiff import decode_tiff, encode_tiff


class ImageFormat(enum.Enum):
    PNG = "png"
    TIFF = "tif"
    JPEG = "jpg"

    @property
    def lossless(self) -> bool:
        return self is not ImageFormat.JPEG

    @property
    def default_bits(self) -> int:
        return 16 if self.lossless else 8

    @classmethod
    def parse(cls, text: str) -> "ImageFormat":
        key = text.lower().lstrip(".")
        try:
            return _ALIASES[key]
        except KeyError:
            raise ValueError(f"unknown image format {text!r}; expected png, tif or jpg") from None

    @classmethod
    def from_path(cls, path) -> "ImageFormat":
        ext = os.path.splitext(os.fspath(path))[1]
        if not ext:
            raise ValueError(f"cannot infer image format from {path!r}: no extension")
        return cls.parse(ext)


_ALIASES = {
    "png": ImageFormat.PNG,
    "tif": ImageFormat.TIFF,
    "tiff": ImageFormat.TIFF,
    "jpg": ImageFormat.JPEG,
    "jpeg": ImageFormat.JPEG,
}


@dataclass(frozen=True)
class CodecSpec:
    format: ImageFormat
    bits: int | None = None
    jpeg_quality: int = DEFAULT_QUALITY

    def __post_init__(self):
        if self.bits is None:
            object.__setattr__(self, "bits", self.format.default_bits)
        if self.bits not in (8, 16):
            raise UnsupportedDepth(f"pixel depth must be 8 or 16 bits, got {self.bits}")
        if self.format is ImageFormat.JPEG and self.bits != 8:
            raise UnsupportedDepth("baseline JPEG carries 8-bit pixels only")
        if not 1 <= self.jpeg_quality <= 100:
            raise ValueError(f"jpeg_quality must be in [1, 100], got {self.jpeg_quality}")


def encode_image(q: QuantizedGrid, spec: CodecSpec) -> bytes:
    if q.bits != spec.bits:
        raise UnsupportedDepth(f"grid is {q.bits}-bit but codec expects {spec.bits}-bit")
    if spec.format is ImageFormat.PNG:
        return encode_png(q)
    if spec.format is ImageFormat.TIFF:
        return encode_tiff(q)
    return encode_jpeg(q, spec.jpeg_quality)


def decode_image(data: bytes, expected_format: ImageFormat) -> QuantizedGrid:
    if expected_format is ImageFormat.PNG:
        return decode_png(data)
    if expected_format is ImageFormat.TIFF:
        return decode_tiff(data)
    return decode_jpeg(data)


__all__ = [
    "CodecSpec",
    "DEFAULT_QUALITY",
    "ImageFormat",
    "Manifest",
    "QuantizedGrid",
    "decode_image",
    "dequantize",
    "encode_image",
    "manifest_path_for",
    "max_code",
    "quantize",
    "read_manifest",
    "write_manifest",
]
