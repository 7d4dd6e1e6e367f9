"""Baseline grayscale JPEG, delegated to Pillow's libjpeg bindings."""

from __future__ import annotations

import io

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..errors import MalformedImage, UnsupportedDepth, UnsupportedImage
from .quantize import QuantizedGrid

DEFAULT_QUALITY = 75


def encode_jpeg(q: QuantizedGrid, quality: int = DEFAULT_QUALITY) -> bytes:
    if q.bits != 8:
        raise UnsupportedDepth(f"baseline JPEG is 8-bit only, got {q.bits}-bit pixels")
    if not 1 <= quality <= 100:
        raise ValueError(f"JPEG quality must be in [1, 100], got {quality}")
    image = Image.fromarray(np.ascontiguousarray(q.pixels, dtype=np.uint8))
    buf = io.BytesIO()
    image.save(buf, format="JPEG", quality=quality, optimize=False, progressive=False)
    return buf.getvalue()


def decode_jpeg(data: bytes) -> QuantizedGrid:
    try:
        with Image.open(io.BytesIO(data), formats=["JPEG"]) as image:
            if image.mode != "L":
                raise UnsupportedImage(f"JPEG has mode {image.mode}; only grayscale is supported")
            image.load()
            pixels = np.asarray(image, dtype=np.uint8)
    except UnsupportedImage:
        raise
    except Image.DecompressionBombError as exc:
        raise UnsupportedImage(f"JPEG dimensions too large: {exc}") from None
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise MalformedImage(f"cannot decode JPEG: {exc}") from None
    return QuantizedGrid(pixels, 8)
