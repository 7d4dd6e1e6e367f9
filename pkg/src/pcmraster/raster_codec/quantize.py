from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._rounding import round_half_away
from ..errors import UnsupportedDepth
from ..signal_prep import SampleGrid

SUPPORTED_DEPTHS = (8, 16)


def _dtype_for(bits: int):
    if bits == 8:
        return np.uint8
    if bits == 16:
        return np.uint16
    raise UnsupportedDepth(f"pixel depth must be 8 or 16 bits, got {bits}")


def max_code(bits: int) -> int:
    _dtype_for(bits)
    return (1 << bits) - 1


@dataclass(frozen=True, eq=False)
class QuantizedGrid:
    """Integer pixel grid at a fixed bit depth, row-major."""

    pixels: np.ndarray
    bits: int

    def __post_init__(self):
        dtype = _dtype_for(self.bits)
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2 or pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError(f"pixel grid must be a non-empty 2-D array, got {pixels.shape}")
        if pixels.dtype != dtype:
            if pixels.size and (pixels.min() < 0 or pixels.max() > max_code(self.bits)):
                raise ValueError(f"pixel values out of range for {self.bits}-bit depth")
            pixels = pixels.astype(dtype)
        pixels = np.array(pixels, copy=True)
        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)

    @property
    def rows(self) -> int:
        return self.pixels.shape[0]

    @property
    def cols(self) -> int:
        return self.pixels.shape[1]

    def __eq__(self, other):
        if not isinstance(other, QuantizedGrid):
            return NotImplemented
        return self.bits == other.bits and np.array_equal(self.pixels, other.pixels)


def quantize(grid: SampleGrid, bits: int) -> QuantizedGrid:
    top = max_code(bits)
    codes = round_half_away(grid.values * top)
    return QuantizedGrid(np.clip(codes, 0, top).astype(_dtype_for(bits)), bits)


def dequantize(q: QuantizedGrid) -> SampleGrid:
    """Divide codes back into [0, 1].

    The result claims every cell as meaningful; the caller narrows
    ``meaningful_count`` from the manifest.
    """
    values = q.pixels.astype(np.float64) / max_code(q.bits)
    return SampleGrid(np.clip(values, 0.0, 1.0), meaningful_count=values.size)
