"""Turning a sample stream into a unit-interval grid and back."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch
from .wav_io import AudioSignal


class PrepMode(enum.Enum):
    """How signed audio is mapped into [0, 1].

    POSITIVE keeps only the samples >= 0 and discards the rest, so the
    original waveform cannot be recovered. OFFSET maps every sample through
    (x + 1) / 2, which is invertible.
    """

    POSITIVE = "positive"
    OFFSET = "offset"

    @classmethod
    def parse(cls, text: str) -> "PrepMode":
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"unknown mode {text!r}; expected 'positive' or 'offset'") from None


@dataclass(frozen=True, eq=False)
class SampleGrid:
    """Row-major grid of values in [0, 1].

    Only the first ``meaningful_count`` values (in row-major order) carry
    data; anything after that is zero padding.
    """

    values: np.ndarray
    meaningful_count: int

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise ShapeMismatch(f"grid must be a non-empty 2-D array, got shape {values.shape}")
        if not 0 <= self.meaningful_count <= values.size:
            raise ShapeMismatch(
                f"meaningful_count {self.meaningful_count} outside [0, {values.size}]"
            )
        if not (np.all(values >= 0.0) and np.all(values <= 1.0)):
            raise ValueError("grid values must lie in [0, 1]")
        values = np.array(values, copy=True)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def __eq__(self, other):
        if not isinstance(other, SampleGrid):
            return NotImplemented
        return self.meaningful_count == other.meaningful_count and np.array_equal(
            self.values, other.values
        )


def filter_positive(signal: AudioSignal) -> np.ndarray:
    samples = signal.samples
    return samples[samples >= 0.0]


def offset_map(samples) -> np.ndarray:
    return (np.asarray(samples, dtype=np.float64) + 1.0) / 2.0


def inverse_offset_map(values) -> np.ndarray:
    return 2.0 * np.asarray(values, dtype=np.float64) - 1.0


def apply_mode(signal: AudioSignal, mode: PrepMode) -> np.ndarray:
    if mode is PrepMode.POSITIVE:
        return filter_positive(signal)
    if mode is PrepMode.OFFSET:
        return offset_map(signal.samples)
    raise ValueError(f"unknown mode {mode!r}")


def invert_mode(values, mode: PrepMode) -> np.ndarray:
    """Undo ``apply_mode`` as far as possible.

    For POSITIVE this is the identity: the discarded negative samples are gone.
    """
    if mode is PrepMode.OFFSET:
        return inverse_offset_map(values)
    return np.asarray(values, dtype=np.float64)


def take(values, count: int | None) -> np.ndarray:
    """Keep the first ``count`` values (all of them when count is None)."""
    values = np.asarray(values, dtype=np.float64)
    if count is None:
        return values
    if count < 1:
        raise ValueError(f"take count must be >= 1, got {count}")
    return values[:count]


def reshape_to_grid(values, rows: int, cols: int, pad: bool = False) -> SampleGrid:
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    if rows < 1 or cols < 1:
        raise ShapeMismatch(f"grid shape must be positive, got {rows}x{cols}")
    capacity = rows * cols
    n = values.size
    if n > capacity or (not pad and n != capacity):
        raise ShapeMismatch(
            f"{n} values do not fit a {rows}x{cols} grid" + (" with padding" if pad else "")
        )
    flat = np.zeros(capacity, dtype=np.float64)
    flat[:n] = values
    return SampleGrid(flat.reshape(rows, cols), meaningful_count=n)


def flatten_grid(grid: SampleGrid) -> np.ndarray:
    return grid.values.reshape(-1)[: grid.meaningful_count].copy()


def default_shape(n: int, cols_hint: int) -> tuple[int, int]:
    if n < 0 or cols_hint < 1:
        raise ValueError(f"need n >= 0 and cols_hint >= 1, got n={n}, cols_hint={cols_hint}")
    return max(1, -(-n // cols_hint)), cols_hint
