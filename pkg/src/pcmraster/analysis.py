"""Error measurement between an original and a decoded sample stream."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import BinaryIO, NamedTuple, Sequence

import numpy as np

from .errors import EmptyInput, LengthMismatch


class ErrorSummary(NamedTuple):
    min: float
    max: float
    rmse: float
    max_abs: float


@dataclass(frozen=True)
class ErrorReport:
    codec_label: str
    error_min: float
    error_max: float
    rmse: float
    max_abs_error: float
    compared_samples: int
    original_bytes: int
    encoded_bytes: int

    @property
    def compression_ratio(self) -> float:
        return self.original_bytes / self.encoded_bytes


def compute_error(original, decoded) -> np.ndarray:
    """Elementwise ``original - decoded``."""
    a = np.asarray(original, dtype=np.float64).reshape(-1)
    b = np.asarray(decoded, dtype=np.float64).reshape(-1)
    if a.size != b.size:
        raise LengthMismatch(f"original has {a.size} samples, decoded has {b.size}")
    return a - b


def summarize(errors) -> ErrorSummary:
    e = np.asarray(errors, dtype=np.float64).reshape(-1)
    if e.size == 0:
        raise EmptyInput("no samples to summarize")
    max_abs = float(np.abs(e).max())
    # Scale before squaring so tiny errors do not underflow to an rmse of 0.
    rmse = max_abs * math.sqrt(float(np.mean((e / max_abs) ** 2))) if max_abs else 0.0
    return ErrorSummary(min=float(e.min()), max=float(e.max()), rmse=rmse, max_abs=max_abs)


def build_report(label, original, decoded, original_bytes, encoded_bytes) -> ErrorReport:
    if original_bytes < 1 or encoded_bytes < 1:
        raise ValueError("byte counts must be >= 1")
    errors = compute_error(original, decoded)
    s = summarize(errors)
    return ErrorReport(
        codec_label=label,
        error_min=s.min,
        error_max=s.max,
        # sqrt(mean(e^2)) can exceed max|e| by an ulp when every |e| is equal.
        rmse=min(s.rmse, s.max_abs),
        max_abs_error=s.max_abs,
        compared_samples=errors.size,
        original_bytes=int(original_bytes),
        encoded_bytes=int(encoded_bytes),
    )


def emit_csv(errors, out: BinaryIO) -> None:
    """Write ``index,error`` rows; floats use the shortest exact repr."""
    out.write(b"index,error\n")
    e = np.asarray(errors, dtype=np.float64).reshape(-1)
    lines = [f"{i},{float(v)!r}\n" for i, v in enumerate(e.tolist())]
    out.write("".join(lines).encode("ascii"))


TABLE_COLUMNS = (
    "label", "error_min", "error_max", "rmse", "max_abs",
    "original_bytes", "encoded_bytes", "ratio",
)


def format_table(reports: Sequence[ErrorReport]) -> str:
    rows = [TABLE_COLUMNS]
    for r in reports:
        rows.append((
            r.codec_label,
            f"{r.error_min:.6g}",
            f"{r.error_max:.6g}",
            f"{r.rmse:.6g}",
            f"{r.max_abs_error:.6g}",
            str(r.original_bytes),
            str(r.encoded_bytes),
            f"{r.compression_ratio:.3f}",
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(len(TABLE_COLUMNS))]
    return "\n".join(
        "  ".join(cell.ljust(w) if i == 0 else cell.rjust(w) for i, (cell, w) in enumerate(zip(row, widths)))
        for row in rows
    ) + "\n"
