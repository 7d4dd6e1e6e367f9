"""Sidecar record holding everything needed to turn an image back into audio.

The format is plain ASCII, one ``key=value`` per line after a ``WIF1``
magic line, keys in a fixed order::

    WIF1
    rows=1000
    cols=2000
    bits=16
    mode=offset
    sample_rate=44100
    meaningful_count=2000000
    source_total_samples=2646000
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields

from ..errors import MalformedManifest
from ..signal_prep import PrepMode

MAGIC = "WIF1"
SUFFIX = ".manifest"

_UNSIGNED = re.compile(r"[0-9]+\Z")


@dataclass(frozen=True)
class Manifest:
    rows: int
    cols: int
    bits: int
    mode: PrepMode
    sample_rate: int
    meaningful_count: int
    source_total_samples: int
    version: str = MAGIC

    def __post_init__(self):
        if self.version != MAGIC:
            raise MalformedManifest(f"unknown manifest version {self.version!r}")
        for name in ("rows", "cols", "sample_rate"):
            if getattr(self, name) < 1:
                raise MalformedManifest(f"{name} must be >= 1")
        if self.bits not in (8, 16):
            raise MalformedManifest(f"bits must be 8 or 16, got {self.bits}")
        if self.meaningful_count < 0 or self.source_total_samples < 0:
            raise MalformedManifest("sample counts must be non-negative")
        if self.meaningful_count > self.rows * self.cols:
            raise MalformedManifest(
                f"meaningful_count {self.meaningful_count} exceeds grid capacity "
                f"{self.rows}x{self.cols}"
            )
        if not isinstance(self.mode, PrepMode):
            raise MalformedManifest(f"mode must be a PrepMode, got {self.mode!r}")


KEYS = tuple(f.name for f in fields(Manifest) if f.name != "version")


def write_manifest(m: Manifest) -> bytes:
    lines = [MAGIC]
    for key in KEYS:
        value = getattr(m, key)
        lines.append(f"{key}={value.value if key == 'mode' else value}")
    return ("\n".join(lines) + "\n").encode("ascii")


def read_manifest(data: bytes) -> Manifest:
    try:
        text = bytes(data).decode("ascii")
    except UnicodeDecodeError:
        raise MalformedManifest("manifest is not ASCII") from None
    if text.endswith("\n"):
        text = text[:-1]
    lines = text.split("\n")
    if lines[0] != MAGIC:
        raise MalformedManifest(f"bad magic line {lines[0]!r}, expected {MAGIC!r}")

    values = {}
    for lineno, line in enumerate(lines[1:], start=2):
        key, sep, raw = line.partition("=")
        if not sep:
            raise MalformedManifest(f"line {lineno} is not key=value: {line!r}")
        if key not in KEYS:
            raise MalformedManifest(f"unknown key {key!r} on line {lineno}")
        if key in values:
            raise MalformedManifest(f"duplicate key {key!r} on line {lineno}")
        if key == "mode":
            try:
                values[key] = PrepMode(raw)
            except ValueError:
                raise MalformedManifest(f"bad mode {raw!r}") from None
        elif _UNSIGNED.match(raw):
            values[key] = int(raw)
        else:
            raise MalformedManifest(f"{key} must be an unsigned decimal integer, got {raw!r}")

    missing = [k for k in KEYS if k not in values]
    if missing:
        raise MalformedManifest(f"missing keys: {', '.join(missing)}")
    if list(values) != list(KEYS):
        raise MalformedManifest(f"keys out of order; expected {', '.join(KEYS)}")
    return Manifest(**values)


def manifest_path_for(image_path) -> str:
    return f"{image_path}{SUFFIX}"
