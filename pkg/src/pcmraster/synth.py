"""Seeded synthetic test audio.

Used in place of real recordings so reports can be reproduced without
shipping copyrighted material.
"""

from __future__ import annotations

import numpy as np

from .wav_io import AudioSignal

KINDS = ("noise-bursts", "sine", "mixed")
SINE_AMPLITUDE = 0.9
DEFAULT_FREQUENCY = 440.0

_TOP = 1.0 - 2.0 ** -15  # largest value a 16-bit writer can represent


def sine(n: int, rate: int, freq: float = DEFAULT_FREQUENCY, amp: float = SINE_AMPLITUDE) -> np.ndarray:
    k = np.arange(n, dtype=np.float64)
    return amp * np.sin(2.0 * np.pi * freq * k / rate)


def noise_bursts(n: int, rate: int, rng: np.random.Generator, beat: float = 0.5) -> np.ndarray:
    """Gated white-noise hits with a decaying low thump, one per beat.

    Each hit lasts 0.08 to 0.2 s and is followed by exact silence until the
    next beat, so well over half of the samples are non-negative.
    """
    out = np.zeros(n, dtype=np.float64)
    step = max(1, int(round(beat * rate)))
    attack = max(1, int(0.002 * rate))
    for onset in range(0, n, step):
        # Occasional early hits keep the pattern from being perfectly periodic.
        if rng.random() < 0.25:
            onset = max(0, onset - step // 4)
        length = int(rng.uniform(0.08, 0.2) * rate)
        length = min(length, n - onset)
        if length <= 0:
            continue
        t = np.arange(length, dtype=np.float64)
        env = np.exp(-t / (length / 5.0))
        ramp = min(attack, length)
        env[:ramp] *= np.linspace(0.0, 1.0, attack, endpoint=False)[:ramp]
        noise = rng.uniform(-1.0, 1.0, length)
        thump = np.sin(2.0 * np.pi * rng.uniform(50.0, 90.0) * t / rate)
        hit = rng.uniform(0.4, 0.95) * env * (0.7 * noise + 0.3 * thump)
        out[onset:onset + length] += hit
    return out


def generate(kind: str, seconds: float, rate: int, seed: int = 0,
             freq: float = DEFAULT_FREQUENCY) -> AudioSignal:
    if seconds <= 0:
        raise ValueError(f"seconds must be positive, got {seconds}")
    if rate < 1:
        raise ValueError(f"rate must be >= 1, got {rate}")
    n = int(round(seconds * rate))
    rng = np.random.default_rng(seed)
    if kind == "sine":
        samples = sine(n, rate, freq)
    elif kind == "noise-bursts":
        samples = noise_bursts(n, rate, rng)
    elif kind == "mixed":
        samples = 0.5 * sine(n, rate, freq) + 0.5 * noise_bursts(n, rate, rng)
    else:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    return AudioSignal(np.clip(samples, -1.0, _TOP), sample_rate=rate, source_bits=16)
