import math

import numpy as np
import pytest

from pcmraster import synth
from pcmraster.wav_io import write_wav


def test_same_seed_same_bytes():
    a = write_wav(synth.generate("mixed", 2.0, 22050, seed=5))
    b = write_wav(synth.generate("mixed", 2.0, 22050, seed=5))
    assert a == b


def test_different_seed_differs():
    a = synth.generate("noise-bursts", 1.0, 8000, seed=1)
    b = synth.generate("noise-bursts", 1.0, 8000, seed=2)
    assert not np.array_equal(a.samples, b.samples)


def test_sine_formula():
    s = synth.generate("sine", 1.0, 8000, seed=0)
    expected = [0.9 * math.sin(2 * math.pi * 440 * k / 8000) for k in range(8000)]
    assert len(s) == 8000
    assert np.max(np.abs(s.samples - expected)) <= 1e-12


def test_noise_bursts_nonnegative_count(burst_audio):
    # seed 0, 60 s at 44.1 kHz, counted after the 16-bit write
    assert len(burst_audio) == 2_646_000
    assert int(np.count_nonzero(burst_audio.samples >= 0)) >= 2_000_000


@pytest.mark.parametrize("kind", synth.KINDS)
def test_range(kind):
    s = synth.generate(kind, 3.0, 44100, seed=9)
    assert s.samples.min() >= -1.0 and s.samples.max() < 1.0
    assert s.source_bits == 16


def test_bad_arguments():
    with pytest.raises(ValueError):
        synth.generate("square", 1.0, 8000)
    with pytest.raises(ValueError):
        synth.generate("sine", 0, 8000)
    with pytest.raises(ValueError):
        synth.generate("sine", 1.0, 0)
