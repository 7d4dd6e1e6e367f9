import struct

import numpy as np
import pytest

from pcmraster import synth
from pcmraster.wav_io import parse_wav, write_wav


def riff(*chunks, form=b"WAVE", magic=b"RIFF"):
    """Assemble a RIFF file by hand from (id, payload) pairs, independent of write_wav."""
    body = b""
    for cid, payload in chunks:
        body += cid + struct.pack("<I", len(payload)) + payload
        if len(payload) % 2:
            body += b"\x00"
    return magic + struct.pack("<I", 4 + len(body)) + form + body


def fmt_chunk(channels=1, rate=44100, bits=16, code=1):
    align = channels * bits // 8
    return b"fmt ", struct.pack("<HHIIHH", code, channels, rate, rate * align, align, bits)


@pytest.fixture(scope="session")
def burst_audio():
    """60 s of seeded noise-burst audio, as stored on disk at 16 bits."""
    return parse_wav(write_wav(synth.generate("noise-bursts", 60, 44100, seed=0), 16))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
