"""Encode LPCM audio into grayscale raster images and decode it back."""

from .analysis import ErrorReport, build_report, compute_error, emit_csv, summarize
from .raster_codec import (
    CodecSpec,
    ImageFormat,
    Manifest,
    QuantizedGrid,
    decode_image,
    dequantize,
    encode_image,
    quantize,
    read_manifest,
    write_manifest,
)
from .signal_prep import (
    PrepMode,
    SampleGrid,
    apply_mode,
    default_shape,
    filter_positive,
    flatten_grid,
    reshape_to_grid,
)
from .wav_io import AudioSignal, WavFormat, parse_wav, write_wav

__version__ = "0.1.0"
