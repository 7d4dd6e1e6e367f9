"""Exception types raised across the encode/decode pipeline."""


class PcmRasterError(Exception):
    """Base class for every error this package raises on purpose."""


class MalformedRiff(PcmRasterError, ValueError):
    pass


class UnsupportedFormat(PcmRasterError, ValueError):
    pass


class ShapeMismatch(PcmRasterError, ValueError):
    pass


class UnsupportedDepth(PcmRasterError, ValueError):
    pass


class MalformedImage(PcmRasterError, ValueError):
    pass


class UnsupportedImage(PcmRasterError, ValueError):
    pass


class MalformedManifest(PcmRasterError, ValueError):
    pass


class LengthMismatch(PcmRasterError, ValueError):
    pass


class EmptyInput(PcmRasterError, ValueError):
    pass


class GeometryMismatch(PcmRasterError, ValueError):
    pass
