"""Exception hierarchy shared by the codec modules."""

from __future__ import annotations


class I2ICError(Exception):
    """Base class for all codec errors."""


class DegenerateAngle(I2ICError, ValueError):
    """A plane rotation has no finite lifting decomposition."""


class Overflow(I2ICError, OverflowError):
    """Intermediate integer arithmetic left the 32-bit signed range."""


class SingularTransform(I2ICError, ValueError):
    pass


class MagnitudeOverflow(I2ICError, ValueError):
    """A value is too large for the Golomb-Rice escape code."""


class TruncatedStream(I2ICError, EOFError):
    pass


class MalformedEscape(I2ICError, ValueError):
    pass


class MalformedStream(I2ICError, ValueError):
    """A container or payload could not be parsed."""


class DimensionError(I2ICError, ValueError):
    pass


class UnsupportedFormat(I2ICError, ValueError):
    pass


class CorruptHeader(I2ICError, ValueError):
    pass
