"""Exception hierarchy shared by all modules."""


class StegoError(Exception):
    """Base class for every error raised by iwtsteg."""


class ValidationError(StegoError, ValueError):
    """Input violates a documented precondition."""


class DimensionMismatch(ValidationError):
    pass


class PixelRangeError(ValidationError):
    pass


class OddDimension(ValidationError):
    pass


class EmptyCover(ValidationError):
    pass


class CapacityExceeded(ValidationError):
    pass


class PayloadTooLarge(CapacityExceeded):
    pass


class KeyOverflow(ValidationError):
    """Key grid or cover block count does not fit the 16-bit header fields."""


class DecodeError(StegoError):
    """Embedded data could not be decoded (wrong passphrase, wrong domain, not a stego image)."""


class KeyCoverMismatch(DecodeError):
    pass


class BadLengthPrefix(DecodeError):
    pass


class KeyFormatError(DecodeError):
    pass


class BadMagic(KeyFormatError):
    pass


class BadVersion(KeyFormatError):
    pass


class BadHeader(KeyFormatError):
    pass


class TruncatedBody(KeyFormatError):
    pass


class TrailingData(KeyFormatError):
    pass


class BadCompression(KeyFormatError):
    pass


class IndexOutOfRange(KeyFormatError):
    pass


class RoundTripUnstable(StegoError):
    """The YCbCr verification loop did not reach a stable stego image."""
