"""Exception types shared across the codecs and container parsers."""


class FormatError(ValueError):
    """A container or payload is malformed."""


class BadMagicError(FormatError):
    """The leading magic tag does not identify a known container."""


class TruncatedError(FormatError):
    """The container ends before the declared content."""


class BitstreamError(FormatError):
    """The entropy-coded payload cannot be decoded."""


class SinkError(RuntimeError):
    """A transfer sink failed to deliver a flushed payload."""
