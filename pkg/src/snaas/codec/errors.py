"""Codec error types.

Decode errors name the first integrity failure found; validation order is
length, checksum, class, field structure, field content. A single corrupted
octet in a serialized block therefore always surfaces as BadLength (length
field hit) or BadChecksum (anything after it), never as a silently wrong
record.
"""


class CodecError(Exception):
    """Base class for all TEDS codec failures."""


class OversizeValue(CodecError):
    """TLV value exceeds the 255-octet single-length-octet bound."""


class Truncated(CodecError):
    """Declared length overruns the available octets."""


class InvalidRecord(CodecError):
    """A typed TEDS record violates one of its field invariants."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class BadChecksum(CodecError):
    """Stored checksum does not match the octet sum."""


class BadLength(CodecError):
    """Block length field inconsistent with the octets present."""


class UnknownClass(CodecError):
    """Class code is not one of the implemented TEDS classes."""


class MissingField(CodecError):
    """A mandatory TLV type code is absent from the block."""

    def __init__(self, field: str):
        super().__init__(f"mandatory field missing: {field}")
        self.field = field


class MalformedField(CodecError):
    """A TLV value has the wrong width or an out-of-range enum code."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
