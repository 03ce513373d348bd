"""TLV field primitives and the 16-bit one's-complement octet-sum checksum.

A TLV field is laid out as:

    Offset  Size  Field
    0       1     type code (meaning scoped to the enclosing TEDS class)
    1       1     value length N (0-255)
    2       N     value octets

The checksum over a buffer is 0xFFFF minus the plain octet sum modulo
0x10000, so any single-octet change is detectable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OversizeValue, Truncated

MAX_VALUE_LEN = 255


@dataclass(frozen=True, slots=True)
class TlvField:
    """One type-length-value field."""

    type_code: int
    value: bytes

    def __post_init__(self):
        if not 0 <= self.type_code <= 0xFF:
            raise ValueError(f"type_code must fit one octet, got {self.type_code}")
        if len(self.value) > MAX_VALUE_LEN:
            raise OversizeValue(
                f"value is {len(self.value)} octets, limit is {MAX_VALUE_LEN}"
            )


def encode_tlv(field: TlvField) -> bytes:
    """Serialize one field to [type][length][value...]."""
    return bytes((field.type_code, len(field.value))) + field.value


def decode_tlv(data: bytes, offset: int = 0) -> tuple[TlvField, int]:
    """Decode one field at `offset`; returns (field, offset past it)."""
    if offset + 2 > len(data):
        raise Truncated(f"TLV header needs 2 octets at offset {offset}")
    type_code = data[offset]
    length = data[offset + 1]
    end = offset + 2 + length
    if end > len(data):
        raise Truncated(
            f"TLV value of {length} octets at offset {offset} overruns buffer"
        )
    return TlvField(type_code, bytes(data[offset + 2 : end])), end


def decode_tlv_sequence(data: bytes) -> list[TlvField]:
    """Decode back-to-back fields covering the whole buffer."""
    fields: list[TlvField] = []
    offset = 0
    while offset < len(data):
        field, offset = decode_tlv(data, offset)
        fields.append(field)
    return fields


def compute_checksum(data: bytes) -> int:
    """0xFFFF - (octet sum mod 0x10000)."""
    return 0xFFFF - (sum(data) & 0xFFFF)
