"""Serialized TEDS block layout: length, class, version, TLVs, checksum.

    Offset  Size  Field
    0       4     big-endian length L of everything after this field,
                  checksum included
    4       1     class code
    5       1     format version (0x01)
    6       L-4   TLV fields, back to back
    4+L-2   2     big-endian checksum over all preceding octets,
                  length field included

A `.teds` file is exactly one block in this layout. Decoding validates
length first, checksum second, class third; content is only interpreted
after all three pass, so corrupted blocks never yield a record.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadChecksum, BadLength, Truncated, UnknownClass
from .records import TedsClass, TedsRecord, CLASS_OF_RECORD, record_fields, record_from_fields
from .tlv import TlvField, compute_checksum, decode_tlv_sequence, encode_tlv

TEDS_FORMAT_VERSION = 0x01

# class(1) + version(1) + checksum(2)
_MIN_BODY_LEN = 4


@dataclass(frozen=True)
class TedsBlock:
    """A decoded block: class code, version, and its raw TLV fields."""

    teds_class: int
    version: int
    fields: tuple[TlvField, ...]


def encode_block(block: TedsBlock) -> bytes:
    """Serialize a block, computing length and checksum."""
    tlv_bytes = b"".join(encode_tlv(f) for f in block.fields)
    body_len = 2 + len(tlv_bytes) + 2
    head = body_len.to_bytes(4, "big") + bytes((block.teds_class, block.version)) + tlv_bytes
    return head + compute_checksum(head).to_bytes(2, "big")


def decode_block(data: bytes) -> TedsBlock:
    """Parse and integrity-check one serialized block."""
    if len(data) < 4 + _MIN_BODY_LEN:
        raise BadLength(f"block needs at least {4 + _MIN_BODY_LEN} octets, got {len(data)}")
    body_len = int.from_bytes(data[:4], "big")
    if 4 + body_len != len(data):
        raise BadLength(
            f"length field says {body_len} octets after it, buffer has {len(data) - 4}"
        )
    stored = int.from_bytes(data[-2:], "big")
    computed = compute_checksum(data[:-2])
    if stored != computed:
        raise BadChecksum(f"stored 0x{stored:04X}, computed 0x{computed:04X}")
    try:
        fields = decode_tlv_sequence(data[6:-2])
    except Truncated as exc:
        raise BadLength(f"TLV fields overrun block body: {exc}")
    return TedsBlock(teds_class=data[4], version=data[5], fields=tuple(fields))


def encode_teds(record: TedsRecord) -> bytes:
    """Serialize a typed TEDS record to its block form."""
    teds_class = CLASS_OF_RECORD.get(type(record))
    if teds_class is None:
        raise TypeError(f"not a TEDS record: {type(record).__name__}")
    block = TedsBlock(
        teds_class=int(teds_class),
        version=TEDS_FORMAT_VERSION,
        fields=tuple(record_fields(record)),
    )
    return encode_block(block)


def decode_teds(data: bytes) -> TedsRecord:
    """Decode a serialized block into the typed record its header names."""
    block = decode_block(data)
    try:
        teds_class = TedsClass(block.teds_class)
    except ValueError:
        raise UnknownClass(f"class code 0x{block.teds_class:02X}")
    return record_from_fields(teds_class, block.fields)
