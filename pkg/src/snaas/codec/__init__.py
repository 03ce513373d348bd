"""Bit-exact encoder/decoder for TLV fields and the four mandatory TEDS classes.

All functions here are pure and operate on immutable inputs; they are safe
to call concurrently from any number of threads.
"""

from .errors import (
    BadChecksum,
    BadLength,
    CodecError,
    InvalidRecord,
    MalformedField,
    MissingField,
    OversizeValue,
    Truncated,
    UnknownClass,
)
from .tlv import TlvField, compute_checksum, decode_tlv, decode_tlv_sequence, encode_tlv
from .records import (
    ChannelKind,
    MetaTeds,
    PhyMedium,
    PhyTeds,
    RECORD_TYPES,
    RESERVED_CLASS_CODES,
    TedsClass,
    TedsRecord,
    TransducerChannelTeds,
    Unit,
    UserTransducerNameTeds,
    record_as_dict,
    record_attr_names,
)
from .blocks import TEDS_FORMAT_VERSION, TedsBlock, decode_block, decode_teds, encode_block, encode_teds
from .validation import ValidationReport, validate_teds_set

__all__ = [
    "BadChecksum",
    "BadLength",
    "ChannelKind",
    "CodecError",
    "InvalidRecord",
    "MalformedField",
    "MetaTeds",
    "MissingField",
    "OversizeValue",
    "PhyMedium",
    "PhyTeds",
    "RECORD_TYPES",
    "RESERVED_CLASS_CODES",
    "TEDS_FORMAT_VERSION",
    "TedsBlock",
    "TedsClass",
    "TedsRecord",
    "TlvField",
    "TransducerChannelTeds",
    "Truncated",
    "Unit",
    "UnknownClass",
    "UserTransducerNameTeds",
    "ValidationReport",
    "compute_checksum",
    "decode_block",
    "decode_teds",
    "decode_tlv",
    "decode_tlv_sequence",
    "encode_block",
    "encode_teds",
    "encode_tlv",
    "record_as_dict",
    "record_attr_names",
    "validate_teds_set",
]
