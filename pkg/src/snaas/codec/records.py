"""The four mandatory TEDS record classes and their fixed TLV field tables.

Every record validates its invariants at construction, so a successfully
built record is always encodable. Unknown TLV type codes seen while decoding
a known class are preserved in `extra_fields` and re-emitted after the known
fields, but never interpreted.

Field tables (type code -> field, all integers big-endian, floats IEEE-754
binary64 big-endian):

    Meta (0x01):           0x04 uuid[16]  0x0D channel_count:u16
                           0x0E response_time_ms:u32
    TransducerChannel      0x0A channel_id:u8    0x0B kind:u8
    (0x03):                0x0C unit_code:u16    0x0D range_min:f64
                           0x0E range_max:f64    0x0F sample_period_us:u32
                           0x10 warmup_delay_us:u32
    UserTransducerName     0x0A manufacturer:utf8  0x0B model_number:utf8
    (0x0C):                0x0C user_name:utf8
    Phy (0x0D):            0x0A medium:u8  0x0B max_payload_octets:u16
                           0x0C data_rate_bps:u32
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, fields as dataclass_fields
from enum import IntEnum

from .errors import InvalidRecord, MalformedField, MissingField
from .tlv import TlvField

UUID_LEN = 16


class TedsClass(IntEnum):
    """Implemented TEDS class codes."""

    META = 0x01
    TRANSDUCER_CHANNEL = 0x03
    USER_TRANSDUCER_NAME = 0x0C
    PHY = 0x0D


# Optional classes: codes reserved, never encoded or decoded here.
RESERVED_CLASS_CODES = {
    0x05: "calibration",
    0x08: "frequency-response",
    0x09: "transfer-function",
}


class ChannelKind(IntEnum):
    SENSOR = 0
    ACTUATOR = 1


class PhyMedium(IntEnum):
    SIM_STREAM = 0
    BLE = 1
    USB = 2


class Unit(IntEnum):
    """Flat physical-unit enumeration; codes above AMPERE are reserved."""

    UNITLESS = 0
    KELVIN = 1
    CELSIUS = 2
    PASCAL = 3
    LUX = 4
    PERCENT_RH = 5
    METRE_PER_S2 = 6
    VOLT = 7
    AMPERE = 8


_U8 = (0, 0xFF)
_U16 = (0, 0xFFFF)
_U32 = (0, 0xFFFF_FFFF)


def _require_uint(field: str, value, bounds: tuple[int, int], minimum: int = 0) -> int:
    lo, hi = bounds
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidRecord(field, f"expected an integer, got {type(value).__name__}")
    if value < max(lo, minimum) or value > hi:
        raise InvalidRecord(
            field, f"must be in [{max(lo, minimum)}, {hi}], got {value}"
        )
    return value


def _require_text(field: str, value) -> str:
    if not isinstance(value, str):
        raise InvalidRecord(field, f"expected text, got {type(value).__name__}")
    if len(value.encode("utf-8")) > 255:
        raise InvalidRecord(field, "UTF-8 encoding exceeds 255 octets")
    return value


@dataclass(frozen=True)
class MetaTeds:
    """Device-level data sheet: identity, channel inventory, responsiveness."""

    uuid: bytes
    channel_count: int
    response_time_ms: int
    extra_fields: tuple[TlvField, ...] = ()

    def __post_init__(self):
        if not isinstance(self.uuid, (bytes, bytearray)) or len(self.uuid) != UUID_LEN:
            raise InvalidRecord("uuid", f"must be {UUID_LEN} octets")
        object.__setattr__(self, "uuid", bytes(self.uuid))
        _require_uint("channel_count", self.channel_count, _U16, minimum=1)
        _require_uint("response_time_ms", self.response_time_ms, _U32, minimum=1)
        object.__setattr__(self, "extra_fields", tuple(self.extra_fields))


@dataclass(frozen=True)
class TransducerChannelTeds:
    """Per-channel operating parameters."""

    channel_id: int
    channel_kind: ChannelKind
    unit_code: int
    range_min: float
    range_max: float
    sample_period_us: int
    warmup_delay_us: int = 0
    extra_fields: tuple[TlvField, ...] = ()

    def __post_init__(self):
        _require_uint("channel_id", self.channel_id, _U8)
        try:
            object.__setattr__(self, "channel_kind", ChannelKind(self.channel_kind))
        except ValueError:
            raise InvalidRecord("channel_kind", f"unknown kind {self.channel_kind!r}")
        _require_uint("unit_code", self.unit_code, _U16)
        for name in ("range_min", "range_max"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise InvalidRecord(name, "expected a float")
            object.__setattr__(self, name, float(value))
        if not self.range_min < self.range_max:
            raise InvalidRecord(
                "range_min",
                f"range_min ({self.range_min}) must be < range_max ({self.range_max})",
            )
        _require_uint("sample_period_us", self.sample_period_us, _U32, minimum=1)
        _require_uint("warmup_delay_us", self.warmup_delay_us, _U32)
        object.__setattr__(self, "extra_fields", tuple(self.extra_fields))


@dataclass(frozen=True)
class UserTransducerNameTeds:
    """Human/system naming: manufacturer, model, installer-assigned name."""

    manufacturer: str
    model_number: str
    user_name: str
    extra_fields: tuple[TlvField, ...] = ()

    def __post_init__(self):
        for name in ("manufacturer", "model_number", "user_name"):
            _require_text(name, getattr(self, name))
        object.__setattr__(self, "extra_fields", tuple(self.extra_fields))


@dataclass(frozen=True)
class PhyTeds:
    """Physical (here: simulated) link between the TIM and the NCAP."""

    medium: PhyMedium
    max_payload_octets: int
    data_rate_bps: int
    extra_fields: tuple[TlvField, ...] = ()

    def __post_init__(self):
        try:
            object.__setattr__(self, "medium", PhyMedium(self.medium))
        except ValueError:
            raise InvalidRecord("medium", f"unknown medium {self.medium!r}")
        # 22 = association packet size; the link must carry one whole.
        _require_uint("max_payload_octets", self.max_payload_octets, _U16, minimum=22)
        _require_uint("data_rate_bps", self.data_rate_bps, _U32)
        object.__setattr__(self, "extra_fields", tuple(self.extra_fields))


TedsRecord = MetaTeds | TransducerChannelTeds | UserTransducerNameTeds | PhyTeds


# --- field tables -----------------------------------------------------------

@dataclass(frozen=True)
class _FieldSpec:
    type_code: int
    attr: str
    kind: str  # uuid | u8 | u16 | u32 | f64 | utf8


_TABLES: dict[TedsClass, tuple[_FieldSpec, ...]] = {
    TedsClass.META: (
        _FieldSpec(0x04, "uuid", "uuid"),
        _FieldSpec(0x0D, "channel_count", "u16"),
        _FieldSpec(0x0E, "response_time_ms", "u32"),
    ),
    TedsClass.TRANSDUCER_CHANNEL: (
        _FieldSpec(0x0A, "channel_id", "u8"),
        _FieldSpec(0x0B, "channel_kind", "u8"),
        _FieldSpec(0x0C, "unit_code", "u16"),
        _FieldSpec(0x0D, "range_min", "f64"),
        _FieldSpec(0x0E, "range_max", "f64"),
        _FieldSpec(0x0F, "sample_period_us", "u32"),
        _FieldSpec(0x10, "warmup_delay_us", "u32"),
    ),
    TedsClass.USER_TRANSDUCER_NAME: (
        _FieldSpec(0x0A, "manufacturer", "utf8"),
        _FieldSpec(0x0B, "model_number", "utf8"),
        _FieldSpec(0x0C, "user_name", "utf8"),
    ),
    TedsClass.PHY: (
        _FieldSpec(0x0A, "medium", "u8"),
        _FieldSpec(0x0B, "max_payload_octets", "u16"),
        _FieldSpec(0x0C, "data_rate_bps", "u32"),
    ),
}

RECORD_TYPES: dict[TedsClass, type] = {
    TedsClass.META: MetaTeds,
    TedsClass.TRANSDUCER_CHANNEL: TransducerChannelTeds,
    TedsClass.USER_TRANSDUCER_NAME: UserTransducerNameTeds,
    TedsClass.PHY: PhyTeds,
}

CLASS_OF_RECORD: dict[type, TedsClass] = {v: k for k, v in RECORD_TYPES.items()}

_UINT_WIDTH = {"u8": 1, "u16": 2, "u32": 4}


def _encode_value(spec: _FieldSpec, value) -> bytes:
    if spec.kind == "uuid":
        return bytes(value)
    if spec.kind in _UINT_WIDTH:
        return int(value).to_bytes(_UINT_WIDTH[spec.kind], "big")
    if spec.kind == "f64":
        return struct.pack(">d", value)
    if spec.kind == "utf8":
        return value.encode("utf-8")
    raise AssertionError(f"unhandled field kind {spec.kind}")


def _decode_value(spec: _FieldSpec, data: bytes):
    if spec.kind == "uuid":
        if len(data) != UUID_LEN:
            raise MalformedField(spec.attr, f"expected {UUID_LEN} octets, got {len(data)}")
        return data
    if spec.kind in _UINT_WIDTH:
        width = _UINT_WIDTH[spec.kind]
        if len(data) != width:
            raise MalformedField(spec.attr, f"expected {width} octets, got {len(data)}")
        return int.from_bytes(data, "big")
    if spec.kind == "f64":
        if len(data) != 8:
            raise MalformedField(spec.attr, f"expected 8 octets, got {len(data)}")
        return struct.unpack(">d", data)[0]
    if spec.kind == "utf8":
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedField(spec.attr, f"invalid UTF-8: {exc}")
    raise AssertionError(f"unhandled field kind {spec.kind}")


def record_fields(record: TedsRecord) -> list[TlvField]:
    """Flatten a record into TLV fields, table order first, extras after."""
    teds_class = CLASS_OF_RECORD[type(record)]
    out = [
        TlvField(spec.type_code, _encode_value(spec, getattr(record, spec.attr)))
        for spec in _TABLES[teds_class]
    ]
    out.extend(record.extra_fields)
    return out


def record_from_fields(teds_class: TedsClass, fields: tuple[TlvField, ...]) -> TedsRecord:
    """Rebuild the typed record for `teds_class` from decoded TLV fields.

    Raises MissingField / MalformedField on structural problems and
    InvalidRecord when the decoded values violate the type's invariants.
    """
    table = {spec.type_code: spec for spec in _TABLES[teds_class]}
    values: dict[str, object] = {}
    extras: list[TlvField] = []
    for field in fields:
        spec = table.get(field.type_code)
        if spec is None:
            extras.append(field)
            continue
        if spec.attr in values:
            raise MalformedField(spec.attr, "duplicate TLV field")
        values[spec.attr] = _decode_value(spec, field.value)
    for spec in _TABLES[teds_class]:
        if spec.attr not in values:
            raise MissingField(spec.attr)
    record_type = RECORD_TYPES[teds_class]
    try:
        return record_type(**values, extra_fields=tuple(extras))
    except InvalidRecord as exc:
        # Enum-coded fields decode as plain u8; out-of-range codes are a
        # wire-content problem, not a caller mistake.
        enum_attrs = {"channel_kind", "medium"}
        if exc.field in enum_attrs:
            raise MalformedField(exc.field, str(exc))
        raise


def record_attr_names(teds_class: TedsClass) -> tuple[str, ...]:
    """Mandatory field names of a class, in table order."""
    return tuple(spec.attr for spec in _TABLES[teds_class])


def record_as_dict(record: TedsRecord) -> dict:
    """Plain-value view of a record (uuid as hex, enums as names)."""
    out: dict[str, object] = {}
    for f in dataclass_fields(record):
        if f.name == "extra_fields":
            continue
        value = getattr(record, f.name)
        if isinstance(value, bytes):
            value = value.hex()
        elif isinstance(value, IntEnum):
            value = value.name.lower()
        out[f.name] = value
    return out
