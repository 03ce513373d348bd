"""Device-description XML: render a TimDescription, parse one back.

Document schema (attributes, all required):

    <tim uuid="{32 hex digits}">
      <meta channel_count=".." response_time_ms=".."/>
      <channel id=".." kind="sensor|actuator" unit_code=".." range_min=".."
               range_max=".." sample_period_us=".." warmup_delay_us=".."/>
      ... one <channel> per transducer channel ...
      <name manufacturer=".." model=".." user_name=".."/>
      <phy medium="sim_stream|ble|usb" max_payload=".." data_rate_bps=".."/>
    </tim>

parse_description inverts render_description exactly; floats are written
with repr so the roundtrip is value-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.etree import ElementTree as ET

from snaas.codec import (
    ChannelKind,
    InvalidRecord,
    MetaTeds,
    PhyMedium,
    PhyTeds,
    TransducerChannelTeds,
    UserTransducerNameTeds,
    validate_teds_set,
)
from snaas.util import uuid_from_hex


class SchemaError(Exception):
    """Document does not match the schema; `path` names the offending node."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class ConstraintViolation(Exception):
    """Well-formed document with a value outside its field's constraints."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class TimDescription:
    """Everything needed to build a device's four TEDS sections."""

    uuid: bytes
    response_time_ms: int
    channels: tuple[TransducerChannelTeds, ...]
    name: UserTransducerNameTeds
    phy: PhyTeds

    def __post_init__(self):
        if len(self.uuid) != 16:
            raise ValueError("uuid must be 16 octets")
        object.__setattr__(self, "uuid", bytes(self.uuid))
        object.__setattr__(self, "channels", tuple(self.channels))

    @property
    def meta(self) -> MetaTeds:
        """Derived Meta section; channel_count always matches the channel list."""
        return MetaTeds(
            uuid=self.uuid,
            channel_count=len(self.channels),
            response_time_ms=self.response_time_ms,
        )

    def validate(self) -> None:
        """Raise ConstraintViolation if the description cannot configure a device."""
        try:
            meta = self.meta
        except InvalidRecord as exc:
            raise ConstraintViolation(exc.field, str(exc))
        report = validate_teds_set(meta, list(self.channels), self.name, self.phy)
        if not report.ok:
            first = report.violations[0]
            field = first.split(":", 1)[0]
            raise ConstraintViolation(field, first)


def _fmt_float(value: float) -> str:
    return repr(float(value))


def render_description(desc: TimDescription) -> str:
    """Emit the description document; raises ConstraintViolation when invalid."""
    desc.validate()
    root = ET.Element("tim", {"uuid": desc.uuid.hex()})
    ET.SubElement(root, "meta", {
        "channel_count": str(len(desc.channels)),
        "response_time_ms": str(desc.response_time_ms),
    })
    for ch in desc.channels:
        ET.SubElement(root, "channel", {
            "id": str(ch.channel_id),
            "kind": ch.channel_kind.name.lower(),
            "unit_code": str(ch.unit_code),
            "range_min": _fmt_float(ch.range_min),
            "range_max": _fmt_float(ch.range_max),
            "sample_period_us": str(ch.sample_period_us),
            "warmup_delay_us": str(ch.warmup_delay_us),
        })
    ET.SubElement(root, "name", {
        "manufacturer": desc.name.manufacturer,
        "model": desc.name.model_number,
        "user_name": desc.name.user_name,
    })
    ET.SubElement(root, "phy", {
        "medium": desc.phy.medium.name.lower(),
        "max_payload": str(desc.phy.max_payload_octets),
        "data_rate_bps": str(desc.phy.data_rate_bps),
    })
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


def _attr(elem: ET.Element, path: str, name: str) -> str:
    value = elem.get(name)
    if value is None:
        raise SchemaError(f"{path}/{name}", "missing attribute")
    return value


def _int_attr(elem: ET.Element, path: str, name: str) -> int:
    raw = _attr(elem, path, name)
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"{path}/{name}", f"not an integer: {raw!r}")


def _float_attr(elem: ET.Element, path: str, name: str) -> float:
    raw = _attr(elem, path, name)
    try:
        return float(raw)
    except ValueError:
        raise SchemaError(f"{path}/{name}", f"not a number: {raw!r}")


def _sole(root: ET.Element, tag: str) -> ET.Element:
    found = root.findall(tag)
    if not found:
        raise SchemaError(f"/tim/{tag}", "missing element")
    if len(found) > 1:
        raise SchemaError(f"/tim/{tag}", "element must appear exactly once")
    return found[0]


def _build(path: str, factory, **kwargs):
    try:
        return factory(**kwargs)
    except InvalidRecord as exc:
        raise ConstraintViolation(exc.field, f"{path}: {exc}")


def parse_description(document: str | bytes) -> TimDescription:
    """Parse and fully validate a description document."""
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise SchemaError("/", f"not well-formed XML: {exc}")
    if root.tag != "tim":
        raise SchemaError("/", f"root element must be <tim>, got <{root.tag}>")

    uuid_hex = root.get("uuid")
    if uuid_hex is None:
        raise SchemaError("/tim/uuid", "missing attribute")
    try:
        uuid = uuid_from_hex(uuid_hex)
    except ValueError as exc:
        raise SchemaError("/tim/uuid", str(exc))

    meta_elem = _sole(root, "meta")
    channel_count = _int_attr(meta_elem, "/tim/meta", "channel_count")
    response_time_ms = _int_attr(meta_elem, "/tim/meta", "response_time_ms")

    channel_elems = root.findall("channel")
    if not channel_elems:
        raise SchemaError("/tim/channel", "at least one channel element required")
    channels: list[TransducerChannelTeds] = []
    seen_ids: set[int] = set()
    for index, elem in enumerate(channel_elems):
        path = f"/tim/channel[{index}]"
        channel_id = _int_attr(elem, path, "id")
        if channel_id in seen_ids:
            raise ConstraintViolation("channel_id", f"{path}: duplicate id {channel_id}")
        seen_ids.add(channel_id)
        kind_name = _attr(elem, path, "kind")
        try:
            kind = ChannelKind[kind_name.upper()]
        except KeyError:
            raise ConstraintViolation("channel_kind", f"{path}: unknown kind {kind_name!r}")
        channels.append(_build(
            path, TransducerChannelTeds,
            channel_id=channel_id,
            channel_kind=kind,
            unit_code=_int_attr(elem, path, "unit_code"),
            range_min=_float_attr(elem, path, "range_min"),
            range_max=_float_attr(elem, path, "range_max"),
            sample_period_us=_int_attr(elem, path, "sample_period_us"),
            warmup_delay_us=_int_attr(elem, path, "warmup_delay_us"),
        ))

    if channel_count != len(channels):
        raise ConstraintViolation(
            "channel_count",
            f"/tim/meta: channel_count={channel_count} but {len(channels)} channel element(s)",
        )

    name_elem = _sole(root, "name")
    name = _build(
        "/tim/name", UserTransducerNameTeds,
        manufacturer=_attr(name_elem, "/tim/name", "manufacturer"),
        model_number=_attr(name_elem, "/tim/name", "model"),
        user_name=_attr(name_elem, "/tim/name", "user_name"),
    )

    phy_elem = _sole(root, "phy")
    medium_name = _attr(phy_elem, "/tim/phy", "medium")
    try:
        medium = PhyMedium[medium_name.upper()]
    except KeyError:
        raise ConstraintViolation("medium", f"/tim/phy: unknown medium {medium_name!r}")
    phy = _build(
        "/tim/phy", PhyTeds,
        medium=medium,
        max_payload_octets=_int_attr(phy_elem, "/tim/phy", "max_payload"),
        data_rate_bps=_int_attr(phy_elem, "/tim/phy", "data_rate_bps"),
    )

    desc = TimDescription(
        uuid=uuid,
        response_time_ms=response_time_ms,
        channels=tuple(channels),
        name=name,
        phy=phy,
    )
    desc.validate()
    return desc
