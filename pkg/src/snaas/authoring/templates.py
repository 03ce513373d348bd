"""E-form templates: the mandatory field set of each TEDS class, with constraints."""

from __future__ import annotations

from dataclasses import dataclass
from xml.etree import ElementTree as ET

from snaas.codec import TedsClass, UnknownClass

TEMPLATE_VERSION = 1

CLASS_NAMES: dict[TedsClass, str] = {
    TedsClass.META: "meta",
    TedsClass.TRANSDUCER_CHANNEL: "channel",
    TedsClass.USER_TRANSDUCER_NAME: "name",
    TedsClass.PHY: "phy",
}

_NAME_TO_CLASS = {name: cls for cls, name in CLASS_NAMES.items()}
_U32 = 0xFFFF_FFFF


@dataclass(frozen=True)
class FieldDescriptor:
    """One form field: name, value family, and its constraints."""

    name: str
    semantic_type: str  # uuid | uint | float | utf8 | enum
    required: bool = True
    minimum: float | None = None
    maximum: float | None = None
    allowed: tuple[str, ...] = ()


@dataclass(frozen=True)
class TedsTemplate:
    teds_class: TedsClass
    descriptors: tuple[FieldDescriptor, ...]
    template_version: int = TEMPLATE_VERSION

    def descriptor(self, name: str) -> FieldDescriptor:
        for d in self.descriptors:
            if d.name == name:
                return d
        raise KeyError(name)


_TEMPLATES: dict[TedsClass, tuple[FieldDescriptor, ...]] = {
    TedsClass.META: (
        FieldDescriptor("uuid", "uuid"),
        FieldDescriptor("channel_count", "uint", minimum=1, maximum=0xFFFF),
        FieldDescriptor("response_time_ms", "uint", minimum=1, maximum=_U32),
    ),
    TedsClass.TRANSDUCER_CHANNEL: (
        FieldDescriptor("channel_id", "uint", minimum=0, maximum=0xFF),
        FieldDescriptor("channel_kind", "enum", allowed=("sensor", "actuator")),
        FieldDescriptor("unit_code", "uint", minimum=0, maximum=0xFFFF),
        FieldDescriptor("range_min", "float"),
        FieldDescriptor("range_max", "float"),
        FieldDescriptor("sample_period_us", "uint", minimum=1, maximum=_U32),
        FieldDescriptor("warmup_delay_us", "uint", minimum=0, maximum=_U32),
    ),
    TedsClass.USER_TRANSDUCER_NAME: (
        FieldDescriptor("manufacturer", "utf8", maximum=255),
        FieldDescriptor("model_number", "utf8", maximum=255),
        FieldDescriptor("user_name", "utf8", maximum=255),
    ),
    TedsClass.PHY: (
        FieldDescriptor("medium", "enum", allowed=("sim_stream", "ble", "usb")),
        FieldDescriptor("max_payload_octets", "uint", minimum=22, maximum=0xFFFF),
        FieldDescriptor("data_rate_bps", "uint", minimum=0, maximum=_U32),
    ),
}


def resolve_class(name_or_code) -> TedsClass:
    """Map a class name ("meta"), hex code ("0C"), or TedsClass to TedsClass."""
    if isinstance(name_or_code, TedsClass):
        return name_or_code
    if isinstance(name_or_code, int):
        try:
            return TedsClass(name_or_code)
        except ValueError:
            raise UnknownClass(f"class code 0x{name_or_code:02X}")
    text = str(name_or_code).strip().lower()
    if text in _NAME_TO_CLASS:
        return _NAME_TO_CLASS[text]
    try:
        return TedsClass(int(text, 16))
    except ValueError:
        raise UnknownClass(f"unknown TEDS class {name_or_code!r}")


def create_template(teds_class) -> TedsTemplate:
    """The e-form template for one of the four implemented classes."""
    cls = resolve_class(teds_class)
    return TedsTemplate(teds_class=cls, descriptors=_TEMPLATES[cls])


def template_to_xml(template: TedsTemplate) -> str:
    root = ET.Element(
        "template",
        {
            "class": CLASS_NAMES[template.teds_class],
            "class_code": f"{int(template.teds_class):02X}",
            "version": str(template.template_version),
        },
    )
    for d in template.descriptors:
        attrs = {"name": d.name, "type": d.semantic_type, "required": str(d.required).lower()}
        if d.minimum is not None:
            attrs["min"] = f"{d.minimum:g}"
        if d.maximum is not None:
            attrs["max"] = f"{d.maximum:g}"
        if d.allowed:
            attrs["allowed"] = ",".join(d.allowed)
        ET.SubElement(root, "field", attrs)
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"
