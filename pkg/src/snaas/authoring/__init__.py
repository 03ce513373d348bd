"""TEDS authoring: templates, description documents, encoding, registration."""

from .templates import (
    CLASS_NAMES,
    FieldDescriptor,
    TedsTemplate,
    create_template,
    resolve_class,
    template_to_xml,
)
from .description import (
    ConstraintViolation,
    SchemaError,
    TimDescription,
    parse_description,
    render_description,
)
from .pipeline import (
    META_KEY,
    NAME_KEY,
    PHY_KEY,
    RegistrationReceipt,
    channel_key,
    fetch_description,
    generate_teds,
    register_device,
)
from .service import AuthoringService, receipt_to_xml

__all__ = [
    "AuthoringService",
    "CLASS_NAMES",
    "ConstraintViolation",
    "FieldDescriptor",
    "META_KEY",
    "NAME_KEY",
    "PHY_KEY",
    "RegistrationReceipt",
    "SchemaError",
    "TedsTemplate",
    "TimDescription",
    "channel_key",
    "create_template",
    "fetch_description",
    "generate_teds",
    "parse_description",
    "receipt_to_xml",
    "register_device",
    "render_description",
    "resolve_class",
    "template_to_xml",
]
