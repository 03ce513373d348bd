"""From description to encoded binaries, and one-time directory registration."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from snaas.codec import (
    InvalidRecord,
    MetaTeds,
    PhyTeds,
    TedsClass,
    TransducerChannelTeds,
    UserTransducerNameTeds,
    decode_teds,
    encode_teds,
    validate_teds_set,
)
from snaas.registry import RegistryClient
from snaas.util import parse_endpoint

from .description import TimDescription

META_KEY = f"{int(TedsClass.META):02X}"
NAME_KEY = f"{int(TedsClass.USER_TRANSDUCER_NAME):02X}"
PHY_KEY = f"{int(TedsClass.PHY):02X}"


def channel_key(channel_id: int) -> str:
    return f"{int(TedsClass.TRANSDUCER_CHANNEL):02X}:{channel_id:02d}"


def generate_teds(desc: TimDescription) -> dict[str, bytes]:
    """Encode the full TEDS set; keys are the directory class_keys.

    Always 3 + channel_count binaries: Meta, one per channel, UserName, Phy.
    """
    meta = desc.meta  # raises InvalidRecord for zero channels
    report = validate_teds_set(meta, list(desc.channels), desc.name, desc.phy)
    if not report.ok:
        first = report.violations[0]
        raise InvalidRecord(first.split(":", 1)[0], first)
    binaries: dict[str, bytes] = {META_KEY: encode_teds(meta)}
    for ch in desc.channels:
        binaries[channel_key(ch.channel_id)] = encode_teds(ch)
    binaries[NAME_KEY] = encode_teds(desc.name)
    binaries[PHY_KEY] = encode_teds(desc.phy)
    return binaries


@dataclass
class RegistrationReceipt:
    uuid: bytes
    stored: dict[str, int]  # class_key -> version
    registered_at: float = field(default_factory=time.time)

    @property
    def keys(self) -> list[str]:
        return list(self.stored)


def _as_client(registry) -> tuple[RegistryClient, bool]:
    if isinstance(registry, RegistryClient):
        return registry, False
    if isinstance(registry, str):
        host, port = parse_endpoint(registry)
    else:
        host, port = registry
    return RegistryClient(host, port), True


def register_device(desc: TimDescription, registry) -> RegistrationReceipt:
    """Store every generated binary in the directory; idempotent re-runs bump versions.

    `registry` may be a RegistryClient, a "host:port" string, or a (host, port)
    pair. Raises RegistryUnreachable / StoreRejected from the client layer.
    """
    binaries = generate_teds(desc)
    client, owned = _as_client(registry)
    try:
        stored = {
            class_key: client.put(desc.uuid, class_key, binary)
            for class_key, binary in binaries.items()
        }
    finally:
        if owned:
            client.close()
    return RegistrationReceipt(uuid=desc.uuid, stored=stored)


def fetch_description(client: RegistryClient, uuid: bytes) -> TimDescription:
    """Rebuild a TimDescription from the binaries stored in the directory."""
    keys = client.list(uuid)
    meta: MetaTeds | None = None
    name: UserTransducerNameTeds | None = None
    phy: PhyTeds | None = None
    channels: list[TransducerChannelTeds] = []
    for class_key in keys:
        record = decode_teds(client.get(uuid, class_key))
        if isinstance(record, MetaTeds):
            meta = record
        elif isinstance(record, TransducerChannelTeds):
            channels.append(record)
        elif isinstance(record, UserTransducerNameTeds):
            name = record
        elif isinstance(record, PhyTeds):
            phy = record
    if meta is None or name is None or phy is None or not channels:
        missing = [
            label
            for label, value in (("meta", meta), ("channels", channels or None),
                                 ("name", name), ("phy", phy))
            if value is None
        ]
        raise LookupError(f"directory holds an incomplete TEDS set for {uuid.hex()}: "
                          f"missing {', '.join(missing)}")
    channels.sort(key=lambda ch: ch.channel_id)
    return TimDescription(
        uuid=uuid,
        response_time_ms=meta.response_time_ms,
        channels=tuple(channels),
        name=name,
        phy=phy,
    )
