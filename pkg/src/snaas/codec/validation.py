"""Cross-record consistency check over a device's full TEDS set."""

from __future__ import annotations

from dataclasses import dataclass, field

from .records import MetaTeds, PhyTeds, TransducerChannelTeds, UserTransducerNameTeds


@dataclass
class ValidationReport:
    """Accumulated violations; empty means the set can configure a device."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str) -> None:
        self.violations.append(message)

    def __str__(self) -> str:
        return "ok" if self.ok else "; ".join(self.violations)


def validate_teds_set(
    meta: MetaTeds,
    channels: list[TransducerChannelTeds],
    name: UserTransducerNameTeds,
    phy: PhyTeds,
) -> ValidationReport:
    """Check that the four sections describe one coherent device.

    Individual records already hold their own invariants (enforced at
    construction), so this focuses on the relationships between them.
    """
    report = ValidationReport()
    if not isinstance(meta, MetaTeds):
        report.add(f"meta: expected MetaTeds, got {type(meta).__name__}")
        return report
    if meta.channel_count != len(channels):
        report.add(
            f"channel_count: meta declares {meta.channel_count} channel(s), "
            f"{len(channels)} supplied"
        )
    seen: set[int] = set()
    for channel in channels:
        if not isinstance(channel, TransducerChannelTeds):
            report.add(f"channels: expected TransducerChannelTeds, got {type(channel).__name__}")
            continue
        if channel.channel_id in seen:
            report.add(f"channel_id: duplicate id {channel.channel_id}")
        seen.add(channel.channel_id)
    if not isinstance(name, UserTransducerNameTeds):
        report.add(f"name: expected UserTransducerNameTeds, got {type(name).__name__}")
    if not isinstance(phy, PhyTeds):
        report.add(f"phy: expected PhyTeds, got {type(phy).__name__}")
    return report
