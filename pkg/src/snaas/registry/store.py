"""Durable UUID-keyed store of encoded TEDS binaries.

Persistence is an append-only log replayed at open, last write wins. Each
record is a text header line followed by the raw binary:

    PUT <uuid-hex-32> <class_key> <len>\n<len octets>\n
    DEL <uuid-hex-32> <class_key>\n

A put is fsynced before it is acknowledged, so an acknowledged write
survives an abrupt kill. A torn record at the tail (crash mid-write) is
detected during replay and truncated away. When replay finds that most of
the log is dead weight, the log is compacted in place (write-new, rename).
"""

from __future__ import annotations

import logging
import os
import re
import threading
import time
from dataclasses import dataclass, field

from snaas.codec import CodecError, decode_teds
from snaas.util import uuid_to_hex

logger = logging.getLogger(__name__)

CLASS_KEY_RE = re.compile(r"^[0-9A-F]{2}(:[0-9]{1,3})?$")

# Compact at open when dead records outnumber live ones this many times over.
_COMPACT_DEAD_RATIO = 2
_COMPACT_MIN_RECORDS = 64


class RegistryError(Exception):
    """Base class for directory-service failures."""


class NotFound(RegistryError):
    """No entry stored under the requested key."""


class InvalidBinary(RegistryError):
    """The submitted octets do not decode as a TEDS block."""


class StorageFailure(RegistryError):
    """The backing log could not be written."""


@dataclass(frozen=True)
class DirectoryKey:
    """(uuid, class_key) addressing one stored TEDS section."""

    uuid: bytes
    class_key: str

    def __post_init__(self):
        uuid_to_hex(self.uuid)  # validates length
        if not CLASS_KEY_RE.match(self.class_key):
            raise ValueError(f"bad class_key {self.class_key!r}")

    @property
    def uuid_hex(self) -> str:
        return self.uuid.hex()


@dataclass
class DirectoryEntry:
    key: DirectoryKey
    binary: bytes
    version: int
    stored_at: float = field(default_factory=time.time)


class DirectoryStore:
    """In-memory map backed by the append-only log. Thread-safe."""

    def __init__(self, log_path: str):
        self._log_path = log_path
        self._lock = threading.RLock()
        self._entries: dict[tuple[str, str], DirectoryEntry] = {}
        self._served: dict[tuple[str, str], int] = {}
        self._replay_and_open()

    # -- persistence ----------------------------------------------------

    def _replay_and_open(self) -> None:
        total = 0
        if os.path.exists(self._log_path):
            total = self._replay()
        if total > _COMPACT_MIN_RECORDS and total > _COMPACT_DEAD_RATIO * len(self._entries):
            self._compact()
        self._log = open(self._log_path, "ab")

    def _replay(self) -> int:
        records = 0
        with open(self._log_path, "rb") as fh:
            good_end = 0
            while True:
                header = fh.readline()
                if not header:
                    break
                try:
                    parts = header.decode("ascii").split()
                    if parts[0] == "PUT" and len(parts) == 4:
                        uuid_hex, class_key, length = parts[1], parts[2], int(parts[3])
                        payload = fh.read(length + 1)
                        if len(payload) != length + 1:
                            raise EOFError("torn record")
                        self._apply_put(uuid_hex, class_key, payload[:length])
                    elif parts[0] == "DEL" and len(parts) == 3:
                        self._entries.pop((parts[1], parts[2]), None)
                    else:
                        raise ValueError(f"bad log header {header!r}")
                except (ValueError, EOFError, UnicodeDecodeError) as exc:
                    logger.warning("registry log tail discarded at %d: %s", good_end, exc)
                    break
                records += 1
                good_end = fh.tell()
        actual = os.path.getsize(self._log_path)
        if actual != good_end:
            with open(self._log_path, "ab") as fh:
                fh.truncate(good_end)
        logger.info(
            "registry log replayed: %d record(s), %d live entr(ies)",
            records, len(self._entries),
        )
        return records

    def _apply_put(self, uuid_hex: str, class_key: str, binary: bytes) -> int:
        key = (uuid_hex, class_key)
        previous = self._entries.get(key)
        version = previous.version + 1 if previous else 1
        self._entries[key] = DirectoryEntry(
            key=DirectoryKey(bytes.fromhex(uuid_hex), class_key),
            binary=binary,
            version=version,
        )
        return version

    def _compact(self) -> None:
        tmp = self._log_path + ".compact"
        with open(tmp, "wb") as fh:
            for (uuid_hex, class_key), entry in sorted(self._entries.items()):
                fh.write(f"PUT {uuid_hex} {class_key} {len(entry.binary)}\n".encode())
                fh.write(entry.binary)
                fh.write(b"\n")
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self._log_path)
        logger.info("registry log compacted to %d entr(ies)", len(self._entries))

    def _append(self, header: str, payload: bytes | None = None) -> None:
        try:
            self._log.write(header.encode("ascii"))
            if payload is not None:
                self._log.write(payload)
                self._log.write(b"\n")
            self._log.flush()
            os.fsync(self._log.fileno())
        except OSError as exc:
            raise StorageFailure(str(exc))

    # -- operations -----------------------------------------------------

    def put(self, key: DirectoryKey, binary: bytes) -> int:
        """Store a binary; returns the new version. Durable on return."""
        try:
            decode_teds(binary)
        except CodecError as exc:
            raise InvalidBinary(f"binary rejected: {exc}")
        with self._lock:
            self._append(f"PUT {key.uuid_hex} {key.class_key} {len(binary)}\n", binary)
            return self._apply_put(key.uuid_hex, key.class_key, binary)

    def get(self, key: DirectoryKey) -> bytes:
        """Fetch the exact stored octets; counts one served query for the key."""
        with self._lock:
            entry = self._entries.get((key.uuid_hex, key.class_key))
            if entry is None:
                raise NotFound(f"{key.uuid_hex}/{key.class_key}")
            counter_key = (key.uuid_hex, key.class_key)
            self._served[counter_key] = self._served.get(counter_key, 0) + 1
            return entry.binary

    def list(self, uuid: bytes) -> list[str]:
        """Class keys stored for a device, sorted; empty if unknown."""
        uuid_hex = uuid_to_hex(uuid)
        with self._lock:
            return sorted(ck for (uh, ck) in self._entries if uh == uuid_hex)

    def delete(self, key: DirectoryKey) -> None:
        with self._lock:
            if (key.uuid_hex, key.class_key) not in self._entries:
                raise NotFound(f"{key.uuid_hex}/{key.class_key}")
            self._append(f"DEL {key.uuid_hex} {key.class_key}\n")
            del self._entries[(key.uuid_hex, key.class_key)]

    def version(self, key: DirectoryKey) -> int:
        with self._lock:
            entry = self._entries.get((key.uuid_hex, key.class_key))
            if entry is None:
                raise NotFound(f"{key.uuid_hex}/{key.class_key}")
            return entry.version

    def served_queries(self, uuid: bytes, class_key: str | None = None) -> int:
        """GET count for one key, or the sum over a device's keys."""
        uuid_hex = uuid_to_hex(uuid)
        with self._lock:
            if class_key is not None:
                return self._served.get((uuid_hex, class_key), 0)
            return sum(n for (uh, _), n in self._served.items() if uh == uuid_hex)

    def close(self) -> None:
        with self._lock:
            try:
                self._log.close()
            except OSError:
                pass
