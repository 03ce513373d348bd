"""Client for the directory wire protocol. Safe for concurrent use."""

from __future__ import annotations

import socket
import threading

from snaas.util import LineStream, uuid_to_hex

from .store import NotFound, RegistryError


class RegistryUnreachable(RegistryError):
    """Could not connect to, or talk to, the directory service."""


class StoreRejected(RegistryError):
    """The directory answered ERR for a write."""


class RegistryClient:
    """One connection, lazily opened, requests serialized by a lock."""

    def __init__(self, host: str, port: int, timeout: float = 10.0):
        self._addr = (host, port)
        self._timeout = timeout
        self._lock = threading.Lock()
        self._stream: LineStream | None = None

    # -- plumbing ---------------------------------------------------------

    def _connect(self) -> LineStream:
        if self._stream is None:
            try:
                sock = socket.create_connection(self._addr, timeout=self._timeout)
            except OSError as exc:
                raise RegistryUnreachable(f"{self._addr[0]}:{self._addr[1]}: {exc}")
            self._stream = LineStream(sock)
        return self._stream

    def _drop(self) -> None:
        if self._stream is not None:
            self._stream.close()
            self._stream = None

    def _exchange(self, request: str, payload: bytes | None = None) -> tuple[str, LineStream]:
        stream = self._connect()
        try:
            if payload is None:
                stream.write_line(request)
            else:
                stream.write_line_with_payload(request, payload)
            reply = stream.read_line()
        except (OSError, ConnectionError, ValueError) as exc:
            self._drop()
            raise RegistryUnreachable(str(exc))
        if reply is None:
            self._drop()
            raise RegistryUnreachable("connection closed by registry")
        return reply, stream

    @staticmethod
    def _raise_err(reply: str) -> None:
        reason = reply[4:] if reply.startswith("ERR ") else reply
        if reason.startswith("NOTFOUND"):
            raise NotFound(reason)
        raise StoreRejected(reason)

    # -- operations --------------------------------------------------------

    def put(self, uuid: bytes, class_key: str, binary: bytes) -> int:
        with self._lock:
            reply, _ = self._exchange(
                f"PUT {uuid_to_hex(uuid)} {class_key} {len(binary)}", binary
            )
            if not reply.startswith("OK "):
                self._raise_err(reply)
            return int(reply.split()[1])

    def get(self, uuid: bytes, class_key: str) -> bytes:
        with self._lock:
            reply, stream = self._exchange(f"GET {uuid_to_hex(uuid)} {class_key}")
            if not reply.startswith("OK "):
                self._raise_err(reply)
            length = int(reply.split()[1])
            try:
                return stream.read_exact(length)
            except (ConnectionError, OSError) as exc:
                self._drop()
                raise RegistryUnreachable(str(exc))

    def list(self, uuid: bytes) -> list[str]:
        with self._lock:
            reply, stream = self._exchange(f"LIST {uuid_to_hex(uuid)}")
            if not reply.startswith("OK "):
                self._raise_err(reply)
            count = int(reply.split()[1])
            keys = []
            for _ in range(count):
                line = stream.read_line()
                if line is None:
                    self._drop()
                    raise RegistryUnreachable("connection closed mid-list")
                keys.append(line)
            return keys

    def delete(self, uuid: bytes, class_key: str) -> None:
        with self._lock:
            reply, _ = self._exchange(f"DEL {uuid_to_hex(uuid)} {class_key}")
            if not reply.startswith("OK"):
                self._raise_err(reply)

    def stats(self, uuid: bytes, class_key: str | None = None) -> int:
        with self._lock:
            suffix = f" {class_key}" if class_key else ""
            reply, _ = self._exchange(f"STATS {uuid_to_hex(uuid)}{suffix}")
            if not reply.startswith("OK "):
                self._raise_err(reply)
            return int(reply.split()[1])

    def close(self) -> None:
        with self._lock:
            self._drop()

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()
