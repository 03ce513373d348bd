"""Small shared helpers: hex identifiers, endpoint parsing, line-based sockets."""

from __future__ import annotations

import socket
import time

UUID_LEN = 16


def uuid_to_hex(uuid: bytes) -> str:
    """Render a 16-octet identifier as 32 lowercase hex digits."""
    if len(uuid) != UUID_LEN:
        raise ValueError(f"uuid must be {UUID_LEN} octets, got {len(uuid)}")
    return uuid.hex()


def uuid_from_hex(text: str) -> bytes:
    """Parse a 32-hex-digit identifier; raises ValueError on anything else."""
    if len(text) != 2 * UUID_LEN:
        raise ValueError(f"uuid hex must be {2 * UUID_LEN} digits, got {len(text)!r}")
    return bytes.fromhex(text)


def parse_endpoint(text: str) -> tuple[str, int]:
    """Split "host:port" into (host, port)."""
    host, sep, port = text.rpartition(":")
    if not sep or not host:
        raise ValueError(f"expected host:port, got {text!r}")
    return host, int(port)


def monotonic_us() -> int:
    """Monotone clock in microseconds (stage timing)."""
    return time.monotonic_ns() // 1000


def wall_us() -> int:
    """Wall clock in microseconds since the epoch (event timestamps)."""
    return time.time_ns() // 1000


class LineStream:
    """Blocking line/raw reader-writer over a connected stream socket.

    Lines are LF-terminated ASCII/UTF-8; raw reads pull an exact octet count.
    One LineStream must only be read from one thread; writes are internally
    locked so control and data threads may share the send side.
    """

    def __init__(self, sock: socket.socket):
        self._sock = sock
        self._buf = bytearray()
        import threading

        self._wlock = threading.Lock()

    @property
    def socket(self) -> socket.socket:
        return self._sock

    def read_line(self, max_len: int = 4096) -> str | None:
        """Read one line (without the LF). Returns None on EOF."""
        while True:
            nl = self._buf.find(b"\n")
            if nl >= 0:
                line = self._buf[:nl]
                del self._buf[: nl + 1]
                return line.decode("utf-8", errors="replace").rstrip("\r")
            if len(self._buf) > max_len:
                raise ValueError("line too long")
            chunk = self._sock.recv(4096)
            if not chunk:
                return None
            self._buf.extend(chunk)

    def read_exact(self, count: int) -> bytes:
        """Read exactly `count` octets; raises ConnectionError on early EOF."""
        while len(self._buf) < count:
            chunk = self._sock.recv(65536)
            if not chunk:
                raise ConnectionError("stream closed mid-payload")
            self._buf.extend(chunk)
        data = bytes(self._buf[:count])
        del self._buf[:count]
        return data

    def write_line(self, line: str) -> None:
        with self._wlock:
            self._sock.sendall(line.encode("utf-8") + b"\n")

    def write_raw(self, data: bytes) -> None:
        with self._wlock:
            self._sock.sendall(data)

    def write_line_with_payload(self, line: str, payload: bytes) -> None:
        """Send a header line plus raw payload as one atomic write."""
        with self._wlock:
            self._sock.sendall(line.encode("utf-8") + b"\n" + payload)

    def close(self) -> None:
        try:
            self._sock.close()
        except OSError:
            pass
