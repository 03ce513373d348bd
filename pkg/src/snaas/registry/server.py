"""Line-oriented wire protocol server for the TEDS directory.

One request per exchange over a TCP connection (connections persist across
requests):

    PUT <uuid-hex-32> <class_key> <len>\n + raw   ->  OK <version> | ERR <reason>
    GET <uuid-hex-32> <class_key>\n               ->  OK <len> + raw | ERR NOTFOUND
    LIST <uuid-hex-32>\n                          ->  OK <count> + class_key lines
    DEL <uuid-hex-32> <class_key>\n               ->  OK | ERR NOTFOUND
    STATS <uuid-hex-32> [<class_key>]\n           ->  OK <served-query-count>

`--inject-delay-us` sleeps before answering GET/LIST, emulating a distant
directory for cold-path benchmarking.
"""

from __future__ import annotations

import logging
import socket
import threading
import time

from snaas.util import LineStream, uuid_from_hex

from .store import DirectoryKey, DirectoryStore, InvalidBinary, NotFound, StorageFailure

logger = logging.getLogger(__name__)

MAX_BINARY_LEN = 1 << 20


class RegistryServer:
    """Threaded TCP front end over a DirectoryStore."""

    def __init__(
        self,
        store: DirectoryStore,
        host: str = "127.0.0.1",
        port: int = 0,
        inject_delay_us: int = 0,
    ):
        self.store = store
        self.inject_delay_us = inject_delay_us
        self._sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        self._sock.bind((host, port))
        self._sock.listen(32)
        self._sock.settimeout(0.2)  # lets the accept loop notice stop()
        self._running = False
        self._accept_thread: threading.Thread | None = None

    @property
    def address(self) -> tuple[str, int]:
        return self._sock.getsockname()

    def start(self) -> None:
        self._running = True
        self._accept_thread = threading.Thread(
            target=self._accept_loop, name="registry-accept", daemon=True
        )
        self._accept_thread.start()
        logger.info("registry listening on %s:%d", *self.address)

    def stop(self) -> None:
        self._running = False
        try:
            self._sock.close()
        except OSError:
            pass
        if self._accept_thread is not None:
            self._accept_thread.join(timeout=2.0)

    def serve_forever(self) -> None:
        self.start()
        try:
            while self._running:
                time.sleep(0.2)
        except KeyboardInterrupt:
            pass
        finally:
            self.stop()

    # -- connection handling ---------------------------------------------

    def _accept_loop(self) -> None:
        while self._running:
            try:
                conn, peer = self._sock.accept()
            except TimeoutError:
                continue
            except OSError:
                break
            conn.settimeout(None)
            threading.Thread(
                target=self._serve_connection,
                args=(conn, peer),
                name=f"registry-conn-{peer[1]}",
                daemon=True,
            ).start()

    def _serve_connection(self, conn: socket.socket, peer) -> None:
        stream = LineStream(conn)
        try:
            while True:
                line = stream.read_line()
                if line is None:
                    return
                if not line.strip():
                    continue
                try:
                    self._handle(stream, line)
                except (NotFound,):
                    stream.write_line("ERR NOTFOUND")
                except InvalidBinary as exc:
                    stream.write_line(f"ERR INVALID {exc}")
                except StorageFailure as exc:
                    stream.write_line(f"ERR STORAGE {exc}")
                except (ValueError, IndexError) as exc:
                    stream.write_line(f"ERR BADREQUEST {exc}")
        except (ConnectionError, OSError):
            pass
        finally:
            stream.close()

    def _delay(self) -> None:
        if self.inject_delay_us > 0:
            time.sleep(self.inject_delay_us / 1e6)

    def _handle(self, stream: LineStream, line: str) -> None:
        parts = line.split()
        cmd = parts[0].upper()
        if cmd == "PUT":
            if len(parts) != 4:
                raise ValueError("PUT needs <uuid> <class_key> <len>")
            uuid = uuid_from_hex(parts[1])
            length = int(parts[3])
            if not 0 <= length <= MAX_BINARY_LEN:
                raise ValueError(f"bad length {length}")
            binary = stream.read_exact(length)
            version = self.store.put(DirectoryKey(uuid, parts[2]), binary)
            stream.write_line(f"OK {version}")
        elif cmd == "GET":
            if len(parts) != 3:
                raise ValueError("GET needs <uuid> <class_key>")
            key = DirectoryKey(uuid_from_hex(parts[1]), parts[2])
            self._delay()
            binary = self.store.get(key)
            stream.write_line_with_payload(f"OK {len(binary)}", binary)
        elif cmd == "LIST":
            if len(parts) != 2:
                raise ValueError("LIST needs <uuid>")
            self._delay()
            keys = self.store.list(uuid_from_hex(parts[1]))
            stream.write_line(f"OK {len(keys)}")
            for class_key in keys:
                stream.write_line(class_key)
        elif cmd == "DEL":
            if len(parts) != 3:
                raise ValueError("DEL needs <uuid> <class_key>")
            self.store.delete(DirectoryKey(uuid_from_hex(parts[1]), parts[2]))
            stream.write_line("OK")
        elif cmd == "STATS":
            if len(parts) not in (2, 3):
                raise ValueError("STATS needs <uuid> [<class_key>]")
            class_key = parts[2] if len(parts) == 3 else None
            count = self.store.served_queries(uuid_from_hex(parts[1]), class_key)
            stream.write_line(f"OK {count}")
        else:
            raise ValueError(f"unknown command {cmd}")
