"""HTTP front end for the TEDS service.

    GET  /templates/{class}   e-form template as XML (meta|channel|name|phy)
    POST /devices             body: description XML -> registration receipt XML
    GET  /devices/{uuid}      description XML rebuilt from the directory

The directory's binaries are the system of record; GET /devices decodes
them back into a document rather than consulting any local copy.
"""

from __future__ import annotations

import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from xml.etree import ElementTree as ET

from snaas.codec import CodecError, UnknownClass
from snaas.registry import NotFound, RegistryClient, RegistryError, RegistryUnreachable
from snaas.util import uuid_from_hex

from .description import ConstraintViolation, SchemaError, parse_description, render_description
from .pipeline import RegistrationReceipt, fetch_description, register_device
from .templates import create_template, template_to_xml

logger = logging.getLogger(__name__)

MAX_BODY = 1 << 20


def receipt_to_xml(receipt: RegistrationReceipt) -> str:
    root = ET.Element("receipt", {"uuid": receipt.uuid.hex()})
    for class_key, version in receipt.stored.items():
        ET.SubElement(root, "stored", {"key": class_key, "version": str(version)})
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "teds-service/0.1"

    # set by AuthoringService
    registry_addr: tuple[str, int]

    def log_message(self, fmt, *args):  # keep the test output quiet
        logger.debug("%s %s", self.address_string(), fmt % args)

    def _send(self, status: int, body: str, content_type: str = "application/xml") -> None:
        payload = body.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", f"{content_type}; charset=utf-8")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def _fail(self, status: int, message: str) -> None:
        self._send(status, message + "\n", content_type="text/plain")

    def do_GET(self):  # noqa: N802 - http.server API
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        if len(parts) == 2 and parts[0] == "templates":
            try:
                template = create_template(parts[1])
            except UnknownClass as exc:
                self._fail(404, str(exc))
                return
            self._send(200, template_to_xml(template))
        elif len(parts) == 2 and parts[0] == "devices":
            try:
                uuid = uuid_from_hex(parts[1])
            except ValueError as exc:
                self._fail(400, str(exc))
                return
            client = RegistryClient(*self.registry_addr)
            try:
                desc = fetch_description(client, uuid)
            except (LookupError, NotFound) as exc:
                self._fail(404, str(exc))
                return
            except RegistryUnreachable as exc:
                self._fail(502, str(exc))
                return
            finally:
                client.close()
            self._send(200, render_description(desc))
        else:
            self._fail(404, f"no such resource: {self.path}")

    def do_POST(self):  # noqa: N802 - http.server API
        if self.path.rstrip("/") != "/devices":
            self._fail(404, f"no such resource: {self.path}")
            return
        length = int(self.headers.get("Content-Length", "0"))
        if not 0 < length <= MAX_BODY:
            self._fail(400, "missing or oversized body")
            return
        body = self.rfile.read(length)
        try:
            desc = parse_description(body)
            receipt = register_device(desc, self.registry_addr)
        except (SchemaError, ConstraintViolation, CodecError) as exc:
            self._fail(400, str(exc))
            return
        except RegistryUnreachable as exc:
            self._fail(502, str(exc))
            return
        except RegistryError as exc:
            self._fail(500, str(exc))
            return
        self._send(200, receipt_to_xml(receipt))


class AuthoringService:
    """Threaded HTTP server wrapper; request handling is stateless."""

    def __init__(self, registry_addr: tuple[str, int], host: str = "127.0.0.1", port: int = 0):
        handler = type("BoundHandler", (_Handler,), {"registry_addr": registry_addr})
        self._httpd = ThreadingHTTPServer((host, port), handler)
        self._thread: threading.Thread | None = None

    @property
    def address(self) -> tuple[str, int]:
        return self._httpd.server_address[:2]

    def start(self) -> None:
        self._thread = threading.Thread(
            target=self._httpd.serve_forever, kwargs={"poll_interval": 0.1},
            name="teds-service", daemon=True,
        )
        self._thread.start()
        logger.info("TEDS service on http://%s:%d", *self.address)

    def stop(self) -> None:
        self._httpd.shutdown()
        self._httpd.server_close()
        if self._thread is not None:
            self._thread.join(timeout=2.0)

    def serve_forever(self) -> None:
        self.start()
        try:
            while True:
                self._thread.join(0.5)
        except KeyboardInterrupt:
            pass
        finally:
            self.stop()
