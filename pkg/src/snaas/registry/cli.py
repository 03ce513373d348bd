"""teds-registry: run the virtual-TEDS directory service."""

from __future__ import annotations

import argparse
import logging
import sys

from snaas.util import parse_endpoint

from .server import RegistryServer
from .store import DirectoryStore


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="teds-registry", description="Virtual-TEDS directory service."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    serve = sub.add_parser("serve", help="run the directory server")
    serve.add_argument("--listen", default="127.0.0.1:1451", metavar="HOST:PORT")
    serve.add_argument("--data", default="./registry.log", metavar="PATH",
                       help="append-only log file (created if absent)")
    serve.add_argument("--inject-delay-us", type=int, default=0, metavar="N",
                       help="artificial delay before answering GET/LIST")
    serve.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    host, port = parse_endpoint(args.listen)
    store = DirectoryStore(args.data)
    server = RegistryServer(store, host, port, inject_delay_us=args.inject_delay_us)
    print(f"teds-registry serving on {server.address[0]}:{server.address[1]}", flush=True)
    try:
        server.serve_forever()
    finally:
        store.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
