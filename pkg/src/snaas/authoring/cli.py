"""teds: template inspection, TEDS generation, and device registration."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from snaas.codec import CodecError
from snaas.registry import RegistryError
from snaas.util import parse_endpoint

from .description import ConstraintViolation, SchemaError, parse_description
from .pipeline import generate_teds, register_device
from .service import AuthoringService
from .templates import create_template, template_to_xml


def _cmd_template(args) -> int:
    print(template_to_xml(create_template(args.teds_class)), end="")
    return 0


def _cmd_generate(args) -> int:
    desc = parse_description(Path(args.infile).read_text(encoding="utf-8"))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for class_key, binary in generate_teds(desc).items():
        path = out_dir / f"{desc.uuid.hex()}-{class_key.replace(':', '-')}.teds"
        path.write_bytes(binary)
        print(f"{class_key}  {len(binary):4d} octets  {path}")
    return 0


def _cmd_register(args) -> int:
    desc = parse_description(Path(args.infile).read_text(encoding="utf-8"))
    receipt = register_device(desc, args.registry)
    print(f"registered {desc.uuid.hex()}")
    for class_key, version in receipt.stored.items():
        print(f"  {class_key}  version {version}")
    return 0


def _cmd_serve(args) -> int:
    host, port = parse_endpoint(args.listen)
    service = AuthoringService(parse_endpoint(args.registry), host, port)
    print(f"teds service on http://{service.address[0]}:{service.address[1]}", flush=True)
    service.serve_forever()
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="teds", description="TEDS authoring service.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("template", help="print a class's e-form template")
    p.add_argument("--class", dest="teds_class", required=True,
                   metavar="CLASS", help="meta | channel | name | phy (or hex code)")
    p.set_defaults(func=_cmd_template)

    p = sub.add_parser("generate", help="encode TEDS binaries from a description")
    p.add_argument("--in", dest="infile", required=True, metavar="TIM_XML")
    p.add_argument("--out-dir", default="./teds", metavar="DIR")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("register", help="store a device's TEDS set in the directory")
    p.add_argument("--in", dest="infile", required=True, metavar="TIM_XML")
    p.add_argument("--registry", required=True, metavar="HOST:PORT")
    p.set_defaults(func=_cmd_register)

    p = sub.add_parser("serve", help="run the HTTP authoring service")
    p.add_argument("--listen", default="127.0.0.1:8450", metavar="HOST:PORT")
    p.add_argument("--registry", required=True, metavar="HOST:PORT")
    p.set_defaults(func=_cmd_serve)

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (SchemaError, ConstraintViolation, CodecError, RegistryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
