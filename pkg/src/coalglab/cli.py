"""Command-line client.

Thin wrapper over the service handlers: files (or stdin via ``-``) are
parsed into the same request models the HTTP endpoints accept, and the
resulting reports are printed either as human-readable lines or, with
``--json``, in the machine-readable round-trippable form.  The exit code is
0 exactly when the verdict is true; warnings never change it.  Errors
(parse failures, unsupported fields, non-ideals) exit with 2.

Commands compose through pipes::

    coalglab construct kn 5 | coalglab validate -
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .errors import CoalglabError, ParseError
from .serialize import load_json, parse_field_flag
from .service import handlers
from .service.schemas import (
    CoalgebraPayload,
    CoalgebraRequest,
    ConstructRequest,
    PresentationPayload,
    Report,
    SplitRequest,
)

COMMANDS = ("construct", "validate", "filtration", "chain", "dual-ideals",
            "split", "recognize-kn")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coalglab",
        description="Exact-arithmetic toolkit for finite-dimensional coalgebras "
                    "and modules over chain rings.")
    parser.add_argument("--version", action="version", version=f"coalglab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", help="emit a coalgebra file on stdout")
    construct.add_argument("kind", choices=("kn", "quat-cn", "group-likes"))
    construct.add_argument("n", type=int)
    construct.add_argument("--field", default="Q", help="Q (default) or GFp, e.g. GF5")

    for name, needs in (
        ("validate", "coalgebra"),
        ("filtration", "coalgebra"),
        ("chain", "coalgebra"),
        ("dual-ideals", "coalgebra"),
        ("split", "presentation"),
        ("recognize-kn", "coalgebra"),
    ):
        cmd = sub.add_parser(name, help=f"run {name} on a {needs} file")
        cmd.add_argument("path", nargs="?", default="-",
                         help="input file, or - for stdin (default)")
        cmd.add_argument("--seed", type=int, default=0,
                         help="seed for randomized checks (default 0)")
        cmd.add_argument("--json", action="store_true",
                         help="emit the machine-readable report")
        if name == "split":
            cmd.add_argument("--precision", type=int, default=None,
                             help="override the ring precision")
    return parser


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(str(exc), context=path) from exc


def _coalgebra_request(path: str, seed: int) -> CoalgebraRequest:
    data = load_json(_read_input(path), context=path)
    try:
        payload = CoalgebraPayload.model_validate(data)
    except Exception as exc:
        raise ParseError(str(exc), context=path) from exc
    return CoalgebraRequest(coalgebra=payload, seed=seed)


def _print_report(report: Report, as_json: bool) -> None:
    if as_json:
        print(report.model_dump_json(indent=2))
        return
    print(f"coalglab {report.command} (version {report.version})")
    verdict_word = "ok" if report.verdict else "failed"
    print(f"verdict: {verdict_word}")
    for key, value in report.details.items():
        print(f"  {key}: {_render(value)}")
    if report.seed is not None:
        print(f"seed: {report.seed}")
    for warning in report.warnings:
        print(f"warning: {warning}")


def _render(value) -> str:
    if isinstance(value, list) and value and isinstance(value[0], dict):
        return "\n" + "\n".join(f"    {json.dumps(item)}" for item in value)
    return json.dumps(value)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "construct":
            fld = parse_field_flag(args.field)
            request = ConstructRequest(
                kind=args.kind, n=args.n,
                field="Q" if fld.is_rationals else {"GF": fld.p})
            payload = handlers.handle_construct(request)
            print(json.dumps(payload.as_file_dict(), indent=2))
            return 0
        if args.command == "split":
            data = load_json(_read_input(args.path), context=args.path)
            try:
                payload = PresentationPayload.model_validate(data)
            except Exception as exc:
                raise ParseError(str(exc), context=args.path) from exc
            request = SplitRequest(presentation=payload, precision=args.precision,
                                   seed=args.seed)
            report = handlers.handle_split(request)
        else:
            request = _coalgebra_request(args.path, args.seed)
            report = {
                "validate": handlers.handle_validate,
                "filtration": handlers.handle_filtration,
                "chain": handlers.handle_chain,
                "dual-ideals": handlers.handle_dual_ideals,
                "recognize-kn": handlers.handle_recognize_kn,
            }[args.command](request)
        _print_report(report, args.json)
        return 0 if report.verdict else 1
    except CoalglabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
