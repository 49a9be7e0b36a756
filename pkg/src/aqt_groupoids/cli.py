"""Command-line front end: ingest JSON documents or catalog names, run checks, write reports."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import BaseModel

from .algebra.duality import double_dual_report, multiplicative_unitary
from .algebra.quantum_group import variants as aqg_variants
from .algebroid import build_algebroid
from .catalog import (
    CATALOG,
    CatalogInstance,
    PipelineRun,
    build_instance,
    group_aqg_pair,
    instance_from_document,
    list_instances,
    resolve_group,
    run_pipeline,
)
from .catalog.registry import Stage
from .config import get_settings
from .errors import (
    AqtError,
    InputError,
    PreconditionError,
    VerificationFailure,
)
from .pontrjagin import build_dual_algebroid
from .reporting import VerificationReport
from .serialization import (
    CatalogListing,
    CatalogListingEntry,
    GroupSpec,
    ReportDocument,
    dump_mmha,
    dump_star_algebra,
    read_document,
    to_json,
    write_json,
)

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

COMMAND_STAGES: dict[str, tuple[Stage, ...]] = {
    "build-groupoid": ("yd", "algebroid"),
    "verify-mmha": ("yd", "algebroid", "variants", "left"),
    "dualize": ("yd", "dual", "heisenberg"),
    "bidual": ("yd", "bidual"),
}
EXPORT_PARTS = ("mmha", "total", "base_b", "base_c", "dual")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "text"),
        default=None,
        help="Output format on stdout (default from AQT_GROUPOIDS_DEFAULT_FORMAT).",
    )
    common.add_argument("--output", type=Path, default=None, help="Where to write the JSON file.")
    common.add_argument("--verbose", action="store_true", help="Log construction events.")
    common.add_argument("--workers", type=int, default=None, help="Check thread-pool width.")
    return common


def _build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="aqt-groupoids",
        description="Build and verify algebroids of Yetter–Drinfeld *-algebras and their duals.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    aqg = commands.add_parser(
        "verify-aqg", parents=[common], help="Check K(G), C[G] and their pairing."
    )
    aqg.add_argument("group", help="Catalog group name or path to a group JSON document.")

    for name, text in (
        ("build-groupoid", "Build the algebroid of an instance and check it."),
        ("verify-mmha", "Run the full algebroid checker, variants and left algebroid."),
        ("dualize", "Build and check the Pontrjagin dual."),
        ("bidual", "Check that the dual of the dual gives the algebroid back."),
    ):
        sub = commands.add_parser(name, parents=[common], help=text)
        sub.add_argument("input", help="Catalog instance name or path to a JSON document.")
        sub.add_argument(
            "--exhaustive",
            action=argparse.BooleanOptionalAction,
            default=None,
            help="Quantify over every basis pair and triple regardless of dimension.",
        )

    catalog = commands.add_parser("catalog", help="List or run catalog instances.")
    catalog_commands = catalog.add_subparsers(dest="catalog_command", required=True)
    catalog_commands.add_parser("list", parents=[common], help="Print instance names.")
    run = catalog_commands.add_parser("run", parents=[common], help="Run the full pipeline.")
    run.add_argument("name", help="Catalog instance name.")
    run.add_argument("--exhaustive", action=argparse.BooleanOptionalAction, default=None)

    export = commands.add_parser("export", parents=[common], help="Write a structure dump.")
    export.add_argument("input", help="Catalog instance name or path to a JSON document.")
    export.add_argument("--part", choices=EXPORT_PARTS, default="mmha")
    return parser


def _configure_logging(verbose: bool) -> None:
    level = logging.INFO if verbose else get_settings().log_level.upper()
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _load_instance(reference: str, workers: int | None) -> CatalogInstance:
    if reference in CATALOG:
        return build_instance(reference, workers=workers)
    path = Path(reference)
    if path.suffix == ".json" or path.exists():
        return instance_from_document(read_document(path), workers=workers)
    raise InputError(f"neither a catalog instance nor a file: {reference!r}", location="input")


def _format(args: argparse.Namespace) -> str:
    return args.format or get_settings().default_format


def _default_path(command: str, instance: str) -> Path:
    safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in instance)
    return get_settings().report_dir / f"{command}-{safe}.json"


def _emit(args: argparse.Namespace, document: ReportDocument) -> int:
    path = args.output or _default_path(document.command, document.instance)
    write_json(path, document)
    if _format(args) == "json":
        sys.stdout.write(to_json(document))
    else:
        for report in document.reports:
            sys.stdout.write(report.render_text() + "\n")
        verdict = "PASS" if document.passed else "FAIL"
        sys.stdout.write(f"{document.command} {document.instance}: {verdict} (report: {path})\n")
    return EXIT_PASS if document.passed else EXIT_FAILED


def _document(command: str, instance: str, reports: list[VerificationReport]) -> ReportDocument:
    return ReportDocument(
        command=command,
        instance=instance,
        passed=all(report.passed for report in reports),
        reports=reports,
    )


def _verify_aqg(args: argparse.Namespace) -> ReportDocument:
    path = Path(args.group)
    if path.suffix == ".json":
        document = read_document(path)
        if not isinstance(document, GroupSpec):
            raise InputError(
                f"expected a group document, got kind {document.kind!r}", location=str(path)
            )
        group = resolve_group(document)
    else:
        group = resolve_group(args.group)
    pair = group_aqg_pair(group, workers=args.workers)
    reports = [
        pair.report,
        double_dual_report(pair.functions, workers=args.workers),
        double_dual_report(pair.group_algebra, workers=args.workers),
        multiplicative_unitary(pair.pairing, workers=args.workers).report,
        aqg_variants(pair.functions, workers=args.workers).report,
        aqg_variants(pair.group_algebra, workers=args.workers).report,
    ]
    return _document("verify-aqg", group.name, reports)


def _pipeline(args: argparse.Namespace, command: str) -> ReportDocument:
    instance = _load_instance(args.input, args.workers)
    run = PipelineRun(instance, args.exhaustive, args.workers).run(COMMAND_STAGES[command])
    return _document(command, instance.name, run.reports)


def _catalog(args: argparse.Namespace) -> int:
    if args.catalog_command == "list":
        names = list_instances()
        if _format(args) == "json":
            listing = CatalogListing(
                instances=[
                    CatalogListingEntry(name=n, description=CATALOG[n].description) for n in names
                ]
            )
            sys.stdout.write(to_json(listing))
        else:
            width = max(len(n) for n in names)
            for name in names:
                sys.stdout.write(f"{name.ljust(width)}  {CATALOG[name].description}\n")
        return EXIT_PASS
    run = run_pipeline(args.name, exhaustive=args.exhaustive, workers=args.workers)
    return _emit(args, _document("catalog-run", args.name, run.reports))


def _export(args: argparse.Namespace) -> int:
    instance = _load_instance(args.input, args.workers)
    algebroid = build_algebroid(instance.measured, workers=args.workers)
    dump: BaseModel
    if args.part == "mmha":
        dump = dump_mmha(algebroid)
    elif args.part == "dual":
        dump = dump_mmha(build_dual_algebroid(algebroid, workers=args.workers).algebroid.dual)
    else:
        dump = dump_star_algebra(getattr(algebroid, args.part))
    path = args.output or _default_path(f"export-{args.part}", instance.name)
    write_json(path, dump)
    if _format(args) == "json":
        sys.stdout.write(to_json(dump))
    else:
        sys.stdout.write(f"export {instance.name} {args.part}: written to {path}\n")
    return EXIT_PASS


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "verify-aqg":
        return _emit(args, _verify_aqg(args))
    if args.command in COMMAND_STAGES:
        return _emit(args, _pipeline(args, args.command))
    if args.command == "catalog":
        return _catalog(args)
    return _export(args)


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return _dispatch(args)
    except InputError as exc:
        logger.warning("cli event=input_error command=%s error=%s", args.command, exc)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except PreconditionError as exc:
        logger.warning(
            "cli event=precondition_failed command=%s error_type=%s error=%s",
            args.command,
            type(exc).__name__,
            exc,
        )
        sys.stderr.write(f"failed: {exc}\n")
        return EXIT_FAILED
    except VerificationFailure as exc:
        reference = getattr(args, "input", None) or getattr(args, "name", None) or "instance"
        document = _document(args.command, str(reference), [exc.report])
        return _emit(args, document)
    except AqtError as exc:
        logger.warning("cli event=failed command=%s error=%s", args.command, exc)
        sys.stderr.write(f"failed: {exc}\n")
        return EXIT_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
