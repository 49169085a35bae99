"""
Command-line front end.

    uml2xml convert   <in.uml> -o <out.xml> [--xsd <out.xsd>] [--lenient] [--report <out.json>]
    uml2xml validate  <in.uml> [--lenient] [--report <out.json>]
    uml2xml check-xml <in.xml> [--report <out.json>]
    uml2xml emit-xsd  -o <out.xsd>

Diagnostics go to stderr, one per line. `-o -` writes to stdout.
"""

import argparse
import json
import os
import sys
import tempfile
from enum import IntEnum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from loguru import logger
from termcolor import colored

from . import __version__
from .diagnostics import Code, Diagnostic, Location, has_errors
from .errors import CodificationError, XmlSyntaxError
from .pipeline import ConversionPipeline, Stage
from .schema import embedded_schema_text
from .utils.config import ConverterConfig, resolve_config

PROG = "uml2xml"
STDOUT = "-"


class ExitStatus(IntEnum):
    OK = 0
    DIAGRAM_ERRORS = 1
    PARSE_ERROR = 2
    IO_ERROR = 3
    SELF_VALIDATION_FAILED = 4
    USAGE = 5


class UsageError(Exception):
    """Bad command line."""


class _ArgumentParser(argparse.ArgumentParser):
    """Report usage problems as UsageError instead of exiting with status 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _package_version() -> str:
    import importlib.metadata as im

    try:
        return im.version(PROG)
    except im.PackageNotFoundError:
        return __version__


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog=PROG, description="Convert UML class codifications to validated XML")
    parser.add_argument("-V", "--version", action="version", version=f"{PROG} {_package_version()}")
    parser.add_argument("--config", help="YAML configuration file with a 'converter' section")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log pipeline progress at debug level")

    commands = parser.add_subparsers(dest="command", metavar="command", parser_class=_ArgumentParser)
    commands.required = True

    convert = commands.add_parser("convert", help="Run the full pipeline and write XML")
    convert.add_argument("input", help="Codification file (.uml)")
    convert.add_argument("-o", "--output", required=True, help="XML output path, '-' for stdout")
    convert.add_argument("--xsd", help="Also write the embedded schema to this path")
    convert.add_argument("--lenient", action="store_true", help="Tolerate the known trailing-token erratum")
    convert.add_argument("--report", help="Write diagnostics as a JSON list of records")

    validate = commands.add_parser("validate", help="Parse and validate a codification")
    validate.add_argument("input", help="Codification file (.uml)")
    validate.add_argument("--lenient", action="store_true", help="Tolerate the known trailing-token erratum")
    validate.add_argument("--report", help="Write diagnostics as a JSON list of records")

    check = commands.add_parser("check-xml", help="Validate an XML document against the embedded schema")
    check.add_argument("input", help="XML file")
    check.add_argument("--report", help="Write diagnostics as a JSON list of records")

    emit = commands.add_parser("emit-xsd", help="Write the embedded schema")
    emit.add_argument("-o", "--output", required=True, help="Schema output path, '-' for stdout")

    return parser


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Raises:
        UsageError: the command line is malformed.
        SystemExit: after --help or --version.
    """
    return build_parser().parse_args(argv)


# -- output helpers ---------------------------------------------------------


def configure_logging(level: str) -> None:
    logger.remove()
    # resolve sys.stderr per message so redirected streams are honoured
    logger.add(lambda message: sys.stderr.write(message), level=level, format="{level: <8} | {message}")


def print_diagnostics(diagnostics: List[Diagnostic]) -> None:
    for diagnostic in diagnostics:
        color = "red" if diagnostic.is_error else "yellow"
        print(colored(diagnostic.render(), color), file=sys.stderr)


def _stage(path: str, text: str) -> Tuple[str, Path]:
    """Write `text` to a temporary sibling of `path` and return (temp name, target)."""
    target = Path(path)
    fd, temp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except BaseException:
        os.unlink(temp_name)
        raise
    return temp_name, target


def _discard(staged: List[Tuple[str, Path]]) -> None:
    for temp_name, _ in staged:
        if os.path.exists(temp_name):
            os.unlink(temp_name)


def write_outputs(outputs: List[Tuple[str, str]]) -> Optional[Tuple[str, OSError]]:
    """
    Write several outputs together. Every file is staged beside its target
    before any is moved into place, so a failed write leaves all targets
    untouched.

    Returns (path, error) for the output that failed, None on success.
    """
    staged: List[Tuple[str, Path]] = []
    try:
        for path, text in outputs:
            if path == STDOUT:
                continue
            try:
                staged.append(_stage(path, text))
            except OSError as e:
                return path, e
        for path, text in outputs:
            if path == STDOUT:
                sys.stdout.write(text)
                sys.stdout.flush()
        while staged:
            temp_name, target = staged[0]
            try:
                os.replace(temp_name, target)
            except OSError as e:
                return str(target), e
            staged.pop(0)
        return None
    finally:
        _discard(staged)


def write_atomically(path: str, text: str) -> None:
    """Write one output via a temporary sibling file; `-` writes to stdout."""
    failure = write_outputs([(path, text)])
    if failure is not None:
        raise failure[1]


def write_report(path: Optional[str], diagnostics: List[Diagnostic]) -> None:
    if path is None:
        return
    records = [d.to_record() for d in diagnostics]
    write_atomically(path, json.dumps(records, indent=2, ensure_ascii=False) + "\n")


def _read_text(path: str) -> str:
    # newline="" keeps CRLF visible to the reader, which trims it per line
    with open(path, "r", encoding="utf-8", newline="") as f:
        return f.read()


def _io_failure(path: str, error: Exception) -> ExitStatus:
    diagnostic = Diagnostic.error(Code.IO_ERROR, f"{error.__class__.__name__}: {error}", Location(path=path))
    print_diagnostics([diagnostic])
    return ExitStatus.IO_ERROR


# -- commands ---------------------------------------------------------------


def _command_convert(args: argparse.Namespace, pipeline: ConversionPipeline) -> ExitStatus:
    try:
        text = _read_text(args.input)
    except (OSError, UnicodeDecodeError) as e:
        return _io_failure(args.input, e)

    result = pipeline.convert(text)
    print_diagnostics(result.diagnostics)
    try:
        write_report(args.report, result.diagnostics)
    except OSError as e:
        return _io_failure(args.report, e)

    if result.failed_stage is Stage.READ:
        return ExitStatus.PARSE_ERROR
    if result.failed_stage is Stage.VALIDATE_DIAGRAM:
        return ExitStatus.DIAGRAM_ERRORS
    if result.failed_stage is not None:
        logger.error(f"Own output failed the {result.failed_stage.value} stage; nothing written")
        return ExitStatus.SELF_VALIDATION_FAILED

    outputs = [(args.output, result.xml)]
    if args.xsd:
        outputs.append((args.xsd, embedded_schema_text()))
    failure = write_outputs(outputs)
    if failure is not None:
        return _io_failure(*failure)
    logger.info(f"Wrote {args.output}")
    return ExitStatus.OK


def _command_validate(args: argparse.Namespace, pipeline: ConversionPipeline) -> ExitStatus:
    try:
        text = _read_text(args.input)
    except (OSError, UnicodeDecodeError) as e:
        return _io_failure(args.input, e)

    diagnostics: List[Diagnostic] = []
    status = ExitStatus.OK
    try:
        parsed = pipeline.read_uml(text)
    except CodificationError as e:
        diagnostics = e.diagnostics
        status = ExitStatus.PARSE_ERROR
    else:
        diagnostics = list(parsed.diagnostics)
        if not parsed.ok:
            status = ExitStatus.PARSE_ERROR
        else:
            diagram_diagnostics = pipeline.validate_class_diagram(parsed.diagram)
            diagnostics += diagram_diagnostics
            if has_errors(diagram_diagnostics):
                status = ExitStatus.DIAGRAM_ERRORS

    print_diagnostics(diagnostics)
    try:
        write_report(args.report, diagnostics)
    except OSError as e:
        return _io_failure(args.report, e)
    return status


def _command_check_xml(args: argparse.Namespace, pipeline: ConversionPipeline) -> ExitStatus:
    try:
        text = _read_text(args.input)
    except (OSError, UnicodeDecodeError) as e:
        return _io_failure(args.input, e)

    try:
        diagnostics = pipeline.check_xml(text)
        status = ExitStatus.DIAGRAM_ERRORS if has_errors(diagnostics) else ExitStatus.OK
    except XmlSyntaxError as e:
        diagnostics = [e.to_diagnostic()]
        status = ExitStatus.PARSE_ERROR

    print_diagnostics(diagnostics)
    try:
        write_report(args.report, diagnostics)
    except OSError as e:
        return _io_failure(args.report, e)
    return status


def _command_emit_xsd(args: argparse.Namespace, pipeline: ConversionPipeline) -> ExitStatus:
    try:
        write_atomically(args.output, embedded_schema_text())
    except OSError as e:
        return _io_failure(args.output, e)
    return ExitStatus.OK


_COMMANDS = {
    "convert": _command_convert,
    "validate": _command_validate,
    "check-xml": _command_check_xml,
    "emit-xsd": _command_emit_xsd,
}


def _load_config(args: argparse.Namespace) -> ConverterConfig:
    config = resolve_config(args.config)
    overrides = {}
    if getattr(args, "lenient", False):
        overrides["strict"] = False
    if args.verbose:
        overrides["log_level"] = "DEBUG"
    return config.model_copy(update=overrides)


def run(argv: Optional[Sequence[str]] = None) -> ExitStatus:
    """Execute one command line and return its exit status."""
    try:
        args = parse_arguments(argv)
    except UsageError as e:
        print(f"{PROG}: error: {e}", file=sys.stderr)
        return ExitStatus.USAGE
    except SystemExit as e:
        # --help and --version
        return ExitStatus(e.code or 0)

    try:
        config = _load_config(args)
    except OSError as e:
        return _io_failure(args.config, e)
    except ValueError as e:
        print(f"{PROG}: error: invalid configuration: {e}", file=sys.stderr)
        return ExitStatus.USAGE

    configure_logging(config.log_level)
    logger.debug(f"Running {args.command} with {config}")
    return _COMMANDS[args.command](args, ConversionPipeline(config))


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return int(run(argv))
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        return 130


if __name__ == "__main__":
    sys.exit(main())
