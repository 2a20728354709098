"""
Command line front end.

    wreathcell verify --builtin dual_numbers --char 0
    wreathcell verify --file algebra.json [--n 2]
    wreathcell wreath --builtin sym_group --param n=2 --n 2 --char 3 --out report.txt

Exit status: 0 when every check passes, 1 on a mathematical failure (a violated
axiom or two oracles disagreeing), 2 on bad input or an exceeded size cap.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .builtins import BUILTIN_NAMES, builtin_datum
from .cellular import CellularDatum, NotCellular, verify_cellularity
from .datumfile import DatumFormatError, load_datum
from .exactalg import Field
from .inflation import verify_inflation
from .wreath import CapExceeded, Caps, build_wreath, wreath_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    builtin: str | None = None
    params: tuple[tuple[str, str], ...] = ()
    file: str | None = None
    n: int | None = None
    char: int | None = None
    out: str | None = None
    seed: int = 0
    max_dim: int | None = None

    def field(self) -> Field:
        try:
            return Field(self.char or 0)
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    def caps(self) -> Caps:
        return Caps() if self.max_dim is None else Caps(max_dim=self.max_dim)


def _param(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected k=v, got {text!r}")
    return key, value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wreathcell", description="Exact cellular structure of A wr S_n.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [("verify", "check the cellular axioms of an algebra (and of A wr S_n with --n)"),
                            ("wreath", "build A wr S_n and write the full report")]:
        p = sub.add_parser(name, help=help_text)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--builtin", choices=BUILTIN_NAMES)
        src.add_argument("--file", help="cellular datum file (JSON)")
        p.add_argument("--param", action="append", type=_param, default=[], metavar="K=V",
                       help="parameter of the built-in algebra, e.g. n=2 for sym_group")
        p.add_argument("--n", type=int, required=(name == "wreath"))
        p.add_argument("--char", type=int, help="characteristic of the field (0 or a prime; default 0)")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
        p.add_argument("--max-dim", type=int, dest="max_dim", help="cap on dim A wr S_n")
    return parser


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(command=ns.command, builtin=ns.builtin, params=tuple(ns.param), file=ns.file, n=ns.n,
                     char=ns.char, out=ns.out, seed=ns.seed, max_dim=ns.max_dim)


def load_base(config: RunConfig) -> CellularDatum:
    if config.n is not None and config.n < 0:
        raise UsageError("--n must be non-negative")
    if config.file:
        if config.params:
            raise UsageError("--param only applies to built-in algebras")
        d = load_datum(config.file)
        if config.char is not None and config.char != d.field.characteristic:
            raise UsageError(f"--char {config.char} contradicts the file's field {d.field}")
        return d
    try:
        return builtin_datum(config.builtin, config.field(), **dict(config.params))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_verify(config: RunConfig) -> tuple[int, str]:
    base = load_base(config)
    reports = [verify_cellularity(base, seed=config.seed)]
    if config.n is not None and reports[0].ok:
        W = build_wreath(base, config.n, caps=config.caps(), check_base=False)
        reports.append(verify_cellularity(W.cellular, seed=config.seed))
        reports.append(verify_inflation(W.inflation, seed=config.seed))
    text = "\n\n".join(str(r) for r in reports) + "\n"
    return (EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL), text


def cmd_wreath(config: RunConfig) -> tuple[int, str]:
    base = load_base(config)
    W = build_wreath(base, config.n, caps=config.caps())
    report = wreath_report(W, seed=config.seed)
    return (EXIT_OK if report.ok else EXIT_FAIL), report.text()


COMMANDS = {"verify": cmd_verify, "wreath": cmd_wreath}


def run(config: RunConfig) -> tuple[int, str]:
    """Run a command; returns (exit status, report text or error message)."""
    try:
        return COMMANDS[config.command](config)
    except (UsageError, DatumFormatError, CapExceeded) as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    except NotCellular as exc:
        return EXIT_FAIL, f"not cellular: {exc}\n"


def main(argv: list[str] | None = None) -> int:
    try:
        config = config_from_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    status, text = run(config)
    if config.out and status != EXIT_USAGE:
        Path(config.out).write_text(text)
    else:
        (sys.stderr if status == EXIT_USAGE else sys.stdout).write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
