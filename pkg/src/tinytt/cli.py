"""Command line entry point: `tinytt check FILE [flags]`.

Exit codes: 0 when every declaration and pragma goes through, 1 on the
first diagnostic, 2 on usage or I/O problems. Pragma output goes to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import TextIO

from .diagnostics import Diagnostic, Error, FUEL, render_diagnostic
from .kernel import Context, FlagSet, check, check_declaration, check_is_type, infer
from .pretty import pretty
from .semantics import Fuel, FuelExhausted, Signature, normalize
from .surface import (
    CheckPragma, Definition, Item, NormalizePragma, SourceFile, parse,
    resolve_expr,
)


@dataclass(frozen=True, slots=True)
class RunConfig:
    path: str
    type_in_type: bool = False
    enable_k: bool = False
    fuel: int = 1_000_000
    quiet: bool = False


def _emit(diag: Diagnostic, err: TextIO) -> int:
    print(render_diagnostic(diag), file=err)
    return 1


def _process(item: Item, sig: Signature, flags: FlagSet,
             config: RunConfig, out: TextIO) -> None:
    known = frozenset(sig.entries)
    if isinstance(item, Definition):
        ty = resolve_expr(item.ty, (), known)
        body = resolve_expr(item.body, (), known)
        check_declaration(sig, item.name, ty, body, flags, item.name_span)
        return
    if isinstance(item, NormalizePragma):
        term = resolve_expr(item.expr, (), known)
        ctx = Context(sig, flags, Fuel.budget(flags.fuel))
        infer(ctx, term)
        normal = normalize((), term, ctx.fuel, sig)
        if not config.quiet:
            print("NORMAL: " + pretty(normal, (), known), file=out)
        return
    term = resolve_expr(item.expr, (), known)
    ty = resolve_expr(item.ty, (), known)
    ctx = Context(sig, flags, Fuel.budget(flags.fuel))
    check_is_type(ctx, ty)
    check(ctx, term, ctx.eval(ty))
    if not config.quiet:
        # Echo the expression as written, not its normal form: a checked
        # term need not have one.
        print("CHECKED: " + pretty(term, (), known), file=out)


def run(config: RunConfig, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        with open(config.path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"error: cannot read {config.path}: {exc.strerror}", file=err)
        return 2
    src = SourceFile(config.path, text)
    flags = FlagSet(config.type_in_type, config.enable_k, config.fuel)
    sig = Signature({})
    try:
        items = parse(src)
    except Error as exc:
        return _emit(exc.diagnostic, err)
    for item in items:
        try:
            _process(item, sig, flags, config, out)
        except Error as exc:
            diag = exc.diagnostic
            if diag.span is None:
                diag = Diagnostic(diag.code, diag.message, item.span,
                                  diag.notes)
            return _emit(diag, err)
        except FuelExhausted as exc:
            return _emit(Diagnostic(FUEL, str(exc), item.span), err)
    return 0


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid fuel value: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("fuel must be at least 1")
    return value


def parse_flags(argv: list[str] | None = None) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="tinytt",
        description="Check declarations in a .tt file.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    checker = commands.add_parser("check", help="type check a file")
    checker.add_argument("file", help="path to a .tt source file")
    checker.add_argument("--type-in-type", action="store_true",
                         help="collapse all universes into one")
    checker.add_argument("--enable-K", dest="enable_k", action="store_true",
                         help="allow the K eliminator on identity proofs")
    checker.add_argument("--fuel", type=_positive, default=1_000_000,
                         metavar="N",
                         help="reduction step budget per declaration")
    checker.add_argument("--quiet", action="store_true",
                         help="suppress pragma output on stdout")
    args = parser.parse_args(argv)
    return RunConfig(args.file, args.type_in_type, args.enable_k,
                     args.fuel, args.quiet)


def main(argv: list[str] | None = None) -> int:
    return run(parse_flags(argv))


if __name__ == "__main__":
    sys.exit(main())
