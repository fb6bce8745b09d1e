"""Command-line front end.

Exit codes: 0 success or clean report, 1 validation findings, 2 usage
error, 3 data error (unparsable input, unknown class, bad file).
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from . import hierarchy
from .collation import sort_schedule
from .errors import FacetError, RewriteConflict
from .exchange import export_canonical, export_concept_scheme, import_canonical, read_scheme
from .notation import decompose, render_chain
from .scheme import load_scheme, validate_scheme
from .store import JOURNAL, SNAPSHOT, AuthorityStore
from .synthesis import FacetSelection, combine, synthesize

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_DATA = 3

MUTATING = {"record", "replace"}


class UsageError(Exception):
    pass


def _common(parser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--scheme", metavar="PATH", default=default,
                        help="scheme file (.fcs); defaults to $FACET_SCHEME")
    parser.add_argument("--store", metavar="PATH", default=default,
                        help="authority store directory")
    parser.add_argument("--format", choices=("fcs", "xml"), default=default,
                        help="output format for export")
    parser.add_argument("--materialize-missing-levels", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="insert placeholder classes for skipped hierarchy levels")
    parser.add_argument("--quiet", "-q", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="suppress informational output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="faceted", description="Faceted classification tools.")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        _common(p, suppress=True)
        return p

    add("validate", "report scheme diagnostics")
    add("sort", "sort notations read from standard input")
    add("tree", "print the class hierarchy")
    p = add("decompose", "split a notation into components and relators")
    p.add_argument("notation")
    p = add("synthesize", "attach facet terms to a base in citation order")
    p.add_argument("base")
    p.add_argument("picks", nargs="+", metavar="CATEGORY=TERM")
    p = add("combine", "join two notations with a relator")
    p.add_argument("left")
    p.add_argument("relator")
    p.add_argument("right")
    p = add("search", "find classes by caption or index term")
    p.add_argument("term")
    p = add("record", "add a composite notation to the store")
    p.add_argument("notation")
    p.add_argument("caption", nargs="?")
    p = add("replace", "record that one class replaces another")
    p.add_argument("old")
    p.add_argument("new")
    p.add_argument("--propagate", action="store_true", help="rewrite composites that use OLD")
    p.add_argument("--date", help="effective date (YYYY-MM-DD), default today")
    p = add("resolve", "follow replaced-by links to the current class")
    p.add_argument("key", metavar="NOTATION_OR_ID")
    p = add("export", "write the scheme to standard output")
    p.add_argument("--concept-scheme", action="store_true", help="XML concept-scheme export")
    p = add("import", "read a scheme file; start a store from it when --store is given")
    p.add_argument("file")
    return parser


class _Context:
    def __init__(self, args, stdout: TextIO, stderr: TextIO):
        self.args = args
        self.out = stdout
        self.err = stderr
        self._store = None

    def info(self, text: str) -> None:
        if not self.args.quiet:
            self.err.write(text + "\n")

    def scheme_path(self) -> str:
        path = self.args.scheme or os.environ.get("FACET_SCHEME")
        if not path:
            raise UsageError("--scheme is required (or set FACET_SCHEME)")
        return path

    def store(self) -> AuthorityStore:
        if self._store is not None:
            return self._store
        if not self.args.store:
            raise UsageError(f"{self.args.command} needs --store")
        root = Path(self.args.store)
        if (root / SNAPSHOT).exists():
            self._store = AuthorityStore.open(root)
        else:
            self._store = AuthorityStore.create(root, self._read_scheme())
            self.info(f"created store {root}")
        return self._store

    def _read_scheme(self):
        return read_scheme(self.scheme_path(),
                           materialize_missing_levels=self.args.materialize_missing_levels)

    def scheme(self):
        if self.args.store and (Path(self.args.store) / SNAPSHOT).exists():
            scheme = self.store().snapshot()
            if self.args.materialize_missing_levels:
                scheme = load_scheme(scheme.grammar, scheme.records, materialize_missing_levels=True)
            return scheme
        return self._read_scheme()


def _cmd_validate(ctx):
    report = validate_scheme(ctx.scheme())
    ctx.out.write(report.format())
    ctx.info(f"{len(report)} finding(s)")
    return EXIT_FINDINGS if report else EXIT_OK


def _cmd_sort(ctx, stdin):
    grammar = ctx.scheme().grammar
    lines = [line.rstrip("\r\n") for line in stdin]
    lines = [line for line in lines if line.strip()]
    for notation in sort_schedule(lines, grammar):
        ctx.out.write(notation + "\n")
    return EXIT_OK


def _cmd_tree(ctx):
    ctx.out.write(hierarchy.format_tree(ctx.scheme()))
    return EXIT_OK


def _cmd_decompose(ctx):
    grammar = ctx.scheme().grammar
    parsed = decompose(ctx.args.notation, grammar)
    for i, chain in enumerate(parsed.operands):
        if i:
            ctx.out.write(f"relator\t\t{parsed.relators[i - 1]}\n")
        for j, comp in enumerate(chain):
            kind = "operand" if j == 0 else "component"
            term = render_chain([comp], grammar) if j == 0 else comp.term
            ctx.out.write(f"{kind}\t{comp.table_id}\t{term}\n")
    return EXIT_OK


def _cmd_synthesize(ctx):
    picks = {}
    for item in ctx.args.picks:
        category, sep, term = item.partition("=")
        if not sep or not category or not term:
            raise UsageError(f"expected CATEGORY=TERM, got {item!r}")
        picks[category] = term
    result = synthesize(FacetSelection(ctx.args.base, picks), ctx.scheme())
    ctx.out.write(result + "\n")
    return EXIT_OK


def _cmd_combine(ctx):
    a = ctx.args
    ctx.out.write(combine(a.left, a.relator, a.right, ctx.scheme()) + "\n")
    return EXIT_OK


def _cmd_search(ctx):
    if ctx.args.store:
        hits = ctx.store().search_by_term(ctx.args.term)
    else:
        hits = ctx.scheme().search(ctx.args.term)
    for rec in hits:
        ctx.out.write(f"{rec.notation}\t{rec.caption}\n")
    return EXIT_OK


def _cmd_record(ctx):
    cid = ctx.store().record_composite(ctx.args.notation, ctx.args.caption)
    ctx.out.write(cid + "\n")
    return EXIT_OK


def _cmd_replace(ctx):
    store = ctx.store()
    old, new = store.lookup(ctx.args.old), store.lookup(ctx.args.new)
    if ctx.args.propagate:
        # refuse up front so that a conflict leaves no half-done replacement behind
        probe = store.replay()
        probe.replace(old.class_id, new.class_id, ctx.args.date)
        probe.propagate_change(old.class_id, new.class_id, ctx.args.date)
    store.replace(old.class_id, new.class_id, ctx.args.date)
    if ctx.args.propagate:
        for cid, notation in store.propagate_change(old.class_id, new.class_id, ctx.args.date):
            ctx.out.write(f"{cid}\t{notation}\n")
    return EXIT_OK


def _cmd_resolve(ctx):
    if ctx.args.store:
        store = ctx.store()
    else:
        scheme = ctx.scheme()
        store = AuthorityStore(scheme.grammar, scheme)
    res = store.resolve(ctx.args.key)
    ctx.out.write(f"{res.record.class_id}\t{res.record.notation}\t{res.chain_length}\n")
    return EXIT_OK


def _cmd_export(ctx):
    scheme = ctx.scheme()
    xml = ctx.args.concept_scheme or ctx.args.format == "xml"
    data = export_concept_scheme(scheme) if xml else export_canonical(scheme)
    ctx.out.write(data.decode("utf-8"))
    return EXIT_OK


def _cmd_import(ctx):
    grammar, records = import_canonical(Path(ctx.args.file).read_bytes())
    scheme = load_scheme(grammar, records,
                         materialize_missing_levels=ctx.args.materialize_missing_levels)
    if ctx.args.store:
        root = Path(ctx.args.store)
        if (root / SNAPSHOT).exists() or (root / JOURNAL).exists():
            raise UsageError(f"store {root} already exists")
        AuthorityStore.create(root, scheme)
        ctx.info(f"imported {len(scheme)} record(s) into {root}")
    else:
        ctx.out.write(export_canonical(scheme).decode("utf-8"))
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "tree": _cmd_tree,
    "decompose": _cmd_decompose,
    "synthesize": _cmd_synthesize,
    "combine": _cmd_combine,
    "search": _cmd_search,
    "record": _cmd_record,
    "replace": _cmd_replace,
    "resolve": _cmd_resolve,
    "export": _cmd_export,
    "import": _cmd_import,
}


def run(argv: Optional[List[str]] = None, stdin: Optional[TextIO] = None,
        stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    ctx = _Context(args, stdout, stderr)
    try:
        if args.command in MUTATING and not args.store:
            raise UsageError(f"{args.command} needs --store")
        if args.command == "sort":
            return _cmd_sort(ctx, stdin)
        return _COMMANDS[args.command](ctx)
    except UsageError as exc:
        stderr.write(f"faceted: error: {exc}\n")
        return EXIT_USAGE
    except RewriteConflict as exc:
        stderr.write(f"faceted: {exc}\n")
        for cid, notation, other in exc.conflicts:
            stderr.write(f"  {cid}\t{notation}\t{other}\n")
        return EXIT_DATA
    except (FacetError, OSError, ValueError) as exc:
        stderr.write(f"faceted: {exc}\n")
        return EXIT_DATA


def main() -> None:
    sys.exit(run())
