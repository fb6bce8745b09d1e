"""Broader-class derivation and the schedule tree.

Expressive notation implies most broader links: strip the last symbol, drop
the last facet, or take the first operand of a phase relation.  Real
schemes have gaps and deliberate anomalies, so derivation is only the
default: a record's ``broader_override`` always wins, intermediate levels
that do not exist are skipped with a ``missing_level`` diagnostic, and ranges
collect the sibling classes that fall between their endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .collation import sort_key
from .errors import CycleDetected, OverrideTargetMissing, UnknownClass
from .grammar import ENUMERATED, NO_BROADER, RANGE
from .notation import Component, ParsedNotation, decompose, render_chain
from .records import COMPLEX

DERIVED = "derived"
OVERRIDE = "override"
RANGE_MEMBERSHIP = "range_membership"

MISSING_LEVEL = "missing_level"
TELESCOPED = "telescoped"
FALSE_HIERARCHY_SUSPECT = "false_hierarchy_suspect"
ORPHAN = "orphan"


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    count: Optional[int] = None

    def __str__(self):
        return f"{self.kind}({self.count})" if self.count is not None else self.kind


@dataclass(frozen=True)
class Derivation:
    """Outcome of deriving a broader class from notation alone.

    ``skipped`` lists the implied intermediate levels that do not exist,
    nearest first.
    """

    broader: Optional[str]
    skipped: Tuple[str, ...] = ()


@dataclass(frozen=True)
class HierarchyLink:
    class_id: str
    broader: Optional[str]
    origin: str
    diagnostics: Tuple[Diagnostic, ...] = ()
    skipped: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Tree:
    roots: tuple
    children: dict

    @property
    def edges(self) -> list:
        return [(parent, child) for parent, kids in self.children.items() for child in kids]


# -- derivation ------------------------------------------------------------------

def _candidates(parsed: ParsedNotation, grammar, exists) -> Iterator[Tuple[str, bool]]:
    """Implied ancestors, nearest first, as ``(notation, counts_as_level)``."""
    if parsed.kind == COMPLEX:
        relator = grammar.relator(parsed.relators[0])
        first = parsed.operands[0]
        if relator.kind == RANGE:
            yield from _chain_candidates(first, grammar, exists)
        elif relator.broader_rule != NO_BROADER:
            yield render_chain(first, grammar), True
            yield from _chain_candidates(first, grammar, exists)
        return
    yield from _chain_candidates(parsed.operands[0], grammar, exists)


def _chain_candidates(chain, grammar, exists):
    comps = list(chain)
    last = comps[-1]
    table = grammar.table(last.table_id)
    alone = len(comps) == 1

    if table.hierarchy_style != ENUMERATED:
        symbols = last.symbols
        for k in range(len(symbols) - 1, -1, -1):
            cut = symbols[:k]
            if cut and cut[-1] in table.ignorable:
                continue
            if k == 0:
                top = table.standalone("")
                if alone:
                    # top of a table is never a missing level, only a possible parent
                    if table.standalone_prefix:
                        yield top, False
                else:
                    bare = render_chain(comps[:-1] + [Component.of(table, "")], grammar)
                    yield bare, exists(top)
            else:
                yield render_chain(comps[:-1] + [Component.of(table, cut)], grammar), True

    if alone:
        return
    for j in range(len(comps) - 1, 0, -1):
        yield render_chain(comps[:j], grammar), True
    yield from _chain_candidates(comps[:1], grammar, exists)


def derive(parsed: ParsedNotation, grammar, exists) -> Derivation:
    skipped = []
    for notation, counts in _candidates(parsed, grammar, exists):
        if exists(notation):
            return Derivation(notation, tuple(skipped))
        if counts:
            skipped.append(notation)
    return Derivation(None, tuple(skipped))


def derive_broader(notation: str, scheme) -> Optional[str]:
    """Nearest existing broader class implied by ``notation``, or None."""
    return derive_detail(notation, scheme).broader


def derive_detail(notation: str, scheme) -> Derivation:
    parsed = decompose(notation, scheme.grammar)
    return derive(parsed, scheme.grammar, scheme.has_notation)


def _is_enumerated_simple(parsed, grammar):
    return (parsed.kind != COMPLEX and len(parsed.operands[0]) == 1
            and grammar.table(parsed.operands[0][0].table_id).hierarchy_style == ENUMERATED)


def _expects_parent(parsed, grammar) -> bool:
    """Whether notation alone promises an existing broader class."""
    if parsed.kind == COMPLEX:
        relator = grammar.relator(parsed.relators[0])
        return relator.kind != RANGE and relator.broader_rule != NO_BROADER
    return len(parsed.operands[0]) > 1 or _is_enumerated_simple(parsed, grammar)


# -- links -----------------------------------------------------------------------

def compute_links(scheme) -> dict:
    """Resolve the broader link of every record in ``scheme``."""
    grammar = scheme.grammar
    derived, natural = {}, {}
    for rec in scheme.records:
        d = derive(scheme.parsed(rec.class_id), grammar, scheme.has_notation)
        derived[rec.class_id] = d
        natural[rec.class_id] = scheme.class_id_of(d.broader) if d.broader else None

    membership = _range_membership(scheme, natural)
    base = dict(natural)
    base.update(membership)

    links = {}
    for rec in scheme.records:
        cid = rec.class_id
        if rec.broader_override is not None:
            target = scheme.find(rec.broader_override)
            if target is None:
                raise OverrideTargetMissing(cid, rec.broader_override)
            target_id = target.class_id
            diags = ()
            if target_id != base[cid] and not _is_enumerated_simple(scheme.parsed(cid), grammar):
                if base.get(target_id) == base[cid]:
                    diags = (Diagnostic(TELESCOPED),)
                else:
                    diags = (Diagnostic(FALSE_HIERARCHY_SUSPECT),)
            links[cid] = HierarchyLink(cid, target_id, OVERRIDE, diags)
        elif cid in membership:
            links[cid] = HierarchyLink(cid, membership[cid], RANGE_MEMBERSHIP)
        else:
            d = derived[cid]
            diags = ()
            if d.broader is not None and d.skipped:
                diags = (Diagnostic(MISSING_LEVEL, len(d.skipped)),)
            elif d.broader is None and _expects_parent(scheme.parsed(cid), grammar):
                diags = (Diagnostic(ORPHAN),)
            links[cid] = HierarchyLink(cid, natural[cid], DERIVED, diags, d.skipped)
    return links


def _range_membership(scheme, natural) -> dict:
    """Map member class id -> id of the tightest range class containing it.

    A member is an existing sibling of the range (same derived parent) whose
    filing position lies between the range's endpoints.
    """
    grammar = scheme.grammar
    spans = {}
    ranges = []
    for rec in scheme.records:
        parsed = scheme.parsed(rec.class_id)
        if (parsed.kind == COMPLEX and len(parsed.operands) == 2
                and grammar.relator(parsed.relators[0]).kind == RANGE):
            lo = sort_key(render_chain(parsed.operands[0], grammar), grammar)
            hi = sort_key(render_chain(parsed.operands[1], grammar), grammar)
            spans[rec.class_id] = (lo, hi)
            ranges.append(rec.class_id)
        else:
            key = scheme.sort_key(rec.class_id)
            spans[rec.class_id] = (key, key)
    if not ranges:
        return {}

    best = {}
    for rid in ranges:
        lo, hi = spans[rid]
        for rec in scheme.records:
            mid = rec.class_id
            if mid == rid or natural[mid] != natural[rid]:
                continue
            m_lo, m_hi = spans[mid]
            if lo <= m_lo and m_hi <= hi and (m_lo, m_hi) != (lo, hi):
                current = best.get(mid)
                if current is None or _tighter(spans[rid], spans[current], rid, current):
                    best[mid] = rid
    return best


def _tighter(span, other, rid, other_id):
    if span[0] != other[0]:
        return span[0] > other[0]
    if span[1] != other[1]:
        return span[1] < other[1]
    return rid < other_id


def resolve_broader(record, scheme) -> HierarchyLink:
    """The resolved broader link of ``record`` within ``scheme``."""
    if record.class_id not in scheme.links:
        raise UnknownClass(record.class_id)
    return scheme.links[record.class_id]


# -- tree ------------------------------------------------------------------------

def build_tree(scheme) -> Tree:
    parents = {cid: link.broader for cid, link in scheme.links.items()}
    _check_cycles(parents)
    children = {cid: [] for cid in parents}
    roots = []
    for cid, parent in parents.items():
        if parent is None:
            roots.append(cid)
        else:
            children[parent].append(cid)
    order = scheme.sort_key
    kids = {cid: tuple(sorted(v, key=order)) for cid, v in children.items()}
    return Tree(tuple(sorted(roots, key=order)), kids)


def _check_cycles(parents: dict) -> None:
    state = {}
    for start in parents:
        path = []
        node = start
        while node is not None and node not in state:
            state[node] = "open"
            path.append(node)
            node = parents.get(node)
        if node is not None and state.get(node) == "open":
            cycle = path[path.index(node):] + [node]
            raise CycleDetected(cycle)
        for n in path:
            state[n] = "done"


def children(class_id: str, scheme) -> list:
    rec = scheme.lookup(class_id)
    return list(scheme.tree.children[rec.class_id])


def ancestors(class_id: str, scheme) -> list:
    """Root-first path of class ids above ``class_id`` (the class itself excluded)."""
    rec = scheme.lookup(class_id)
    path = []
    node = scheme.links[rec.class_id].broader
    while node is not None:
        path.append(node)
        node = scheme.links[node].broader
    return path[::-1]


def format_tree(scheme) -> str:
    """Indented listing, two spaces per level, ``notation<TAB>caption`` per line."""
    lines = []
    stack = [(cid, 0) for cid in reversed(scheme.tree.roots)]
    while stack:
        cid, depth = stack.pop()
        rec = scheme.record(cid)
        lines.append(f"{'  ' * depth}{rec.notation}\t{rec.caption}")
        stack.extend((c, depth + 1) for c in reversed(scheme.tree.children[cid]))
    return "".join(line + "\n" for line in lines)
