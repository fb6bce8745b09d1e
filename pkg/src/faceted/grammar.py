"""Declarative description of a classification scheme's notation.

A :class:`NotationGrammar` names the scheme's tables (main schedule plus
auxiliary/common tables), the relator symbols used for phase relations and
ranges, and the citation order of facets in each subject area.  Everything
else in the package (tokenizing, sorting, hierarchy derivation, synthesis)
is driven by it.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .errors import AmbiguousGrammar

POSITIONAL = "positional"
ENUMERATED = "enumerated"
HIERARCHY_STYLES = (POSITIONAL, ENUMERATED)

RANGE = "range"
PHASE = "phase"
RELATOR_KINDS = (RANGE, PHASE)

FIRST_OPERAND = "first_operand"
NO_BROADER = "none"
BROADER_RULES = (FIRST_OPERAND, NO_BROADER)

REVERSE_OF_CITATION = "reverse_of_citation"
EXPLICIT = "explicit"


@dataclass(frozen=True)
class TableDef:
    """One table of the scheme.

    ``standalone_prefix`` opens the table's notation when cited on its own
    (``-A5111``); ``attach_indicator`` opens it inside a composite
    (``Z132A5111``).  The order of ``symbol_alphabet`` is the filing order
    of symbols; characters listed in ``ignorable`` (typically ``.``) carry
    no primary sort weight and never form a hierarchy level of their own.
    ``terminator`` closes a component, as ``)`` does in ``(437.4)``.
    """

    table_id: str
    facet_category: str
    standalone_prefix: str
    attach_indicator: str
    symbol_alphabet: str
    label: str = ""
    hierarchy_style: str = POSITIONAL
    ignorable: str = ""
    terminator: str = ""

    @cached_property
    def symbol_rank(self) -> dict:
        return {ch: i for i, ch in enumerate(self.symbol_alphabet)}

    def standalone(self, symbols: str = "") -> str:
        return f"{self.standalone_prefix}{symbols}{self.terminator}"

    def attached(self, symbols: str = "") -> str:
        return f"{self.attach_indicator}{symbols}{self.terminator}"


@dataclass(frozen=True)
class RelatorDef:
    symbol: str
    label: str
    sort_rank: int
    kind: str = PHASE
    commutative: bool = False
    broader_rule: str = FIRST_OPERAND


#: The relator set of the FAT-HUM example, ranked in the order the scheme
#: designers listed them.
DEFAULT_RELATORS = (
    RelatorDef("+", "Addition", 0, PHASE, True, NO_BROADER),
    RelatorDef("/", "Range", 1, RANGE, False, FIRST_OPERAND),
    RelatorDef(":", "Coordination", 2, PHASE, True, FIRST_OPERAND),
    RelatorDef("=", "Comparison phase", 3, PHASE, False, FIRST_OPERAND),
    RelatorDef(">>", "Influence phase", 4, PHASE, False, FIRST_OPERAND),
    RelatorDef("<<", "Bias phase", 5, PHASE, False, FIRST_OPERAND),
    RelatorDef("-", "Exposition phase", 6, PHASE, False, FIRST_OPERAND),
    RelatorDef("<", "Sub-grouping", 7, PHASE, False, FIRST_OPERAND),
)


@dataclass(frozen=True)
class SubjectAreaDef:
    area_notation: str
    citation_order: tuple
    schedule_order: str = REVERSE_OF_CITATION
    explicit_order: tuple = ()

    def facets_in_schedule_order(self) -> tuple:
        if self.schedule_order == EXPLICIT:
            return tuple(self.explicit_order)
        return tuple(reversed(self.citation_order))


@dataclass(frozen=True)
class NotationGrammar:
    main_table: TableDef
    auxiliary_tables: tuple = ()
    relators: tuple = DEFAULT_RELATORS
    subject_areas: tuple = ()
    default_citation_order: tuple = ()

    def __post_init__(self):
        for name in ("auxiliary_tables", "relators", "subject_areas", "default_citation_order"):
            value = getattr(self, name)
            if not isinstance(value, tuple):
                object.__setattr__(self, name, tuple(value))
        self.check()

    # -- lookups ---------------------------------------------------------------

    @cached_property
    def tables(self) -> tuple:
        return (self.main_table,) + self.auxiliary_tables

    @cached_property
    def _tables_by_id(self) -> dict:
        return {t.table_id: t for t in self.tables}

    @cached_property
    def _relators_by_symbol(self) -> dict:
        return {r.symbol: r for r in self.relators}

    def table(self, table_id: str) -> TableDef:
        return self._tables_by_id[table_id]

    def has_table(self, table_id: str) -> bool:
        return table_id in self._tables_by_id

    def relator(self, symbol: str) -> RelatorDef:
        return self._relators_by_symbol[symbol]

    def has_relator(self, symbol: str) -> bool:
        return symbol in self._relators_by_symbol

    @cached_property
    def table_rank(self) -> dict:
        """Filing rank of each table: collation of attach indicators."""
        ordered = sorted(self.tables, key=lambda t: (t.attach_indicator, t.table_id))
        return {t.table_id: i for i, t in enumerate(ordered)}

    @cached_property
    def categories(self) -> tuple:
        seen = []
        for t in self.tables:
            if t.facet_category not in seen:
                seen.append(t.facet_category)
        return tuple(seen)

    def tables_for_category(self, category: str) -> list:
        return [t for t in self.tables if t.facet_category == category]

    @cached_property
    def range_relator(self) -> Optional[RelatorDef]:
        for r in self.relators:
            if r.kind == RANGE:
                return r
        return None

    @cached_property
    def standalone_lexemes(self) -> list:
        """(prefix, table) pairs usable at the start of an operand, longest first."""
        pairs = [(t.standalone_prefix, t) for t in self.tables if t.standalone_prefix]
        return sorted(pairs, key=lambda p: -len(p[0]))

    @cached_property
    def implicit_table(self) -> Optional[TableDef]:
        """The table whose standalone notation needs no prefix, if any."""
        for t in self.tables:
            if not t.standalone_prefix:
                return t
        return None

    @cached_property
    def midchain_lexemes(self) -> list:
        """(lexeme, kind, payload) for attach indicators and relators, longest first."""
        out = [(t.attach_indicator, "indicator", t) for t in self.auxiliary_tables]
        out += [(r.symbol, "relator", r) for r in self.relators]
        return sorted(out, key=lambda p: -len(p[0]))

    def subject_area(self, base: str) -> Optional[SubjectAreaDef]:
        """Area whose notation equals ``base`` or is its longest prefix."""
        best = None
        for area in self.subject_areas:
            if base == area.area_notation:
                return area
            if base.startswith(area.area_notation):
                if best is None or len(area.area_notation) > len(best.area_notation):
                    best = area
        return best

    def citation_order_for(self, base: str) -> tuple:
        area = self.subject_area(base)
        if area is not None:
            return tuple(area.citation_order)
        if self.default_citation_order:
            return self.default_citation_order
        # reversed schedule order: the last-filing facet is cited first
        aux = sorted(self.auxiliary_tables, key=lambda t: self.table_rank[t.table_id])
        order = []
        for t in reversed(aux):
            if t.facet_category not in order:
                order.append(t.facet_category)
        return tuple(order)

    # -- validation ------------------------------------------------------------

    def check(self) -> None:
        """Raise :class:`AmbiguousGrammar` unless tokenization is deterministic."""
        ids = [t.table_id for t in self.tables]
        dupes = {i for i in ids if ids.count(i) > 1}
        if dupes:
            raise AmbiguousGrammar(f"duplicate table ids: {sorted(dupes)}")
        for t in self.tables:
            _check_table(t, is_main=t is self.main_table)

        symbols = [r.symbol for r in self.relators]
        if any(not s for s in symbols):
            raise AmbiguousGrammar("empty relator symbol")
        if len(set(symbols)) != len(symbols):
            raise AmbiguousGrammar("duplicate relator symbols")
        if sum(r.kind == RANGE for r in self.relators) > 1:
            raise AmbiguousGrammar("more than one range relator")
        for r in self.relators:
            if r.kind not in RELATOR_KINDS:
                raise AmbiguousGrammar(f"relator {r.symbol!r}: bad kind {r.kind!r}")
            if r.broader_rule not in BROADER_RULES:
                raise AmbiguousGrammar(f"relator {r.symbol!r}: bad broader rule {r.broader_rule!r}")
            if r.sort_rank < 0:
                raise AmbiguousGrammar(f"relator {r.symbol!r}: negative sort rank")

        mid = [lex for lex, _, _ in self.midchain_lexemes]
        if len(set(mid)) != len(mid):
            raise AmbiguousGrammar("an attach indicator collides with another indicator or relator")
        mid_first = {lex[0] for lex in mid}
        for t in self.tables:
            clash = (set(t.symbol_alphabet) | set(t.terminator[:1])) & mid_first
            if clash:
                raise AmbiguousGrammar(
                    f"table {t.table_id!r}: symbols {sorted(clash)} also open an indicator or relator")

        operand_starts = {p[0] for p, _ in self.standalone_lexemes}
        empties = [t for t in self.tables if not t.standalone_prefix]
        if len(empties) > 1:
            raise AmbiguousGrammar("more than one table without a standalone prefix")
        if empties:
            operand_starts |= set(empties[0].symbol_alphabet)
            clash = {p[0] for p, _ in self.standalone_lexemes} & set(empties[0].symbol_alphabet)
            if clash:
                raise AmbiguousGrammar(
                    f"standalone prefixes start with symbols {sorted(clash)} of table "
                    f"{empties[0].table_id!r}")

        for short, kind, payload in self.midchain_lexemes:
            if kind == "relator":
                followers = operand_starts
            else:
                followers = set(payload.symbol_alphabet) | set(payload.terminator[:1]) | mid_first
            for longer, _, _ in self.midchain_lexemes:
                if len(longer) > len(short) and longer.startswith(short):
                    if longer[len(short)] in followers:
                        raise AmbiguousGrammar(f"{short!r} followed by text can be read as {longer!r}")

        prefixes = self.standalone_lexemes
        for short, table in prefixes:
            followers = set(table.symbol_alphabet) | set(table.terminator[:1]) | mid_first
            for longer, other in prefixes:
                if other is table:
                    continue
                if longer == short:
                    raise AmbiguousGrammar(f"standalone prefix {short!r} used twice")
                if longer.startswith(short) and longer[len(short)] in followers:
                    raise AmbiguousGrammar(f"standalone prefix {short!r} is ambiguous with {longer!r}")

        known = set(self.categories)
        orders = [("default", self.default_citation_order)]
        orders += [(a.area_notation, a.citation_order) for a in self.subject_areas]
        for area in self.subject_areas:
            if area.schedule_order not in (REVERSE_OF_CITATION, EXPLICIT):
                raise AmbiguousGrammar(f"area {area.area_notation!r}: bad schedule order flag")
            if area.schedule_order == EXPLICIT:
                orders.append((area.area_notation, area.explicit_order))
        for name, order in orders:
            unknown = [c for c in order if c not in known]
            if unknown:
                raise AmbiguousGrammar(f"citation order {name!r} names unknown categories {unknown}")
            if len(set(order)) != len(order):
                raise AmbiguousGrammar(f"citation order {name!r} repeats a category")


def _check_table(t: TableDef, is_main: bool) -> None:
    if not t.table_id:
        raise AmbiguousGrammar("empty table id")
    if not t.symbol_alphabet:
        raise AmbiguousGrammar(f"table {t.table_id!r}: empty alphabet")
    if len(set(t.symbol_alphabet)) != len(t.symbol_alphabet):
        raise AmbiguousGrammar(f"table {t.table_id!r}: duplicate symbols in alphabet")
    if not set(t.ignorable) <= set(t.symbol_alphabet):
        raise AmbiguousGrammar(f"table {t.table_id!r}: ignorable symbols outside alphabet")
    if t.ignorable and set(t.ignorable) == set(t.symbol_alphabet):
        raise AmbiguousGrammar(f"table {t.table_id!r}: every symbol is ignorable")
    if set(t.terminator) & set(t.symbol_alphabet):
        raise AmbiguousGrammar(f"table {t.table_id!r}: terminator overlaps alphabet")
    if not is_main and not t.attach_indicator:
        raise AmbiguousGrammar(f"auxiliary table {t.table_id!r} needs an attach indicator")
    if not is_main and not t.standalone_prefix:
        raise AmbiguousGrammar(f"auxiliary table {t.table_id!r} needs a standalone prefix")
    if t.hierarchy_style not in HIERARCHY_STYLES:
        raise AmbiguousGrammar(f"table {t.table_id!r}: bad hierarchy style {t.hierarchy_style!r}")
    for text in (t.standalone_prefix, t.attach_indicator):
        if set(text) & set(t.symbol_alphabet):
            raise AmbiguousGrammar(f"table {t.table_id!r}: indicator {text!r} uses alphabet symbols")

