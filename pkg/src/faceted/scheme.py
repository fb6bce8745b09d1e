"""Loading a validated, immutable scheme snapshot."""
from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, List, Optional

from . import hierarchy
from .collation import key_of_parsed
from .errors import (DanglingReference, DuplicateClassId, DuplicateNotation,
                     InvalidRecord, NotationError, UnknownClass, UnparsableNotation)
from .grammar import NotationGrammar
from .notation import decompose, from_components, recompose, render
from .records import (CANCELLED, CHANGE_KINDS, REPLACED_BY, REPLACES, ClassRecord, NoteSet,
                      generate_class_id)

_WORD = re.compile(r"\w+")


def normalize_term(text: str) -> str:
    """Case-fold and collapse whitespace."""
    return " ".join(text.casefold().split())


def term_words(text: str) -> list:
    return _WORD.findall(normalize_term(text))


def record_texts(record: ClassRecord) -> list:
    return [record.caption, *record.index_terms]


def phrase_match(query_words: list, text: str) -> bool:
    words = term_words(text)
    n = len(query_words)
    return n > 0 and any(words[i:i + n] == query_words for i in range(len(words) - n + 1))


class Scheme:
    """Records of one scheme with parse results, hierarchy and indexes.

    Build instances with :func:`load_scheme`; they are not meant to be
    mutated afterwards.
    """

    def __init__(self, grammar: NotationGrammar, records: Iterable[ClassRecord], parsed: dict):
        self.grammar = grammar
        self._parsed = parsed
        self._canonical = {cid: recompose(p, grammar) for cid, p in parsed.items()}
        self._keys = {cid: key_of_parsed(p, grammar) for cid, p in parsed.items()}
        ordered = sorted(records, key=lambda r: (self._keys[r.class_id], r.class_id))
        self.records = tuple(ordered)
        self.by_id = MappingProxyType({r.class_id: r for r in ordered})
        self.by_notation = MappingProxyType({self._canonical[r.class_id]: r.class_id for r in ordered})
        terms = {}
        for r in ordered:
            for text in record_texts(r):
                for word in term_words(text):
                    terms.setdefault(word, set()).add(r.class_id)
        self.term_index = MappingProxyType({w: frozenset(ids) for w, ids in terms.items()})
        rules = {}
        for r in ordered:
            for rule in r.notes.combination_rules:
                try:
                    host = recompose(decompose(rule.host_class, grammar), grammar)
                except NotationError:
                    host = rule.host_class
                rules.setdefault(host, []).append(rule)
        self.constraints = MappingProxyType({h: tuple(v) for h, v in rules.items()})
        self.links = MappingProxyType(hierarchy.compute_links(self))
        self.tree = hierarchy.build_tree(self)

    # -- lookups ------------------------------------------------------------------

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __contains__(self, key):
        return self.find(key) is not None

    def __eq__(self, other):
        if not isinstance(other, Scheme):
            return NotImplemented
        return self.grammar == other.grammar and self.records == other.records

    def __repr__(self):
        return f"<Scheme {len(self.records)} records, {len(self.tree.roots)} roots>"

    def record(self, class_id: str) -> ClassRecord:
        try:
            return self.by_id[class_id]
        except KeyError:
            raise UnknownClass(class_id) from None

    def has_notation(self, notation: str) -> bool:
        return self.class_id_of(notation) is not None

    def class_id_of(self, notation: str) -> Optional[str]:
        cid = self.by_notation.get(notation)
        if cid is None:
            try:
                cid = self.by_notation.get(self.canonical_of(notation))
            except NotationError:
                return None
        return cid

    def canonical_of(self, notation: str) -> str:
        return recompose(decompose(notation, self.grammar), self.grammar)

    def find(self, key: str) -> Optional[ClassRecord]:
        """Record by class id or by (any spelling of) its notation."""
        if key in self.by_id:
            return self.by_id[key]
        cid = self.class_id_of(key)
        return self.by_id[cid] if cid is not None else None

    def lookup(self, key: str) -> ClassRecord:
        rec = self.find(key)
        if rec is None:
            raise UnknownClass(key)
        return rec

    def parsed(self, class_id: str):
        return self._parsed[class_id]

    def canonical(self, class_id: str) -> str:
        return self._canonical[class_id]

    def sort_key(self, class_id: str):
        return self._keys[class_id]

    def notation_of(self, class_id: str) -> str:
        return self.record(class_id).notation

    @property
    def roots(self) -> tuple:
        return self.tree.roots

    def search(self, term: str, include_cancelled: bool = False) -> List[ClassRecord]:
        """Whole-word, case-insensitive phrase match over captions and index terms."""
        words = term_words(term)
        if not words:
            return []
        candidates = set(self.term_index.get(words[0], ()))
        for w in words[1:]:
            candidates &= self.term_index.get(w, frozenset())
        hits = []
        for rec in self.records:
            if rec.class_id not in candidates or (rec.cancelled and not include_cancelled):
                continue
            if any(phrase_match(words, text) for text in record_texts(rec)):
                hits.append(rec)
        return hits


def parse_record(record: ClassRecord, grammar: NotationGrammar):
    """Parse a record's notation, honouring explicit components when present."""
    if record.components is not None:
        parsed = from_components(record.components, grammar)
        if render(parsed, grammar) != record.notation:
            raise InvalidRecord(
                f"class {record.class_id!r}: components do not spell {record.notation!r}")
        return parsed
    return decompose(record.notation, grammar)


def load_scheme(grammar: NotationGrammar, records: Iterable[ClassRecord], *,
                materialize_missing_levels: bool = False) -> Scheme:
    """Validate ``records`` against ``grammar`` and build a :class:`Scheme`.

    Any validation error aborts the whole load.  Records without a class id
    get one generated from their canonical notation.
    """
    grammar.check()
    records = list(records)
    parsed, prepared, seen_notation = {}, [], {}
    for rec in records:
        try:
            p = parse_record(rec, grammar)
        except (NotationError, KeyError) as exc:
            raise UnparsableNotation(rec.class_id, rec.notation, exc) from exc
        canon = recompose(p, grammar)
        if not rec.class_id:
            rec = dataclasses.replace(rec, class_id=generate_class_id(canon))
        if rec.class_id in parsed:
            raise DuplicateClassId(rec.class_id)
        if canon in seen_notation:
            raise DuplicateNotation(canon, [seen_notation[canon], rec.class_id])
        seen_notation[canon] = rec.class_id
        parsed[rec.class_id] = p
        tables = tuple(dict.fromkeys(c.table_id for c in p.components))
        prepared.append(dataclasses.replace(rec, notation_kind=p.kind, source_tables=tables))

    for rec in prepared:
        _check_notes(rec, grammar)

    known_ids = set(parsed)

    def resolves(key):
        if key in known_ids:
            return True
        try:
            return recompose(decompose(key, grammar), grammar) in seen_notation
        except NotationError:
            return False

    for rec in prepared:
        if rec.broader_override is not None and not resolves(rec.broader_override):
            raise DanglingReference(rec.class_id, rec.broader_override)

    scheme = Scheme(grammar, prepared, parsed)
    if materialize_missing_levels:
        placeholders = _placeholders(scheme)
        if placeholders:
            # placeholders can have gaps above them too; repeat until none remain
            return load_scheme(grammar, prepared + placeholders, materialize_missing_levels=True)
    return scheme


def _check_notes(rec: ClassRecord, grammar: NotationGrammar) -> None:
    notes = rec.notes
    for notation, _caption in notes.combination_examples:
        try:
            decompose(notation, grammar)
        except NotationError as exc:
            raise UnparsableNotation(rec.class_id, notation, exc) from exc
    for rule in notes.combination_rules:
        if rule.relator and not grammar.has_relator(rule.relator):
            raise InvalidRecord(f"class {rec.class_id!r}: constraint uses unknown relator {rule.relator!r}")
    for entry in notes.history:
        if entry.kind not in CHANGE_KINDS:
            raise InvalidRecord(f"class {rec.class_id!r}: bad history kind {entry.kind!r}")
    if not rec.class_id:
        raise InvalidRecord("empty class id")


def _placeholders(scheme: Scheme) -> list:
    out = {}
    for link in scheme.links.values():
        if link.broader is None:
            continue
        for notation in link.skipped:
            canon = scheme.canonical_of(notation)
            if canon not in out and not scheme.has_notation(canon):
                out[canon] = ClassRecord(generate_class_id(canon), canon, "",
                                         notes=_PLACEHOLDER_NOTES)
    return list(out.values())


_PLACEHOLDER_NOTES = NoteSet(editorial_note="placeholder for a missing hierarchy level")


# -- validation -------------------------------------------------------------------

@dataclass(frozen=True)
class Finding:
    class_id: str
    kind: str
    detail: str = ""

    def __str__(self):
        return f"{self.class_id}\t{self.kind}\t{self.detail}".rstrip("\t")


@dataclass
class ValidationReport:
    findings: list = field(default_factory=list)

    def __bool__(self):
        return bool(self.findings)

    def __len__(self):
        return len(self.findings)

    def __iter__(self):
        return iter(self.findings)

    @property
    def clean(self) -> bool:
        return not self.findings

    def of_kind(self, kind: str) -> list:
        return [f for f in self.findings if f.kind == kind]

    def for_class(self, class_id: str) -> list:
        return [f for f in self.findings if f.class_id == class_id]

    def format(self) -> str:
        return "".join(f"{f}\n" for f in self.findings)


def validate_scheme(scheme: Scheme) -> ValidationReport:
    """Diagnostics for a loaded scheme; an empty report means fully consistent."""
    from .synthesis import constraint_violations

    report = ValidationReport()
    add = report.findings.append
    for rec in scheme.records:
        cid = rec.class_id
        for notation, _caption in rec.notes.combination_examples:
            for problem in constraint_violations(decompose(notation, scheme.grammar), scheme):
                add(Finding(cid, "combination_violation", f"{notation}: {problem}"))
        for ref in rec.references:
            if ref not in scheme:
                add(Finding(cid, "dangling_reference", ref))
        link = scheme.links[cid]
        for diag in link.diagnostics:
            if diag.kind == hierarchy.MISSING_LEVEL:
                for notation in link.skipped:
                    add(Finding(cid, diag.kind, notation))
            else:
                add(Finding(cid, diag.kind, str(diag)))
        for entry in rec.notes.history:
            other = scheme.by_id.get(entry.other_class)
            if entry.kind == CANCELLED:
                continue
            if other is None:
                add(Finding(cid, "dangling_history", f"{entry.kind} {entry.other_class}"))
                continue
            mirror = REPLACES if entry.kind == REPLACED_BY else REPLACED_BY
            if not any(h.kind == mirror and h.other_class == cid for h in other.notes.history):
                add(Finding(cid, "asymmetric_history", f"{entry.kind} {entry.other_class}"))
    for cycle in _history_cycles(scheme):
        add(Finding(cycle[0], "history_cycle", " -> ".join(cycle)))
    for area in scheme.grammar.subject_areas:
        expected = list(area.facets_in_schedule_order())
        tables = [t for c in expected for t in scheme.grammar.tables_for_category(c)]
        mechanical = [t.facet_category for t in sorted(
            tables, key=lambda t: scheme.grammar.table_rank[t.table_id])]
        if list(dict.fromkeys(mechanical)) != expected:
            add(Finding(area.area_notation, "schedule_order_mismatch",
                        f"indicators file as {','.join(dict.fromkeys(mechanical))}"))
    return report


def _history_cycles(scheme: Scheme) -> list:
    cycles, done = [], set()
    for rec in scheme.records:
        path, node = [], rec.class_id
        while node is not None and node not in done and node not in path:
            path.append(node)
            nxt = scheme.by_id.get(node)
            node = nxt.replaced_by if nxt is not None else None
        if node is not None and node in path:
            cycle = path[path.index(node):] + [node]
            if not any(set(cycle) == set(c) for c in cycles):
                cycles.append(cycle)
        done.update(path)
    return cycles

