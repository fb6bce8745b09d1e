"""History-aware authority file.

The store keeps the records of one scheme together with two indexes (by
canonical notation and by word) and an append-only change log.  Every
mutation is one of two primitive operations, ``record`` and ``replace``;
larger operations such as :meth:`AuthorityStore.propagate_change` are
logged as the primitives they perform, so replaying the log over the base
snapshot reproduces the state exactly.

On disk a store is a directory holding ``scheme.fcs`` (the last checkpoint)
and ``journal.log`` (one line per operation since then)::

    2026-10-17T09:30:00+00:00<TAB>record<TAB>c1f0...<TAB>420+590<TAB>caption
    2026-10-17T09:31:00+00:00<TAB>replace<TAB>old_id<TAB>new_id<TAB>2026-10-17
"""
from __future__ import annotations

import dataclasses
import datetime as _dt
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Set, Tuple

from .collation import sort_key
from .errors import (FormatSyntaxError, HistoryCycle, NotationError, RewriteConflict,
                     SelfReplacement, StoreError, UnknownClass)
from .exchange import _esc, _unesc, export_canonical, import_canonical
from .grammar import NotationGrammar
from .notation import ParsedNotation, _build, canonical, decompose, recompose
from .records import (REPLACED_BY, REPLACES, SIMPLE, ChangeEntry, ClassRecord,
                      generate_class_id)
from .scheme import Scheme, load_scheme, record_texts, term_words

SNAPSHOT = "scheme.fcs"
JOURNAL = "journal.log"

RECORD = "record"
REPLACE = "replace"


def utc_now() -> _dt.datetime:
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class LogEntry:
    timestamp: str
    operation: str
    class_id: str
    fields: tuple = ()

    def to_line(self) -> str:
        return "\t".join(_esc(v) for v in (self.timestamp, self.operation, *self.fields))

    @classmethod
    def from_line(cls, line: str, lineno: int) -> "LogEntry":
        parts = line.split("\t")
        if len(parts) < 3:
            raise FormatSyntaxError("journal line needs timestamp, operation and fields", lineno, 1)
        values = []
        col = 1
        for p in parts:
            values.append(_unesc(p, lineno, col))
            col += len(p) + 1
        ts, op, *rest = values
        if op == RECORD and len(rest) >= 3:
            return cls(ts, op, rest[0], tuple(rest))
        if op == REPLACE and len(rest) == 3:
            return cls(ts, op, rest[0], tuple(rest))
        raise FormatSyntaxError(f"bad journal operation {op!r}", lineno, len(parts[0]) + 2)


@dataclass
class StoreState:
    records: Dict[str, ClassRecord] = field(default_factory=dict)
    notation_index: Dict[str, str] = field(default_factory=dict)
    term_index: Dict[str, Set[str]] = field(default_factory=dict)
    change_log: List[LogEntry] = field(default_factory=list)


@dataclass(frozen=True)
class Resolution:
    record: ClassRecord
    chain_length: int
    chain: tuple


class AuthorityStore:
    """Mutable authority file over a fixed notation grammar.

    Single writer: callers must serialize mutations.  :meth:`snapshot`
    returns an immutable :class:`Scheme` reflecting the last completed one.
    """

    def __init__(self, grammar: NotationGrammar, records=(), *,
                 clock: Optional[Callable[[], _dt.datetime]] = None, path=None):
        self.grammar = grammar
        self.clock = clock or utc_now
        self.path = Path(path) if path is not None else None
        base = records if isinstance(records, Scheme) else load_scheme(grammar, records)
        self._base = tuple(base.records)
        self.state = StoreState()
        for rec in base.records:
            self._put(rec)
        self._snapshot: Optional[Scheme] = base
        self._base_log = 0

    # -- persistence --------------------------------------------------------------

    @classmethod
    def create(cls, path, scheme: Scheme, *, clock=None) -> "AuthorityStore":
        """Start a new store directory from ``scheme``."""
        path = Path(path)
        path.mkdir(parents=True, exist_ok=True)
        (path / SNAPSHOT).write_bytes(export_canonical(scheme))
        (path / JOURNAL).write_text("", encoding="utf-8")
        return cls(scheme.grammar, scheme, clock=clock, path=path)

    @classmethod
    def open(cls, path, *, clock=None) -> "AuthorityStore":
        """Load the checkpoint and replay the journal written since."""
        path = Path(path)
        grammar, records = import_canonical((path / SNAPSHOT).read_bytes())
        store = cls(grammar, records, clock=clock)
        journal = path / JOURNAL
        if journal.exists():
            text = journal.read_text(encoding="utf-8")
            for n, line in enumerate(text.split("\n"), 1):
                if line:
                    store._apply(LogEntry.from_line(line, n))
        store.path = path
        return store

    def checkpoint(self) -> None:
        """Fold the journal into a fresh snapshot."""
        if self.path is None:
            raise StoreError("store has no directory")
        tmp = self.path / (SNAPSHOT + ".tmp")
        tmp.write_bytes(export_canonical(self.snapshot()))
        os.replace(tmp, self.path / SNAPSHOT)
        (self.path / JOURNAL).write_text("", encoding="utf-8")
        self._base = tuple(self.state.records.values())
        self._base_log = len(self.state.change_log)

    def replay(self) -> "AuthorityStore":
        """A fresh store built from the base records plus this store's log."""
        other = AuthorityStore(self.grammar, self._base, clock=self.clock)
        for entry in self.state.change_log[self._base_log:]:
            other._apply(entry)
        return other

    def _log(self, op: str, *fields: str) -> LogEntry:
        entry = LogEntry(self.clock().isoformat(), op, fields[0], tuple(fields))
        self.state.change_log.append(entry)
        if self.path is not None:
            with open(self.path / JOURNAL, "a", encoding="utf-8") as fh:
                fh.write(entry.to_line() + "\n")
        return entry

    def _apply(self, entry: LogEntry) -> None:
        if entry.operation == RECORD:
            cid, notation, caption, *terms = entry.fields
            self._insert(cid, notation, caption, tuple(terms))
        else:
            old, new, date = entry.fields
            self._link(old, new, _dt.date.fromisoformat(date))
        self.state.change_log.append(entry)

    # -- state --------------------------------------------------------------------

    def _put(self, rec: ClassRecord) -> None:
        st = self.state
        old = st.records.get(rec.class_id)
        if old is not None:
            self._unindex(old)
        st.records[rec.class_id] = rec
        st.notation_index[canonical(rec.notation, self.grammar)] = rec.class_id
        for text in record_texts(rec):
            for word in term_words(text):
                st.term_index.setdefault(word, set()).add(rec.class_id)
        self._snapshot = None

    def _unindex(self, rec: ClassRecord) -> None:
        for text in record_texts(rec):
            for word in term_words(text):
                ids = self.state.term_index.get(word)
                if ids is not None:
                    ids.discard(rec.class_id)
                    if not ids:
                        del self.state.term_index[word]

    def _insert(self, cid, notation, caption, terms) -> ClassRecord:
        parsed = decompose(notation, self.grammar)
        tables = tuple(dict.fromkeys(c.table_id for c in parsed.components))
        rec = ClassRecord(cid, notation, caption, index_terms=terms,
                          notation_kind=parsed.kind, source_tables=tables)
        self._put(rec)
        return rec

    def _link(self, old: str, new: str, date: _dt.date) -> None:
        a, b = self.record(old), self.record(new)
        self._put(_add_history(a, ChangeEntry(REPLACED_BY, new, date)))
        self._put(_add_history(b, ChangeEntry(REPLACES, old, date)))

    def __len__(self):
        return len(self.state.records)

    def __contains__(self, key):
        return self.find(key) is not None

    @property
    def records(self) -> list:
        return list(self.state.records.values())

    @property
    def change_log(self) -> tuple:
        return tuple(self.state.change_log)

    def record(self, class_id: str) -> ClassRecord:
        try:
            return self.state.records[class_id]
        except KeyError:
            raise UnknownClass(class_id) from None

    def find(self, key: str) -> Optional[ClassRecord]:
        """Record by class id or by any spelling of its notation."""
        rec = self.state.records.get(key)
        if rec is not None:
            return rec
        try:
            cid = self.state.notation_index.get(canonical(key, self.grammar))
        except NotationError:
            return None
        return self.state.records[cid] if cid is not None else None

    def lookup(self, key: str) -> ClassRecord:
        rec = self.find(key)
        if rec is None:
            raise UnknownClass(key)
        return rec

    def snapshot(self) -> Scheme:
        if self._snapshot is None:
            self._snapshot = load_scheme(self.grammar, self.state.records.values())
        return self._snapshot

    def _ordered(self, records) -> list:
        return sorted(records, key=lambda r: (sort_key(r.notation, self.grammar), r.class_id))

    # -- operations ---------------------------------------------------------------

    def record_composite(self, notation: str, caption: Optional[str] = None,
                         index_terms: tuple = ()) -> str:
        """Class id for ``notation``, creating the record on first use."""
        canon = canonical(notation, self.grammar)
        existing = self.state.notation_index.get(canon)
        if existing is not None:
            return existing
        cid = generate_class_id(canon)
        n = 1
        while cid in self.state.records:
            n += 1
            cid = f"{generate_class_id(canon)}-{n}"
        self._insert(cid, canon, caption or "", tuple(index_terms))
        self._log(RECORD, cid, canon, caption or "", *index_terms)
        return cid

    def replace(self, old: str, new: str, date=None) -> None:
        """Record that class ``old`` is replaced by class ``new``."""
        a, b = self.lookup(old), self.lookup(new)
        if a.class_id == b.class_id:
            raise SelfReplacement(f"class {a.class_id!r} cannot replace itself")
        if date is None:
            date = self.clock().date()
        elif isinstance(date, str):
            date = _dt.date.fromisoformat(date)
        self._link(a.class_id, b.class_id, date)
        self._log(REPLACE, a.class_id, b.class_id, date.isoformat())

    def resolve(self, key: str) -> Resolution:
        """Follow replaced-by links from ``key`` to the current class."""
        rec = self.lookup(key)
        chain = [rec.class_id]
        while rec.replaced_by is not None:
            nxt = rec.replaced_by
            if nxt in chain:
                raise HistoryCycle(chain[chain.index(nxt):] + [nxt])
            rec = self.record(nxt)
            chain.append(nxt)
        return Resolution(rec, len(chain) - 1, tuple(chain))

    def search_by_term(self, term: str, include_cancelled: bool = False) -> List[ClassRecord]:
        """Whole-word, case-insensitive match on captions and index terms."""
        words = term_words(term)
        if not words:
            return []
        ids = set(self.state.term_index.get(words[0], ()))
        for w in words[1:]:
            ids &= self.state.term_index.get(w, set())
        hits = []
        for cid in ids:
            rec = self.state.records[cid]
            if rec.cancelled and not include_cancelled:
                continue
            if any(_phrase(words, text) for text in record_texts(rec)):
                hits.append(rec)
        return self._ordered(hits)

    def rewrites_for(self, old: str, new: str) -> List[Tuple[str, str]]:
        """The rewrites :meth:`propagate_change` would perform, without performing them."""
        a, b = self.lookup(old), self.lookup(new)
        old_p = decompose(a.notation, self.grammar)
        new_p = decompose(b.notation, self.grammar)
        out = []
        for rec in self._ordered(self.state.records.values()):
            if rec.class_id in (a.class_id, b.class_id) or rec.cancelled:
                continue
            if rec.notation_kind == SIMPLE:
                continue
            parsed = decompose(rec.notation, self.grammar)
            rewritten = substitute(parsed, old_p, new_p)
            if rewritten is None:
                continue
            out.append((rec.class_id, recompose(rewritten, self.grammar)))
        return out

    def propagate_change(self, old: str, new: str, date=None) -> List[Tuple[str, str]]:
        """Carry the replacement of ``old`` by ``new`` into stored composites.

        Each affected composite gets a new record with the substituted
        notation and is itself marked replaced by it.  Nothing is changed
        when any rewrite would collide with a different existing record.
        """
        a, b = self.lookup(old), self.lookup(new)
        if b.class_id not in {h.other_class for h in a.history if h.kind == REPLACED_BY}:
            raise StoreError(f"{a.class_id!r} has not been replaced by {b.class_id!r}")
        plan = self.rewrites_for(a.class_id, b.class_id)
        conflicts, targets = [], {}
        for cid, notation in plan:
            try:
                ok = canonical(notation, self.grammar) == notation
            except NotationError:
                ok = False
            if not ok:
                conflicts.append((cid, notation, "rewritten notation does not parse back"))
                continue
            clash = self.state.notation_index.get(notation)
            if clash is not None and clash != cid:
                conflicts.append((cid, notation, clash))
            elif notation in targets:
                conflicts.append((cid, notation, targets[notation]))
            targets[notation] = cid
        if conflicts:
            raise RewriteConflict(conflicts)
        for cid, notation in plan:
            src = self.record(cid)
            new_id = self.record_composite(notation, src.caption, src.index_terms)
            self.replace(cid, new_id, date)
        return plan


def _phrase(words, text) -> bool:
    found = term_words(text)
    n = len(words)
    return any(found[i:i + n] == words for i in range(len(found) - n + 1))


def _add_history(rec: ClassRecord, entry: ChangeEntry) -> ClassRecord:
    notes = dataclasses.replace(rec.notes, history=rec.notes.history + (entry,))
    return dataclasses.replace(rec, notes=notes)


def substitute(parsed: ParsedNotation, old: ParsedNotation,
               new: ParsedNotation) -> Optional[ParsedNotation]:
    """``parsed`` with ``old`` swapped for ``new``, or None when ``old`` is absent.

    A one-component ``old`` is replaced wherever that component occurs; a
    longer ``old`` chain only where it forms a whole operand.  A phase
    expression as ``old`` cannot occur inside another classmark's operands
    and is never substituted.
    """
    if len(old.operands) != 1:
        return None
    old_chain = old.operands[0]
    changed = False
    operands, relators = [], []
    for i, chain in enumerate(parsed.operands):
        if i:
            relators.append(parsed.relators[i - 1])
        if chain == old_chain:
            # whole operand: splice in the new notation, relators included
            operands.append(new.operands[0])
            for rel, extra in zip(new.relators, new.operands[1:]):
                relators.append(rel)
                operands.append(extra)
            changed = True
            continue
        if len(old_chain) == 1 and len(new.operands) == 1 and old_chain[0] in chain:
            out = []
            for comp in chain:
                if comp == old_chain[0]:
                    out.extend(new.operands[0])
                else:
                    out.append(comp)
            operands.append(tuple(out))
            changed = True
            continue
        operands.append(chain)
    if not changed:
        return None
    return _build(tuple(operands), tuple(relators))
