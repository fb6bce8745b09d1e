"""Class records: the seven blocks of data kept for every class."""
from __future__ import annotations

import datetime as _dt
import hashlib
from dataclasses import dataclass, field
from typing import Optional

REPLACES = "replaces"
REPLACED_BY = "replaced_by"
CANCELLED = "cancelled"
CHANGE_KINDS = (REPLACES, REPLACED_BY, CANCELLED)

SIMPLE = "simple"
COMPOUND = "compound"
COMPLEX = "complex"


@dataclass(frozen=True)
class ChangeEntry:
    kind: str
    other_class: str
    effective_date: _dt.date

    def __post_init__(self):
        if self.kind not in CHANGE_KINDS:
            raise ValueError(f"unknown change kind {self.kind!r}")
        if isinstance(self.effective_date, str):
            object.__setattr__(self, "effective_date", _dt.date.fromisoformat(self.effective_date))


@dataclass(frozen=True)
class CombinationConstraint:
    """Licenses combining ``host_class`` with partners matching ``allowed_partner``.

    ``allowed_partner`` is either a table id or a notation prefix.  An empty
    ``relator`` governs direct facet attachment rather than a phase relation.
    """

    host_class: str
    allowed_partner: str
    relator: str


@dataclass(frozen=True)
class ParallelDivisionRule:
    host_class: str
    source_table: str
    strip_prefix: str
    host_affix: tuple = ("", "")

    def __post_init__(self):
        object.__setattr__(self, "host_affix", tuple(self.host_affix))


@dataclass(frozen=True)
class NoteSet:
    scope: Optional[str] = None
    application: Optional[str] = None
    combination_rules: tuple = ()
    parallel_rules: tuple = ()
    combination_examples: tuple = ()
    history: tuple = ()
    content_note: Optional[str] = None
    editorial_note: Optional[str] = None

    def __post_init__(self):
        for name in ("combination_rules", "parallel_rules", "history"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "combination_examples",
                           tuple(tuple(e) for e in self.combination_examples))


@dataclass(frozen=True)
class ClassRecord:
    """One class.

    ``notation_kind`` and ``source_tables`` are filled in from the parse when
    the record is loaded into a scheme.  ``components`` is side data for
    non-expressive notation: an explicit ``(table_id, term)`` list used in
    place of parsing when the notation itself does not reveal its parts.
    """

    class_id: str
    notation: str
    caption: str = ""
    broader_override: Optional[str] = None
    notes: NoteSet = field(default_factory=NoteSet)
    references: tuple = ()
    index_terms: tuple = ()
    components: Optional[tuple] = None
    notation_kind: Optional[str] = None
    source_tables: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "references", tuple(self.references))
        object.__setattr__(self, "index_terms", tuple(self.index_terms))
        object.__setattr__(self, "source_tables", tuple(self.source_tables))
        if self.components is not None:
            object.__setattr__(self, "components", tuple(tuple(c) for c in self.components))

    @property
    def history(self) -> tuple:
        return self.notes.history

    @property
    def replaced_by(self) -> Optional[str]:
        """Most recent replacement, if the class has been replaced."""
        entries = [h for h in self.notes.history if h.kind == REPLACED_BY]
        if not entries:
            return None
        return max(entries, key=lambda h: h.effective_date).other_class

    @property
    def cancelled(self) -> bool:
        return any(h.kind in (REPLACED_BY, CANCELLED) for h in self.notes.history)


def generate_class_id(canonical_notation: str) -> str:
    """Opaque id derived from the canonical notation."""
    digest = hashlib.sha256(canonical_notation.encode("utf-8")).hexdigest()
    return "c" + digest[:16]
