"""Scheme serialization.

Two formats:

* the canonical ``.fcs`` text format, lossless and byte-for-byte
  reproducible (records in filing order, tags in fixed order);
* an XML concept-scheme export for interchange.  Broader/related links and
  labels map onto the usual concept vocabulary; the syntagmatic structure of
  composite classmarks, which that vocabulary cannot carry, goes into a
  separately namespaced ``composite`` extension.

The canonical format is line oriented and TAB separated::

    %FCS 1
    TAB  id  category  standalone  attach  alphabet  style  ignorable  terminator  label
    REL  symbol  sort_rank  kind  commutative  broader_rule  label
    CIT  area  cat,cat,...  schedule_flag  explicit,cats
    DCO  cat,cat,...
    <blank>
    ID / NOT / CMP / BRD / CAP / SCO / APP / CMB / PAR / EXC / HIS / CNT / EDN / REF / IDX
    <blank between records>
    %END  record_count

The first ``TAB`` line is the main table.  Tabs, newlines and backslashes
inside values are backslash-escaped.
"""
from __future__ import annotations

import datetime as _dt
import xml.etree.ElementTree as ET
from importlib import resources
from pathlib import Path
from typing import List, Tuple, Union

from .errors import FormatSyntaxError, UnknownTag, VersionMismatch
from .grammar import NotationGrammar, RelatorDef, SubjectAreaDef, TableDef
from .notation import decompose, render_chain
from .records import (ChangeEntry, ClassRecord, CombinationConstraint, NoteSet,
                      ParallelDivisionRule)
from .scheme import Scheme, load_scheme

FORMAT_VERSION = "1"
MAGIC = "%FCS"
END = "%END"

SYNTAGMATIC_NS = "urn:x-faceted:syntagmatic:1"
ET.register_namespace("fx", SYNTAGMATIC_NS)

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}

_SINGLE = ("ID", "NOT", "BRD", "CAP", "SCO", "APP", "CNT", "EDN")
_RECORD_TAGS = ("ID", "NOT", "CMP", "BRD", "CAP", "SCO", "APP", "CMB", "PAR", "EXC", "HIS",
                "CNT", "EDN", "REF", "IDX")
_ARITY = {"ID": 1, "NOT": 1, "CMP": 2, "BRD": 1, "CAP": 1, "SCO": 1, "APP": 1, "CMB": 3,
          "PAR": 5, "EXC": 2, "HIS": 3, "CNT": 1, "EDN": 1, "REF": 1, "IDX": 1}


def _esc(value: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in value)


def _unesc(value: str, line: int, col: int) -> str:
    out, i = [], 0
    while i < len(value):
        ch = value[i]
        if ch == "\\":
            if i + 1 >= len(value) or value[i + 1] not in _UNESCAPES:
                raise FormatSyntaxError("bad escape sequence", line, col + i)
            out.append(_UNESCAPES[value[i + 1]])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _line(tag: str, *fields) -> str:
    return "\t".join([tag, *(_esc(str(f)) for f in fields)])


# -- canonical export -------------------------------------------------------------

def _grammar_lines(g: NotationGrammar) -> List[str]:
    lines = []
    for t in g.tables:
        lines.append(_line("TAB", t.table_id, t.facet_category, t.standalone_prefix,
                           t.attach_indicator, t.symbol_alphabet, t.hierarchy_style,
                           t.ignorable, t.terminator, t.label))
    for r in g.relators:
        lines.append(_line("REL", r.symbol, r.sort_rank, r.kind,
                           "true" if r.commutative else "false", r.broader_rule, r.label))
    for a in g.subject_areas:
        lines.append(_line("CIT", a.area_notation, ",".join(a.citation_order),
                           a.schedule_order, ",".join(a.explicit_order)))
    if g.default_citation_order:
        lines.append(_line("DCO", ",".join(g.default_citation_order)))
    return lines


def _record_lines(rec: ClassRecord) -> List[str]:
    n = rec.notes
    lines = [_line("ID", rec.class_id), _line("NOT", rec.notation)]
    for table_id, term in rec.components or ():
        lines.append(_line("CMP", table_id, term))
    if rec.broader_override is not None:
        lines.append(_line("BRD", rec.broader_override))
    lines.append(_line("CAP", rec.caption))
    if n.scope is not None:
        lines.append(_line("SCO", n.scope))
    if n.application is not None:
        lines.append(_line("APP", n.application))
    for c in n.combination_rules:
        lines.append(_line("CMB", c.host_class, c.relator, c.allowed_partner))
    for p in n.parallel_rules:
        lines.append(_line("PAR", p.host_class, p.source_table, p.strip_prefix, *p.host_affix))
    for notation, caption in n.combination_examples:
        lines.append(_line("EXC", notation, caption))
    for h in n.history:
        lines.append(_line("HIS", h.kind, h.other_class, h.effective_date.isoformat()))
    if n.content_note is not None:
        lines.append(_line("CNT", n.content_note))
    if n.editorial_note is not None:
        lines.append(_line("EDN", n.editorial_note))
    for ref in rec.references:
        lines.append(_line("REF", ref))
    for term in rec.index_terms:
        lines.append(_line("IDX", term))
    return lines


def export_canonical(scheme) -> bytes:
    """Serialize a :class:`Scheme` (or anything with ``snapshot()``) as ``.fcs``."""
    if not isinstance(scheme, Scheme):
        scheme = scheme.snapshot()
    lines = [f"{MAGIC} {FORMAT_VERSION}", *_grammar_lines(scheme.grammar)]
    for rec in scheme.records:
        lines.append("")
        lines.extend(_record_lines(rec))
    lines.append("")
    lines.append(_line(END, len(scheme.records)))
    return ("\n".join(lines) + "\n").encode("utf-8")


# -- canonical import -------------------------------------------------------------

class _Lines:
    def __init__(self, text: str):
        self.lines = text.split("\n")
        if self.lines and self.lines[-1] == "":
            self.lines.pop()
        self.i = 0

    def peek(self):
        return self.lines[self.i] if self.i < len(self.lines) else None

    def next(self):
        line = self.lines[self.i]
        self.i += 1
        return line

    @property
    def lineno(self):
        return self.i + 1


def _fields(raw: str, lineno: int, arity: int) -> Tuple[str, list]:
    parts = raw.split("\t")
    tag = parts[0]
    values = parts[1:]
    if len(values) != arity:
        raise FormatSyntaxError(f"{tag} expects {arity} field(s), got {len(values)}",
                                lineno, len(raw) + 1)
    out, col = [], len(tag) + 2
    for v in values:
        out.append(_unesc(v, lineno, col))
        col += len(v) + 1
    return tag, out


def _split_list(value: str) -> tuple:
    return tuple(v for v in value.split(",") if v)


def import_canonical(data: Union[bytes, str]) -> Tuple[NotationGrammar, List[ClassRecord]]:
    """Parse ``.fcs`` content into a grammar and its records."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatSyntaxError(f"not UTF-8: {exc}") from exc
    src = _Lines(data)
    header = src.peek()
    if header is None:
        raise FormatSyntaxError("empty input", 1, 1)
    if not header.startswith(MAGIC + " "):
        raise FormatSyntaxError(f"missing {MAGIC} header", 1, 1)
    if header != f"{MAGIC} {FORMAT_VERSION}":
        raise VersionMismatch(f"unsupported version {header[len(MAGIC) + 1:]!r}", 1, len(MAGIC) + 2)
    src.next()

    tables, relators, areas, default_order = [], [], [], ()
    while True:
        raw = src.peek()
        if raw is None:
            raise FormatSyntaxError("unexpected end of input in grammar section", src.lineno, 1)
        lineno = src.lineno
        src.next()
        if raw == "":
            break
        tag = raw.split("\t", 1)[0]
        if tag == "TAB":
            _, f = _fields(raw, lineno, 9)
            tables.append(TableDef(f[0], f[1], f[2], f[3], f[4], label=f[8], hierarchy_style=f[5],
                                   ignorable=f[6], terminator=f[7]))
        elif tag == "REL":
            _, f = _fields(raw, lineno, 6)
            if f[3] not in ("true", "false"):
                raise FormatSyntaxError("commutative flag must be true or false", lineno)
            try:
                rank = int(f[1])
            except ValueError:
                raise FormatSyntaxError(f"bad sort rank {f[1]!r}", lineno) from None
            relators.append(RelatorDef(f[0], f[5], rank, f[2], f[3] == "true", f[4]))
        elif tag == "CIT":
            _, f = _fields(raw, lineno, 4)
            areas.append(SubjectAreaDef(f[0], _split_list(f[1]), f[2], _split_list(f[3])))
        elif tag == "DCO":
            _, f = _fields(raw, lineno, 1)
            default_order = _split_list(f[0])
        elif tag == END:
            raise FormatSyntaxError("grammar section not terminated by a blank line", lineno)
        else:
            raise UnknownTag(tag, lineno)
    if not tables:
        raise FormatSyntaxError("grammar declares no tables", src.lineno)
    grammar = NotationGrammar(tables[0], tuple(tables[1:]), tuple(relators), tuple(areas),
                              default_order)

    records = []
    while True:
        raw = src.peek()
        if raw is None:
            raise FormatSyntaxError(f"missing {END} trailer (truncated file?)", src.lineno, 1)
        if raw.startswith(END + "\t") or raw == END:
            lineno = src.lineno
            _, f = _fields(raw, lineno, 1)
            if f[0] != str(len(records)):
                raise FormatSyntaxError(f"trailer count {f[0]} but {len(records)} records read",
                                        lineno, len(END) + 2)
            src.next()
            if src.peek() is not None:
                raise FormatSyntaxError("content after trailer", src.lineno, 1)
            return grammar, records
        if raw == "":
            raise FormatSyntaxError("unexpected blank line", src.lineno, 1)
        records.append(_read_record(src))
        sep = src.peek()
        if sep == "":
            src.next()
        elif sep is None:
            raise FormatSyntaxError(f"missing {END} trailer (truncated file?)", src.lineno, 1)


def _read_record(src: _Lines) -> ClassRecord:
    start = src.lineno
    seen = {}
    multi = {tag: [] for tag in _RECORD_TAGS if tag not in _SINGLE}
    last_rank = -1
    while src.peek() not in (None, ""):
        raw = src.peek()
        lineno = src.lineno
        if raw.startswith(END):
            break
        tag = raw.split("\t", 1)[0]
        if tag not in _ARITY:
            raise UnknownTag(tag, lineno)
        rank = _RECORD_TAGS.index(tag)
        if rank < last_rank:
            raise FormatSyntaxError(f"tag {tag} out of order", lineno, 1)
        last_rank = rank
        _, f = _fields(raw, lineno, _ARITY[tag])
        src.next()
        if tag in _SINGLE:
            if tag in seen:
                raise FormatSyntaxError(f"repeated {tag}", lineno, 1)
            seen[tag] = f[0]
        else:
            multi[tag].append((f, lineno))
    if "ID" not in seen:
        raise FormatSyntaxError("record without ID", start, 1)
    if "NOT" not in seen:
        raise FormatSyntaxError(f"record {seen['ID']!r} without NOT", start, 1)

    history = []
    for f, lineno in multi["HIS"]:
        try:
            history.append(ChangeEntry(f[0], f[1], _dt.date.fromisoformat(f[2])))
        except ValueError as exc:
            raise FormatSyntaxError(f"bad history entry: {exc}", lineno) from None
    notes = NoteSet(
        scope=seen.get("SCO"),
        application=seen.get("APP"),
        combination_rules=tuple(CombinationConstraint(f[0], f[2], f[1]) for f, _ in multi["CMB"]),
        parallel_rules=tuple(ParallelDivisionRule(f[0], f[1], f[2], (f[3], f[4]))
                             for f, _ in multi["PAR"]),
        combination_examples=tuple((f[0], f[1]) for f, _ in multi["EXC"]),
        history=tuple(history),
        content_note=seen.get("CNT"),
        editorial_note=seen.get("EDN"),
    )
    components = tuple((f[0], f[1]) for f, _ in multi["CMP"]) or None
    return ClassRecord(
        class_id=seen["ID"],
        notation=seen["NOT"],
        caption=seen.get("CAP", ""),
        broader_override=seen.get("BRD"),
        notes=notes,
        references=tuple(f[0] for f, _ in multi["REF"]),
        index_terms=tuple(f[0] for f, _ in multi["IDX"]),
        components=components,
    )


def read_scheme(path, **kwargs) -> Scheme:
    grammar, records = import_canonical(Path(path).read_bytes())
    return load_scheme(grammar, records, **kwargs)


def write_scheme(scheme, path) -> None:
    Path(path).write_bytes(export_canonical(scheme))


def fixture_path(name: str) -> Path:
    """Path of a bundled example scheme, e.g. ``fixture_path("facets33")``."""
    return Path(str(resources.files("faceted") / "data" / f"{name}.fcs"))


def schema_path() -> Path:
    return Path(str(resources.files("faceted") / "data" / "concept-scheme.xsd"))


# -- concept-scheme export --------------------------------------------------------

def _fx(tag: str) -> str:
    return f"{{{SYNTAGMATIC_NS}}}{tag}"


def export_concept_scheme(scheme) -> bytes:
    """XML concept scheme with a namespaced extension for composite structure."""
    if not isinstance(scheme, Scheme):
        scheme = scheme.snapshot()
    g = scheme.grammar
    root = ET.Element("conceptScheme")
    for rec in scheme.records:
        concept = ET.SubElement(root, "concept", {"id": rec.class_id, "notation": rec.notation})
        ET.SubElement(concept, "prefLabel").text = rec.caption
        for term in rec.index_terms:
            ET.SubElement(concept, "altLabel").text = term
        parent = scheme.links[rec.class_id].broader
        if parent is not None:
            ET.SubElement(concept, "broader",
                          {"ref": parent, "notation": scheme.record(parent).notation})
        for ref in rec.references:
            target = scheme.find(ref)
            attrs = {"notation": target.notation if target else ref}
            if target is not None:
                attrs = {"ref": target.class_id, **attrs}
            ET.SubElement(concept, "related", attrs)
        parsed = scheme.parsed(rec.class_id)
        if parsed.kind == "simple":
            continue
        comp_el = ET.SubElement(concept, _fx("composite"),
                                {"kind": parsed.kind, "standard": "false"})
        for i, chain in enumerate(parsed.operands):
            if i:
                symbol = parsed.relators[i - 1]
                ET.SubElement(comp_el, _fx("relator"),
                              {"symbol": symbol, "label": g.relator(symbol).label})
            op = ET.SubElement(comp_el, _fx("operand"), {"notation": render_chain(chain, g)})
            for comp in chain:
                ET.SubElement(op, _fx("component"), {
                    "table": comp.table_id, "category": comp.facet_category, "term": comp.term})
    ET.indent(root, space="  ")
    body = ET.tostring(root, encoding="unicode")
    return ('<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n").encode("utf-8")


def parse_concept_scheme(data: bytes) -> ET.Element:
    return ET.fromstring(data)


def concept_broader_edges(data: bytes) -> set:
    """``(child id, parent id)`` pairs read back from an XML export."""
    root = ET.fromstring(data)
    edges = set()
    for concept in root.findall("concept"):
        b = concept.find("broader")
        if b is not None:
            edges.add((concept.get("id"), b.get("ref")))
    return edges


def components_of(notation: str, grammar: NotationGrammar):
    return decompose(notation, grammar)
