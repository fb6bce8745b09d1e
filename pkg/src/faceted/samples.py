"""Small example schemes used by the tests, the CLI docs and the data files.

Each builder returns ``(grammar, records)``.  The same schemes ship as
``.fcs`` files under ``faceted/data``; :func:`load` reads those.
"""
from __future__ import annotations

from .exchange import fixture_path, read_scheme
from .grammar import DEFAULT_RELATORS, ENUMERATED, NotationGrammar, SubjectAreaDef, TableDef
from .records import ClassRecord, CombinationConstraint, NoteSet, ParallelDivisionRule

DIGITS = "0123456789"
DECIMAL = "0123456789."


def _recs(rows):
    return [ClassRecord(n, n, c) for n, c in rows]


def places():
    """Threats to the environment with a place table, expressive notation."""
    grammar = NotationGrammar(
        TableDef("Z", "Subject", "Z", "Z", DIGITS, label="Environment"),
        [TableDef("A", "Place", "-A", "A", DIGITS, label="Place")],
    )
    rows = [
        ("-A", "Africa"),
        ("-A5", "Central and eastern Africa"),
        ("-A51", "Uganda"),
        ("-A511", "Northern region"),
        ("-A5111", "Yumbe"),
        ("Z", "Threats to the environment"),
        ("Z1", "Threat of depredation"),
        ("Z13", "Depletion by over exploitation"),
        ("Z132", "Deforestation"),
        ("Z132A5111", "Deforestation in Yumbe"),
    ]
    return grammar, _recs(rows)


def opaque():
    """The same classes under non-expressive notation: hierarchy must be stated."""
    grammar = NotationGrammar(
        TableDef("N", "Subject", "", "", "ABCDEFGHIJKLMNOPQRSTUVWXYZ", hierarchy_style=ENUMERATED))
    rows = [
        ("A", "Africa", None),
        ("AZ", "Central and eastern Africa", "A"),
        ("AZA", "Uganda", "AZ"),
        ("AZB", "Northern region", "AZA"),
        ("AZC", "Yumbe", "AZB"),
        ("Z", "Threats to the environment", None),
        ("ZB", "Threat of depredation", "Z"),
        ("ZC", "Depletion by over exploitation", "ZB"),
        ("ZF", "Deforestation", "ZC"),
    ]
    records = [ClassRecord(n, n, c, broader_override=b) for n, c, b in rows]
    records.append(ClassRecord("ZFAZC", "ZFAZC", "Deforestation in Yumbe",
                               components=(("N", "ZF"), ("N", "AZC"))))
    return grammar, records


FACETS = (("A", "Time"), ("B", "Place"), ("C", "Agent"), ("D", "Product"), ("M", "Thing"))
FACETED_ORDER = ["33A1", "33B1A1", "33D1", "33M1", "33M1B1A1", "33M1C1B1A1", "33M1D1",
                 "33M1D1C1", "33M1D1C1B1A1"]


def facets():
    """Subject area 33 with five facets filed by their indicator letters."""
    aux = [TableDef(letter, cat, "~" + letter, letter, DIGITS, label=cat) for letter, cat in FACETS]
    grammar = NotationGrammar(
        TableDef("main", "Discipline", "", "", DIGITS, label="Main table"),
        aux,
        subject_areas=[SubjectAreaDef("33", ("Thing", "Product", "Agent", "Place", "Time"))],
    )
    rows = [("33", "Subject area 33")] + [(n, "") for n in FACETED_ORDER]
    return grammar, _recs(rows)


PHASE_EXAMPLES = [
    ("590+420", "education in addition to religion"),
    ("420/590", "the field of subjects spanning education to religion"),
    ("590:420", "religion and education in reciprocal relationships"),
    ("590=420", "comparison between religion and education"),
    ("590>>420", "the influence of religion on education"),
    ("420<<590", "religion for educational purposes"),
    ("590-420", "religion as viewed by education"),
    ("590<420", "education as part of religion"),
]


def phases():
    """The relator set with one example of each relation."""
    grammar = NotationGrammar(TableDef("main", "Discipline", "", "", DIGITS))
    rows = [("420", "Education"), ("590", "Religion")] + PHASE_EXAMPLES
    return grammar, _recs(rows)


RANGE_ORDER = ["A1/A2", "A1", "A1:A2", "A2", "A3", "A4"]


def ranges():
    """A range class over its members, and a coordination filed under A1."""
    grammar = NotationGrammar(TableDef("A", "Subject", "A", "A", DIGITS))
    return grammar, _recs([(n, f"Class {n}") for n in RANGE_ORDER])


def _area_grammar():
    return NotationGrammar(
        TableDef("place", "Place", "(", "(", DECIMAL, label="Common auxiliaries of place",
                 ignorable=".", terminator=")"))


def telescoped():
    """Continents telescoped to the level of the general place class."""
    rows = [
        ("(1)", "Place and space in general"),
        ("(3)", "Ancient world"),
        ("(4)", "Europe"),
        ("(5)", "Asia"),
        ("(6)", "Africa"),
        ("(7)", "North and Central America"),
        ("(8)", "South America"),
        ("(9)", "South Pacific and Australia"),
    ]
    records = [ClassRecord(n, n, c, broader_override=None if n == "(1)" else "(1)")
               for n, c in rows]
    return _area_grammar(), records


def false_hierarchy():
    """Galicia filed under Czechoslovakia by notation, corrected to Europe."""
    rows = [
        ("(4)", "Europe"),
        ("(437)", "Czechoslovakia (1918-1992)"),
        ("(437.3)", "Czech Republic"),
        ("(437.4)", "Galicia (Galizien) to 1919"),
        ("(437.5)", "Bukowina to 1919"),
        ("(437.6)", "Slovakia. Slovak Republic. Slovenská Republika"),
        ("(437.7)", "Zakarpatska Ukrajina (1918-1938)"),
    ]
    records = [ClassRecord(n, n, c, broader_override="(4)" if n == "(437.4)" else None)
               for n, c in rows]
    return _area_grammar(), records


def missing_levels():
    """A composite added under a class whose intermediate levels were never made."""
    grammar = NotationGrammar(
        TableDef("main", "Discipline", "", "", DECIMAL, ignorable="."),
        [TableDef("point", "Point of view", "-", "-", DECIMAL, ignorable=".")],
        relators=[r for r in DEFAULT_RELATORS if r.symbol != "-"],
    )
    rows = [
        ("271", "Eastern Church"),
        ("271.2", "Orthodox Church"),
        ("271.2-282.7-247", "The Gospel Book"),
    ]
    return grammar, _recs(rows)


def _udc_grammar():
    return NotationGrammar(
        TableDef("main", "Discipline", "", "", DECIMAL, label="Main tables", ignorable="."))


def algorithms():
    """A class with its full set of notes, examples and references."""
    notes = NoteSet(
        application="For mathematical theory of algorithms in general use 510.5",
        combination_rules=(CombinationConstraint("004.421.2", "51", ":"),),
        combination_examples=(
            ("004.421.2:517.443", "Fast Fourier transform"),
            ("004.421.2:517.535", "Algorithms for rational expression"),
            ("004.421.2:519.17", "Graph algorithms"),
        ),
        content_note="Specify mathematical process by colon combination with class 51",
    )
    records = [
        ClassRecord("004.421.2", "004.421.2", "Basic mathematical algorithms", notes=notes,
                    references=("519.16", "519.178"),
                    index_terms=("algorithms", "mathematical algorithms")),
        ClassRecord("004.421.2:517.443", "004.421.2:517.443", "Fast Fourier transform",
                    index_terms=("FFT algorithms",)),
        ClassRecord("004.421.2:517.535", "004.421.2:517.535", "Algorithms for rational expression"),
        ClassRecord("004.421.2:519.17", "004.421.2:519.17", "Graph algorithms"),
        ClassRecord("510.5", "510.5", "Algorithmic theory. Computability"),
        ClassRecord("51", "51", "Mathematics"),
        ClassRecord("517.44", "517.44", "Integral transforms"),
        ClassRecord("517.443", "517.443", "Fourier transforms"),
        ClassRecord("517.535", "517.535", "Rational expressions"),
        ClassRecord("519.16", "519.16", "Combinatorial optimization"),
        ClassRecord("519.17", "519.17", "Graph theory"),
        ClassRecord("519.178", "519.178", "Algorithmic graph theory"),
    ]
    return _udc_grammar(), records


def parallel():
    """Language subdivisions reused under literature and ethnic grouping."""
    grammar = NotationGrammar(
        TableDef("main", "Discipline", "", "", DECIMAL, ignorable="."),
        [TableDef("lang", "Language", "=", "=", DECIMAL, ignorable="."),
         TableDef("ethnic", "Ethnic grouping", "(=", "(=", DECIMAL, ignorable=".", terminator=")")],
        relators=[r for r in DEFAULT_RELATORS if r.symbol != "="],
    )
    records = [
        ClassRecord("821", "821", "Literature of individual languages",
                    notes=NoteSet(parallel_rules=(
                        ParallelDivisionRule("821", "lang", "=", ("821.", "")),))),
        ClassRecord("821.111", "821.111", "English literature"),
        ClassRecord("=1", "=1", "Indo-European languages"),
        ClassRecord("=111", "=111", "English language"),
        ClassRecord("(=1)", "(=1)", "Indo-European peoples",
                    notes=NoteSet(parallel_rules=(
                        ParallelDivisionRule("(=1)", "lang", "=", ("(=", ")")),))),
        ClassRecord("(=111)", "(=111)", "English speaking people"),
    ]
    return grammar, records


BUILDERS = {
    "places": places,
    "opaque": opaque,
    "facets": facets,
    "phases": phases,
    "ranges": ranges,
    "telescoped": telescoped,
    "false_hierarchy": false_hierarchy,
    "missing_levels": missing_levels,
    "algorithms": algorithms,
    "parallel": parallel,
}


def build(name: str):
    return BUILDERS[name]()


def load(name: str, **kwargs):
    """The shipped scheme ``name`` read from its ``.fcs`` file."""
    return read_scheme(fixture_path(name), **kwargs)
