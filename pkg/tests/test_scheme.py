import dataclasses
import random

import pytest

from faceted import samples
from faceted.errors import (AmbiguousGrammar, DanglingReference, DuplicateClassId,
                            DuplicateNotation, InvalidRecord, UnparsableNotation)
from faceted.grammar import NotationGrammar, TableDef
from faceted.records import ChangeEntry, ClassRecord, NoteSet, generate_class_id
from faceted.scheme import load_scheme, validate_scheme


def test_load_places():
    s = samples.load("places")
    assert len(s) == 10
    assert len(s.roots) == 2
    rec = s.lookup("Z132A5111")
    assert rec.notation_kind == "compound"
    assert rec.source_tables == ("Z", "A")


def test_empty_scheme():
    grammar, _ = samples.build("places")
    s = load_scheme(grammar, [])
    assert len(s) == 0 and s.roots == ()
    assert validate_scheme(s).clean


def test_duplicate_class_id():
    grammar, _ = samples.build("ranges")
    with pytest.raises(DuplicateClassId):
        load_scheme(grammar, [ClassRecord("C1", "A1"), ClassRecord("C1", "A2")])


def test_duplicate_notation_spellings():
    grammar, _ = samples.build("phases")
    with pytest.raises(DuplicateNotation):
        load_scheme(grammar, [ClassRecord("a", "590+420"), ClassRecord("b", "420+590")])


def test_unparsable_notation():
    grammar, _ = samples.build("ranges")
    with pytest.raises(UnparsableNotation) as exc:
        load_scheme(grammar, [ClassRecord("bad", "B1")])
    assert exc.value.class_id == "bad"


def test_dangling_override():
    grammar, _ = samples.build("ranges")
    with pytest.raises(DanglingReference):
        load_scheme(grammar, [ClassRecord("a", "A1", broader_override="A9")])


def test_unparsable_combination_example():
    grammar, _ = samples.build("ranges")
    notes = NoteSet(combination_examples=(("A1:", "broken"),))
    with pytest.raises(UnparsableNotation):
        load_scheme(grammar, [ClassRecord("a", "A1", notes=notes)])


def test_constraint_with_unknown_relator():
    from faceted.records import CombinationConstraint
    grammar, _ = samples.build("ranges")
    notes = NoteSet(combination_rules=(CombinationConstraint("A1", "A", "%"),))
    with pytest.raises(InvalidRecord):
        load_scheme(grammar, [ClassRecord("a", "A1", notes=notes)])


def test_ambiguous_grammar_at_construction():
    with pytest.raises(AmbiguousGrammar):
        NotationGrammar(TableDef("m", "X", "", "", "01:"))


def test_generated_ids():
    grammar, _ = samples.build("phases")
    s = load_scheme(grammar, [ClassRecord("", "590+420")])
    assert s.records[0].class_id == generate_class_id("420+590")


def test_explicit_components_must_spell_notation():
    grammar, _ = samples.build("opaque")
    with pytest.raises(InvalidRecord):
        load_scheme(grammar, [ClassRecord("x", "ZFAZC", components=(("N", "ZF"), ("N", "AZ")))])


def test_load_is_order_independent():
    grammar, records = samples.build("algorithms")
    base = load_scheme(grammar, records)
    for seed in range(5):
        shuffled = list(records)
        random.Random(seed).shuffle(shuffled)
        other = load_scheme(grammar, shuffled)
        assert other == base
        assert other.tree == base.tree


def test_lookup_by_any_spelling():
    s = samples.load("phases")
    assert s.lookup("420+590").notation == "590+420"
    assert s.find("nonsense!") is None


def test_search_whole_words_in_collation_order():
    s = samples.load("algorithms")
    hits = [r.notation for r in s.search("algorithms")]
    assert hits == ["004.421.2", "004.421.2:517.443", "004.421.2:517.535", "004.421.2:519.17"]
    assert [r.notation for r in s.search("FOURIER")] == ["004.421.2:517.443", "517.443"]
    assert s.search("algorithm") == []
    assert s.search("zzzz-no-such-term") == []
    assert [r.notation for r in s.search("graph algorithms")] == ["004.421.2:519.17"]


def test_validate_missing_levels_lists_each_level():
    report = validate_scheme(samples.load("missing_levels"))
    found = report.of_kind("missing_level")
    assert len(found) == 3
    assert {f.detail for f in found} == {"271.2-282.7-24", "271.2-282.7-2", "271.2-282.7"}


def test_validate_clean_scheme():
    assert validate_scheme(samples.load("ranges")).clean
    assert validate_scheme(samples.load("phases")).format() == ""


def test_validate_dangling_see_also():
    grammar, records = samples.build("algorithms")
    records = [r for r in records if r.notation != "519.178"]
    report = validate_scheme(load_scheme(grammar, records))
    # oracle: linear scan of all references
    scheme = load_scheme(grammar, records)
    expected = {(r.class_id, ref) for r in records for ref in r.references if ref not in scheme}
    assert {(f.class_id, f.detail) for f in report.of_kind("dangling_reference")} == expected
    assert expected == {("004.421.2", "519.178")}


def test_validate_combination_examples_against_constraints():
    grammar, records = samples.build("algorithms")
    host = next(r for r in records if r.notation == "004.421.2")
    bad = dataclasses.replace(host, notes=dataclasses.replace(
        host.notes, combination_examples=host.notes.combination_examples + (("004.421.2:821", "x"),)))
    records = [bad if r is host else r for r in records]
    report = validate_scheme(load_scheme(grammar, records))
    assert len(report.of_kind("combination_violation")) == 1


def test_validate_history_consistency():
    grammar, _ = samples.build("ranges")
    records = [
        ClassRecord("a", "A1", notes=NoteSet(history=(ChangeEntry("replaced_by", "b", "2020-01-01"),))),
        ClassRecord("b", "A2", notes=NoteSet(history=(ChangeEntry("replaced_by", "a", "2020-01-02"),))),
        ClassRecord("c", "A3", notes=NoteSet(history=(ChangeEntry("replaces", "zz", "2020-01-02"),))),
    ]
    report = validate_scheme(load_scheme(grammar, records))
    assert report.of_kind("history_cycle")
    assert len(report.of_kind("asymmetric_history")) == 2
    assert report.of_kind("dangling_history")[0].class_id == "c"


def test_materialize_missing_levels():
    s = samples.load("missing_levels", materialize_missing_levels=True)
    for level in ("271.2-282.7-24", "271.2-282.7-2", "271.2-282.7"):
        assert level in s
    placeholder = s.lookup("271.2-282.7")
    assert placeholder.notes.editorial_note
    lk = s.links[s.lookup("271.2-282.7-247").class_id]
    assert s.record(lk.broader).notation == "271.2-282.7-24" and not lk.diagnostics
    assert validate_scheme(s).clean


def test_records_are_immutable():
    s = samples.load("places")
    with pytest.raises(dataclasses.FrozenInstanceError):
        s.records[0].caption = "x"
