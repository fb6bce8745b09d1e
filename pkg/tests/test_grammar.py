import pytest

from faceted.errors import AmbiguousGrammar
from faceted.grammar import (DEFAULT_RELATORS, EXPLICIT, NotationGrammar, RelatorDef,
                             SubjectAreaDef, TableDef)
from faceted import samples

DIGITS = "0123456789"


def main(**kw):
    args = dict(table_id="main", facet_category="Discipline", standalone_prefix="",
                attach_indicator="", symbol_alphabet=DIGITS)
    args.update(kw)
    return TableDef(**args)


def test_default_relators_follow_printed_row_order():
    assert [r.symbol for r in sorted(DEFAULT_RELATORS, key=lambda r: r.sort_rank)] == \
        ["+", "/", ":", "=", ">>", "<<", "-", "<"]
    assert sum(r.kind == "range" for r in DEFAULT_RELATORS) == 1
    assert {r.symbol for r in DEFAULT_RELATORS if r.commutative} == {"+", ":"}


def test_table_forms():
    t = TableDef("A", "Place", "-A", "A", DIGITS)
    assert t.standalone("5111") == "-A5111"
    assert t.attached("5111") == "A5111"
    assert t.symbol_rank["0"] == 0 and t.symbol_rank["9"] == 9


def test_all_samples_are_valid():
    for name in samples.BUILDERS:
        grammar, _ = samples.build(name)
        grammar.check()


def test_duplicate_table_ids_rejected():
    with pytest.raises(AmbiguousGrammar):
        NotationGrammar(main(), [TableDef("main", "X", "~X", "X", DIGITS)])


def test_attach_indicator_colliding_with_relator_rejected():
    with pytest.raises(AmbiguousGrammar):
        NotationGrammar(main(), [TableDef("lang", "Language", "=", "=", DIGITS)])


def test_attach_prefix_of_another_attach():
    # "A" opening "AB" is harmless while "B" cannot follow "A" as a symbol
    aux = [TableDef("A", "Time", "~A", "A", DIGITS), TableDef("AB", "Space", "~AB", "AB", DIGITS)]
    NotationGrammar(main(), aux)
    aux[0] = TableDef("A", "Time", "~A", "A", DIGITS + "B")
    with pytest.raises(AmbiguousGrammar):
        NotationGrammar(main(), aux)


def test_relator_prefix_allowed_when_follower_disambiguates():
    # "<" and "<<" coexist because no operand starts with "<"
    NotationGrammar(main())


def test_relator_prefix_rejected_when_ambiguous():
    rels = [RelatorDef("<", "lt", 0), RelatorDef("<1", "odd", 1)]
    with pytest.raises(AmbiguousGrammar):
        NotationGrammar(main(), relators=rels)


def test_symbol_clashing_with_relator_rejected():
    with pytest.raises(AmbiguousGrammar):
        NotationGrammar(main(symbol_alphabet="0123456789+"))


def test_two_range_relators_rejected():
    rels = list(DEFAULT_RELATORS) + [RelatorDef("..", "Span", 9, kind="range")]
    with pytest.raises(AmbiguousGrammar):
        NotationGrammar(main(), relators=rels)


def test_duplicate_alphabet_symbol_rejected():
    with pytest.raises(AmbiguousGrammar):
        NotationGrammar(main(symbol_alphabet="0012"))


def test_aux_table_needs_attach_indicator():
    with pytest.raises(AmbiguousGrammar):
        NotationGrammar(main(), [TableDef("A", "Time", "~A", "", DIGITS)])


def test_citation_order_categories_must_exist():
    with pytest.raises(AmbiguousGrammar):
        NotationGrammar(main(), subject_areas=[SubjectAreaDef("33", ("Nowhere",))])


def test_citation_order_must_not_repeat():
    aux = [TableDef("A", "Time", "~A", "A", DIGITS)]
    with pytest.raises(AmbiguousGrammar):
        NotationGrammar(main(), aux, subject_areas=[SubjectAreaDef("33", ("Time", "Time"))])


def test_citation_order_lookup_by_area_prefix():
    grammar, _ = samples.build("facets")
    assert grammar.citation_order_for("33") == ("Thing", "Product", "Agent", "Place", "Time")
    assert grammar.citation_order_for("331") == grammar.citation_order_for("33")
    # outside any area: the reversed filing order of the indicators
    assert grammar.citation_order_for("5") == ("Thing", "Product", "Agent", "Place", "Time")


def test_schedule_order_is_reverse_of_citation():
    area = SubjectAreaDef("33", ("Thing", "Product", "Agent", "Place", "Time"))
    assert area.facets_in_schedule_order() == ("Time", "Place", "Agent", "Product", "Thing")
    explicit = SubjectAreaDef("33", ("Thing", "Time"), EXPLICIT, ("Thing", "Time"))
    assert explicit.facets_in_schedule_order() == ("Thing", "Time")


def test_table_rank_follows_indicator_collation():
    grammar, _ = samples.build("facets")
    ranked = sorted(grammar.auxiliary_tables, key=lambda t: grammar.table_rank[t.table_id])
    assert [t.attach_indicator for t in ranked] == ["A", "B", "C", "D", "M"]
