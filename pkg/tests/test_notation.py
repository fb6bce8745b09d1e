import pytest
from hypothesis import given, settings

import gen
from faceted import samples
from faceted.errors import DanglingRelator, EmptyChain, EmptyInput, UnknownSymbol
from faceted.notation import (canonical, canonicalize, classify_notation, decompose,
                              from_components, recompose, render, tokenize)

PLACES = samples.build("places")[0]
PHASES = samples.build("phases")[0]
FACETS = samples.build("facets")[0]
UDC = samples.build("algorithms")[0]
AREA = samples.build("false_hierarchy")[0]
PARALLEL = samples.build("parallel")[0]


def terms(parsed):
    return [[c.term for c in chain] for chain in parsed.operands]


def test_tokenize_compound():
    toks = tokenize("Z132A5111", PLACES)
    assert [repr(t) for t in toks] == ["ind(Z)", "1", "3", "2", "ind(A)", "5", "1", "1", "1"]


def test_tokenize_phase_expression_with_zero_width_indicators():
    toks = tokenize("590>>420", PHASES)
    assert [repr(t) for t in toks] == ["ind(main)", "5", "9", "0", "rel(>>)",
                                       "ind(main)", "4", "2", "0"]
    assert [t.position for t in toks] == [0, 0, 1, 2, 3, 5, 5, 6, 7]


def test_tokenize_unknown_symbol():
    with pytest.raises(UnknownSymbol) as exc:
        tokenize("Q9", PLACES)
    assert exc.value.position == 0


def test_tokenize_empty():
    with pytest.raises(EmptyInput):
        tokenize("", PLACES)


def test_tokenize_terminated_component():
    toks = tokenize("(437.4)", AREA)
    assert "".join(t.lexeme for t in toks) == "(437.4)"
    assert toks[-1].kind == "terminator"
    with pytest.raises(UnknownSymbol):
        tokenize("(437", AREA)


def test_decompose_colon_combination():
    p = decompose("004.421.2:517.443", UDC)
    assert p.kind == "complex"
    assert terms(p) == [["004.421.2"], ["517.443"]]
    assert p.relators == (":",)


def test_decompose_compound_with_table_attribution():
    p = decompose("Z132A5111", PLACES)
    assert p.kind == "compound"
    assert [(c.table_id, c.term, c.facet_category) for c in p.operands[0]] == [
        ("Z", "Z132", "Subject"), ("A", "A5111", "Place")]


def test_decompose_simple_and_phase():
    assert decompose("33", FACETS).kind == "simple"
    p = decompose("590>>420", PHASES)
    assert terms(p) == [["590"], ["420"]] and p.relators == (">>",)
    p = decompose("420<<590", PHASES)
    assert terms(p) == [["420"], ["590"]] and p.relators == ("<<",)


def test_longest_match_between_relators():
    assert decompose("590<420", PHASES).relators == ("<",)
    assert decompose("590<<420", PHASES).relators == ("<<",)


def test_standalone_aux_notation():
    p = decompose("-A5111", PLACES)
    assert p.kind == "simple" and p.operands[0][0].table_id == "A"
    p = decompose("(=111)", PARALLEL)
    assert p.operands[0][0].table_id == "ethnic"
    assert decompose("=111", PARALLEL).operands[0][0].table_id == "lang"


@pytest.mark.parametrize("bad,exc,pos", [
    (":420", DanglingRelator, 0),
    ("420:", DanglingRelator, 3),
    ("420:+590", EmptyChain, 4),
])
def test_decompose_errors(bad, exc, pos):
    with pytest.raises(exc) as info:
        decompose(bad, PHASES)
    assert info.value.position == pos


@pytest.mark.parametrize("notation,kind", [("33A1", "compound"), ("33", "simple"),
                                           ("590=420", "complex")])
def test_classify(notation, kind):
    grammar = PHASES if "=" in notation else FACETS
    assert classify_notation(notation, grammar) == kind


def test_recompose_round_trip_examples():
    assert recompose(decompose("Z132A5111", PLACES), PLACES) == "Z132A5111"
    assert recompose(decompose("004.421.2:517.443", UDC), UDC) == "004.421.2:517.443"


def test_commutative_relators_canonicalize():
    assert canonical("590+420", PHASES) == "420+590"
    assert canonical("590:420", PHASES) == "420:590"
    assert canonical("590>>420", PHASES) == "590>>420"
    assert canonical("420<<590", PHASES) == "420<<590"


def test_mixed_relators_keep_written_order():
    assert canonical("590+420>>100", PHASES) == "590+420>>100"


def test_from_components_for_opaque_notation():
    grammar = samples.build("opaque")[0]
    p = from_components([("N", "ZF"), ("N", "AZC")], grammar)
    assert p.kind == "compound"
    assert render(p, grammar) == "ZFAZC"


@settings(max_examples=300, deadline=None)
@given(gen.parses(FACETS))
def test_decompose_inverts_render(parsed):
    assert decompose(render(parsed, FACETS), FACETS) == parsed


@settings(max_examples=300, deadline=None)
@given(gen.notations(PARALLEL))
def test_tokens_partition_input(notation):
    toks = tokenize(notation, PARALLEL)
    assert "".join(t.lexeme for t in toks) == notation
    positions = [t.position for t in toks]
    assert positions == sorted(positions)


@settings(max_examples=300, deadline=None)
@given(gen.parses(PHASES))
def test_recompose_is_canonical(parsed):
    text = recompose(parsed, PHASES)
    again = decompose(text, PHASES)
    assert again == canonicalize(parsed, PHASES)
    assert recompose(again, PHASES) == text
    assert len(again.relators) == len(again.operands) - 1
    assert all(again.operands)
