import random

import pytest
from hypothesis import given, settings, strategies as st

import gen
from faceted import samples
from faceted.collation import Ordering, SortKey, compare, sort_key, sort_schedule
from faceted.notation import canonical

FACETS = samples.build("facets")[0]
RANGES = samples.build("ranges")[0]
PHASES = samples.build("phases")[0]
UDC = samples.build("algorithms")[0]


def test_faceted_listing_order():
    shuffled = list(samples.FACETED_ORDER)
    random.Random(3).shuffle(shuffled)
    assert sort_schedule(shuffled, FACETS) == samples.FACETED_ORDER


def test_range_listing_order():
    shuffled = list(reversed(samples.RANGE_ORDER))
    assert sort_schedule(shuffled, RANGES) == samples.RANGE_ORDER


@pytest.mark.parametrize("a,b,grammar", [
    ("33M1", "33M1B1A1", FACETS),
    ("33B1A1", "33D1", FACETS),
    ("A1/A2", "A1", RANGES),
    ("A1:A2", "A2", RANGES),
    ("33", "33A1", FACETS),
    ("590", "590>>420", PHASES),
    ("590+420", "590", PHASES),
])
def test_before(a, b, grammar):
    assert compare(a, b, grammar) is Ordering.BEFORE
    assert compare(b, a, grammar) is Ordering.AFTER


def test_equal_and_commutative_spellings():
    assert compare("33M1", "33M1", FACETS) is Ordering.EQUAL
    assert compare("590+420", "420+590", PHASES) is Ordering.EQUAL


def test_compound_files_before_phase_expression_on_same_base():
    grammar = samples.build("places")[0]
    assert compare("Z1A5", "Z1:Z2", grammar) is Ordering.BEFORE
    assert compare("Z1:Z2", "Z2", grammar) is Ordering.BEFORE


def test_phase_ties_break_by_relator_rank():
    directed = ["590<420", "590-420", "590<<420", "590>>420", "590=420"]
    assert sort_schedule(directed, PHASES) == ["590=420", "590>>420", "590<<420", "590-420",
                                               "590<420"]
    # commutative spellings file under their canonical first operand, 420
    assert sort_schedule(["590=420", "590:420", "590+420"], PHASES) == \
        ["590+420", "590:420", "590=420"]


def test_ignorable_punctuation_has_no_primary_weight():
    assert compare("004.421", "004.5", UDC) is Ordering.BEFORE
    assert compare("0044", "004.5", UDC) is Ordering.BEFORE
    # equal primary weight, punctuation breaks the tie deterministically
    assert compare("004.4", "0044", UDC) is not Ordering.EQUAL


def test_sort_key_prefix():
    assert sort_key("33", FACETS).is_prefix_of(sort_key("33A1", FACETS))
    assert not sort_key("33A1", FACETS).is_prefix_of(sort_key("33", FACETS))


def test_keys_of_listing_strictly_increase():
    keys = [sort_key(n, FACETS) for n in samples.FACETED_ORDER]
    assert all(a < b for a, b in zip(keys, keys[1:]))


def test_sort_keeps_duplicates_adjacent():
    assert sort_schedule(["33D1", "33A1", "33D1"], FACETS) == ["33A1", "33D1", "33D1"]
    assert sort_schedule(["33"], FACETS) == ["33"]


@settings(max_examples=300, deadline=None)
@given(gen.notations(UDC), gen.notations(UDC))
def test_byte_encoding_preserves_order(a, b):
    ka, kb = sort_key(a, UDC), sort_key(b, UDC)
    assert (ka < kb) == (ka.to_bytes() < kb.to_bytes())
    assert SortKey.from_bytes(ka.to_bytes()) == ka


@settings(max_examples=300, deadline=None)
@given(gen.notations(FACETS), gen.notations(FACETS))
def test_key_equality_iff_canonical_equality(a, b):
    assert (sort_key(a, FACETS) == sort_key(b, FACETS)) == \
        (canonical(a, FACETS) == canonical(b, FACETS))


@settings(max_examples=200, deadline=None)
@given(st.lists(gen.notations(PHASES), max_size=12))
def test_sort_is_idempotent_permutation(items):
    once = sort_schedule(items, PHASES)
    assert sorted(once) == sorted(items)
    assert sort_schedule(once, PHASES) == once
    by_compare = sorted(items, key=lambda n: (sort_key(n, PHASES), n))
    assert by_compare == once


def test_malformed_key_bytes():
    with pytest.raises(ValueError):
        SortKey.from_bytes(b"\x01\x00")
