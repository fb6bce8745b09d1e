"""Mechanical filing order of classmarks.

Each classmark maps to a :class:`SortKey`, a sequence of integer weight
groups compared lexicographically.  A group is one of::

    (RANGE_MARK,)                      range relator: files ahead of its first operand
    (END_MARK,)                        end of the classmark
    (COMPONENT, table_rank, ranks...)  one facet component
    (PHASE_MARK, sort_rank)            a phase relator
    (TIE, ...)                         full symbol ranks, ignorables included

The mark values make a range ``X/Y`` file before ``X``, ``X`` before its
compounds, compounds before ``X`` in phase relation with anything, and all of
them before ``X``'s next sibling.  A shorter key that is a prefix of a longer
one sorts first.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List

from .grammar import RANGE, NotationGrammar
from .notation import ParsedNotation, canonicalize, decompose

RANGE_MARK = 0
END_MARK = 1
COMPONENT = 2
PHASE_MARK = 3
TIE = 4

_INT = b"\x01"
_GROUP_END = b"\x00"


class Ordering(enum.IntEnum):
    BEFORE = -1
    EQUAL = 0
    AFTER = 1


@dataclass(frozen=True, order=True)
class SortKey:
    groups: tuple

    def to_bytes(self) -> bytes:
        """Byte string whose bytewise order equals the key order.

        Every integer is written as ``0x01`` + 4 bytes big-endian and every
        group is closed by ``0x00``, so a group that runs out first compares
        low, exactly like a shorter tuple.
        """
        out = bytearray()
        for group in self.groups:
            for value in group:
                out += _INT
                out += value.to_bytes(4, "big")
            out += _GROUP_END
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "SortKey":
        groups, current, i = [], [], 0
        while i < len(data):
            marker = data[i:i + 1]
            if marker == _GROUP_END:
                groups.append(tuple(current))
                current = []
                i += 1
            elif marker == _INT and i + 5 <= len(data):
                current.append(int.from_bytes(data[i + 1:i + 5], "big"))
                i += 5
            else:
                raise ValueError(f"malformed sort key at byte {i}")
        if current:
            raise ValueError("sort key ends inside a group")
        return cls(tuple(groups))

    def is_prefix_of(self, other: "SortKey") -> bool:
        """True when this key's primary groups open ``other``'s."""
        mine = self._primary()
        return len(mine) < len(other._primary()) and other._primary()[:len(mine)] == mine

    def _primary(self):
        return tuple(g for g in self.groups if g[0] not in (END_MARK, TIE))


def _grammar(scheme) -> NotationGrammar:
    return scheme if isinstance(scheme, NotationGrammar) else scheme.grammar


def _component_group(comp, grammar):
    table = grammar.table(comp.table_id)
    ranks = [table.symbol_rank[s] for s in comp.symbols if s not in table.ignorable]
    return (COMPONENT, grammar.table_rank[comp.table_id], *ranks)


def _tie_group(parsed, grammar):
    out = [TIE]
    for comp in parsed.components:
        table = grammar.table(comp.table_id)
        out.append(len(comp.symbols))
        out.extend(table.symbol_rank[s] for s in comp.symbols)
    return tuple(out)


def chain_groups(chain, grammar: NotationGrammar) -> tuple:
    """Full key groups of a single operand written on its own."""
    parsed = ParsedNotation("simple", (tuple(chain),), ())
    return key_of_parsed(parsed, grammar).groups


def key_of_parsed(parsed: ParsedNotation, grammar: NotationGrammar) -> SortKey:
    parsed = canonicalize(parsed, grammar)
    groups = [_component_group(c, grammar) for c in parsed.operands[0]]
    for symbol, chain in zip(parsed.relators, parsed.operands[1:]):
        relator = grammar.relator(symbol)
        groups.append((RANGE_MARK,) if relator.kind == RANGE else (PHASE_MARK, relator.sort_rank))
        groups.extend(_component_group(c, grammar) for c in chain)
    groups.append((END_MARK,))
    groups.append(_tie_group(parsed, grammar))
    return SortKey(tuple(groups))


@lru_cache(maxsize=65536)
def _key(notation, grammar):
    return key_of_parsed(decompose(notation, grammar), grammar)


def sort_key(notation: str, scheme) -> SortKey:
    return _key(notation, _grammar(scheme))


def compare(a: str, b: str, scheme) -> Ordering:
    grammar = _grammar(scheme)
    ka, kb = _key(a, grammar), _key(b, grammar)
    if ka < kb:
        return Ordering.BEFORE
    if ka > kb:
        return Ordering.AFTER
    return Ordering.EQUAL


def sort_schedule(notations: Iterable[str], scheme) -> List[str]:
    """Notations in filing order; equal keys fall back to the raw string."""
    grammar = _grammar(scheme)
    return sorted(notations, key=lambda n: (_key(n, grammar), n))
