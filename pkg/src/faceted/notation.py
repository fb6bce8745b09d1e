"""Tokenizing and decomposing classmarks.

A classmark is read left to right as a flat phase expression: operands
joined by relator symbols, each operand a chain of facet components.  The
first component of an operand is written in its table's standalone form;
later components use the attach indicator::

    Z132A5111          ->  [[Z132, A5111]]
    004.421.2:517.443  ->  [[004.421.2], [517.443]]  joined by ':'
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List

from .errors import DanglingRelator, EmptyChain, EmptyInput, UnknownSymbol
from .grammar import NotationGrammar, TableDef
from .records import COMPLEX, COMPOUND, SIMPLE

INDICATOR = "indicator"
SYMBOL = "symbol"
RELATOR = "relator"
TERMINATOR = "terminator"


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    position: int
    table_id: str = ""

    def __repr__(self):
        if self.kind == INDICATOR:
            return f"ind({self.table_id})"
        if self.kind == RELATOR:
            return f"rel({self.lexeme})"
        return self.lexeme


@dataclass(frozen=True)
class Component:
    """One facet term, ``term`` being its attached form (indicator + symbols)."""

    table_id: str
    term: str
    facet_category: str
    symbols: str

    @classmethod
    def of(cls, table: TableDef, symbols: str) -> "Component":
        return cls(table.table_id, table.attached(symbols), table.facet_category, symbols)


@dataclass(frozen=True)
class ParsedNotation:
    kind: str
    operands: tuple
    relators: tuple = ()

    @property
    def components(self) -> list:
        return [c for chain in self.operands for c in chain]


def tokenize(notation: str, grammar: NotationGrammar) -> List[Token]:
    """Split ``notation`` into indicator, symbol, relator and terminator tokens.

    Longest match is used wherever several lexemes could start at the same
    position.  Indicators of tables cited without a prefix come out as
    zero-width tokens so that every component is announced by one.
    """
    if not notation:
        raise EmptyInput()
    tokens = []
    pos, end = 0, len(notation)
    table = None
    closed = False
    while pos < end:
        if table is None:
            prefix, found = _match_operand_start(notation, pos, grammar)
            if found is not None:
                tokens.append(Token(INDICATOR, prefix, pos, found.table_id))
                pos += len(prefix)
                table, closed = found, False
                continue
            symbol = _match_relator(notation, pos, grammar)
            if symbol is None:
                raise UnknownSymbol(notation, pos)
            tokens.append(Token(RELATOR, symbol, pos))
            pos += len(symbol)
            continue

        ch = notation[pos]
        if not closed and ch in table.symbol_rank:
            tokens.append(Token(SYMBOL, ch, pos, table.table_id))
            pos += 1
            continue
        if table.terminator and not closed:
            if not notation.startswith(table.terminator, pos):
                raise UnknownSymbol(notation, pos)
            tokens.append(Token(TERMINATOR, table.terminator, pos, table.table_id))
            pos += len(table.terminator)
            closed = True
            continue
        for lexeme, kind, payload in grammar.midchain_lexemes:
            if notation.startswith(lexeme, pos):
                break
        else:
            raise UnknownSymbol(notation, pos)
        if kind == "indicator":
            tokens.append(Token(INDICATOR, lexeme, pos, payload.table_id))
            table, closed = payload, False
        else:
            tokens.append(Token(RELATOR, lexeme, pos))
            table = None
        pos += len(lexeme)

    if table is not None and table.terminator and not closed:
        raise UnknownSymbol(notation, end)
    return tokens


def _match_operand_start(notation, pos, grammar):
    for prefix, table in grammar.standalone_lexemes:
        if notation.startswith(prefix, pos):
            return prefix, table
    implicit = grammar.implicit_table
    if implicit is not None and notation[pos] in implicit.symbol_rank:
        return "", implicit
    return "", None


def _match_relator(notation, pos, grammar):
    best = None
    for r in grammar.relators:
        if notation.startswith(r.symbol, pos) and (best is None or len(r.symbol) > len(best)):
            best = r.symbol
    return best


def decompose(notation: str, grammar: NotationGrammar) -> ParsedNotation:
    """Parse ``notation`` into operands, components and relators (written order)."""
    return _decompose(notation, grammar)


@lru_cache(maxsize=65536)
def _decompose(notation, grammar):
    operands, relators = [], []
    chain, current = [], None
    last_relator = 0
    for tok in tokenize(notation, grammar):
        if tok.kind == INDICATOR:
            if current is not None:
                chain.append(_finish(current, grammar))
            current = [tok]
        elif tok.kind == RELATOR:
            if current is not None:
                chain.append(_finish(current, grammar))
                current = None
            if not chain:
                if not operands:
                    raise DanglingRelator(notation, tok.position)
                raise EmptyChain(notation, tok.position)
            operands.append(tuple(chain))
            relators.append(tok.lexeme)
            chain = []
            last_relator = tok.position
        else:
            current.append(tok)
    if current is not None:
        chain.append(_finish(current, grammar))
    if not chain:
        raise DanglingRelator(notation, last_relator)
    operands.append(tuple(chain))
    return _build(tuple(operands), tuple(relators))


def _finish(tokens, grammar):
    table = grammar.table(tokens[0].table_id)
    symbols = "".join(t.lexeme for t in tokens if t.kind == SYMBOL)
    return Component.of(table, symbols)


def _build(operands, relators) -> ParsedNotation:
    if len(operands) > 1:
        kind = COMPLEX
    elif len(operands[0]) > 1:
        kind = COMPOUND
    else:
        kind = SIMPLE
    return ParsedNotation(kind, operands, relators)


def from_components(components, grammar: NotationGrammar) -> ParsedNotation:
    """Build a one-operand parse from explicit ``(table_id, attached term)`` pairs.

    Used for non-expressive notation whose structure is recorded as side data.
    """
    chain = []
    for table_id, term in components:
        table = grammar.table(table_id)
        symbols = term
        if table.attach_indicator and symbols.startswith(table.attach_indicator):
            symbols = symbols[len(table.attach_indicator):]
        if table.terminator and symbols.endswith(table.terminator):
            symbols = symbols[: -len(table.terminator)]
        chain.append(Component.of(table, symbols))
    return _build((tuple(chain),), ())


def render_chain(chain, grammar: NotationGrammar) -> str:
    parts = []
    for i, comp in enumerate(chain):
        table = grammar.table(comp.table_id)
        parts.append(table.standalone(comp.symbols) if i == 0 else table.attached(comp.symbols))
    return "".join(parts)


def render(parsed: ParsedNotation, grammar: NotationGrammar) -> str:
    """Write ``parsed`` back out exactly in the order it holds."""
    out = [render_chain(parsed.operands[0], grammar)]
    for symbol, chain in zip(parsed.relators, parsed.operands[1:]):
        out.append(symbol)
        out.append(render_chain(chain, grammar))
    return "".join(out)


def canonicalize(parsed: ParsedNotation, grammar: NotationGrammar) -> ParsedNotation:
    """Put operands of a commutative expression into collation order.

    Only expressions whose relators are all the same commutative symbol are
    reordered; a mixed expression keeps its written order.
    """
    rels = set(parsed.relators)
    if len(rels) != 1 or not grammar.relator(next(iter(rels))).commutative:
        return parsed
    from .collation import chain_groups

    ordered = sorted(parsed.operands, key=lambda chain: chain_groups(chain, grammar))
    return ParsedNotation(parsed.kind, tuple(ordered), parsed.relators)


def recompose(parsed: ParsedNotation, grammar: NotationGrammar) -> str:
    """Canonical string for ``parsed``."""
    return render(canonicalize(parsed, grammar), grammar)


def canonical(notation: str, grammar: NotationGrammar) -> str:
    return _canonical(notation, grammar)


@lru_cache(maxsize=65536)
def _canonical(notation, grammar):
    return recompose(_decompose(notation, grammar), grammar)


def classify_notation(notation: str, grammar: NotationGrammar) -> str:
    return decompose(notation, grammar).kind
