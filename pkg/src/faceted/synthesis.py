"""Building classmarks: facet synthesis, phase combination, parallel division."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

from .errors import (ConstraintViolation, PrefixMismatch, SynthesisError,
                     UnknownCategory, UnknownRelator)
from .grammar import NotationGrammar
from .notation import (Component, ParsedNotation, decompose, recompose, render_chain)
from .records import COMPLEX, CombinationConstraint, ParallelDivisionRule


@dataclass(frozen=True)
class FacetSelection:
    base: str
    picks: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CitationViolation:
    """A facet cited out of order.

    ``position`` is the component's index in the classmark (0 = the base),
    ``found_category`` its facet and ``expected_category`` the facet cited
    before it that should have come after it.
    """

    position: int
    expected_category: str
    found_category: str


def _grammar(scheme) -> NotationGrammar:
    return scheme if isinstance(scheme, NotationGrammar) else scheme.grammar


def _constraints(scheme) -> dict:
    return getattr(scheme, "constraints", {})


def _pick_component(category: str, term: str, grammar: NotationGrammar) -> Component:
    for table in grammar.tables_for_category(category):
        for prefix in (table.attach_indicator, table.standalone_prefix):
            if not prefix or not term.startswith(prefix):
                continue
            symbols = term[len(prefix):]
            if table.terminator:
                if not symbols.endswith(table.terminator):
                    continue
                symbols = symbols[: -len(table.terminator)]
            if all(ch in table.symbol_rank for ch in symbols):
                return Component.of(table, symbols)
    raise SynthesisError(f"{term!r} is not a term of facet {category!r}")


def synthesize(selection: FacetSelection, scheme) -> str:
    """Attach the selected facet terms to the base in citation order."""
    grammar = _grammar(scheme)
    base = decompose(selection.base, grammar)
    if base.kind == COMPLEX:
        raise SynthesisError(f"base {selection.base!r} is a phase expression")
    chain = list(base.operands[0])
    head = render_chain(chain[:1], grammar)
    order = grammar.citation_order_for(head)

    present = {c.facet_category for c in chain[1:]}
    picked = []
    for category, term in selection.picks.items():
        if category not in order:
            raise UnknownCategory(f"{category!r} is not cited in area {head!r}")
        if category in present:
            raise SynthesisError(f"facet {category!r} already present in {selection.base!r}")
        picked.append(_pick_component(category, term, grammar))

    for comp in picked:
        problem = _attachment_problem(chain, comp, scheme)
        if problem:
            raise ConstraintViolation(problem)

    full = chain[:1] + sorted(chain[1:] + picked, key=lambda c: order.index(c.facet_category)
                              if c.facet_category in order else -1)
    result = render_chain(full, grammar)
    check = decompose(result, grammar)
    if list(check.operands[0]) != full:
        raise SynthesisError(f"{result!r} does not decompose back into the selection")
    return recompose(check, grammar)


def validate_citation_order(notation: str, scheme) -> List[CitationViolation]:
    grammar = _grammar(scheme)
    parsed = decompose(notation, grammar)
    violations = []
    position = 0
    for chain in parsed.operands:
        order = grammar.citation_order_for(render_chain(chain[:1], grammar))
        latest, latest_cat = -1, None
        for i, comp in enumerate(chain):
            pos = position + i
            if i == 0:
                continue
            cat = comp.facet_category
            if cat not in order:
                violations.append(CitationViolation(pos, "", cat))
                continue
            idx = order.index(cat)
            if idx <= latest:
                violations.append(CitationViolation(pos, latest_cat, cat))
            else:
                latest, latest_cat = idx, cat
        position += len(chain)
    return violations


def _partner_matches(rule: CombinationConstraint, head_table: str, text: str) -> bool:
    if rule.allowed_partner == head_table:
        return True
    return text.startswith(rule.allowed_partner)


def _attachment_problem(chain, comp, scheme):
    grammar = _grammar(scheme)
    host = render_chain(chain, grammar)
    rules = [r for r in _constraints(scheme).get(recompose(decompose(host, grammar), grammar), ())
             if not r.relator]
    if rules and not any(_partner_matches(r, comp.table_id, comp.term) for r in rules):
        return f"{comp.term!r} may not be attached to {host!r}"
    return None


def constraint_violations(parsed: ParsedNotation, scheme) -> List[str]:
    """Combination rules broken anywhere in ``parsed``."""
    grammar = _grammar(scheme)
    rules = _constraints(scheme)
    problems = []
    for chain in parsed.operands:
        for i in range(1, len(chain)):
            problem = _attachment_problem(chain[:i], chain[i], scheme)
            if problem:
                problems.append(problem)
    for i, symbol in enumerate(parsed.relators):
        left, right = parsed.operands[i], parsed.operands[i + 1]
        pairs = [(left, right)]
        if grammar.relator(symbol).commutative:
            pairs.append((right, left))
        for host, partner in pairs:
            host_text = render_chain(host, grammar)
            partner_text = render_chain(partner, grammar)
            applicable = [r for r in rules.get(host_text, ()) if r.relator == symbol]
            if applicable and not any(_partner_matches(r, partner[0].table_id, partner_text)
                                      for r in applicable):
                problems.append(f"{partner_text!r} may not be combined with {host_text!r} by {symbol!r}")
    return problems


def combine(left: str, relator: str, right: str, scheme) -> str:
    grammar = _grammar(scheme)
    if not grammar.has_relator(relator):
        raise UnknownRelator(relator)
    a, b = decompose(left, grammar), decompose(right, grammar)
    parsed = ParsedNotation(COMPLEX, a.operands + b.operands, a.relators + (relator,) + b.relators)
    problems = constraint_violations(parsed, scheme)
    if problems:
        raise ConstraintViolation("; ".join(problems))
    return recompose(parsed, grammar)


def derive_parallel(source: str, rule: ParallelDivisionRule, scheme) -> str:
    """Transplant ``source``'s remainder under the rule's host affixes."""
    grammar = _grammar(scheme)
    if not source.startswith(rule.strip_prefix):
        raise PrefixMismatch(f"{source!r} does not start with {rule.strip_prefix!r}")
    if rule.source_table:
        if grammar.has_table(rule.source_table):
            head = decompose(source, grammar).operands[0][0]
            if head.table_id != rule.source_table:
                raise PrefixMismatch(f"{source!r} is not from table {rule.source_table!r}")
        elif not source.startswith(rule.source_table):
            raise PrefixMismatch(f"{source!r} is not under {rule.source_table!r}")
    prefix, suffix = rule.host_affix
    result = prefix + source[len(rule.strip_prefix):] + suffix
    decompose(result, grammar)
    return result
