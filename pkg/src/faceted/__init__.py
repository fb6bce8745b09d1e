"""Tooling for faceted classification schemes.

Parse and file classmarks, derive and correct hierarchies, synthesize
compound notation, keep a history-aware authority file and exchange whole
schemes as text or XML.
"""
from .collation import Ordering, SortKey, compare, sort_key, sort_schedule
from .errors import FacetError
from .exchange import export_canonical, export_concept_scheme, import_canonical
from .grammar import DEFAULT_RELATORS, NotationGrammar, RelatorDef, SubjectAreaDef, TableDef
from .hierarchy import ancestors, build_tree, children, derive_broader, resolve_broader
from .notation import decompose, recompose, tokenize
from .records import (ChangeEntry, ClassRecord, CombinationConstraint, NoteSet,
                      ParallelDivisionRule)
from .scheme import Scheme, load_scheme, validate_scheme
from .store import AuthorityStore
from .synthesis import (FacetSelection, combine, derive_parallel, synthesize,
                        validate_citation_order)

__version__ = "0.1.0"

__all__ = [
    "AuthorityStore", "ChangeEntry", "ClassRecord", "CombinationConstraint", "DEFAULT_RELATORS",
    "FacetError", "FacetSelection", "NotationGrammar", "NoteSet", "Ordering",
    "ParallelDivisionRule", "RelatorDef", "Scheme", "SortKey", "SubjectAreaDef", "TableDef",
    "ancestors", "build_tree", "children", "combine", "compare", "decompose", "derive_broader",
    "derive_parallel", "export_canonical", "export_concept_scheme", "import_canonical",
    "load_scheme", "recompose", "resolve_broader", "sort_key", "sort_schedule", "synthesize",
    "tokenize", "validate_citation_order", "validate_scheme",
]
