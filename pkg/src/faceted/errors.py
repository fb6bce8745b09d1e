"""Exception hierarchy shared by every module of the package."""


class FacetError(Exception):
    """Base class for all errors raised by this package."""


# -- grammar / scheme loading -------------------------------------------------

class SchemeError(FacetError):
    pass


class AmbiguousGrammar(SchemeError):
    pass


class DuplicateClassId(SchemeError):
    def __init__(self, class_id):
        super().__init__(f"duplicate class id {class_id!r}")
        self.class_id = class_id


class DuplicateNotation(SchemeError):
    def __init__(self, notation, class_ids):
        super().__init__(f"notation {notation!r} used by {', '.join(class_ids)}")
        self.notation = notation
        self.class_ids = tuple(class_ids)


class UnparsableNotation(SchemeError):
    def __init__(self, class_id, notation, cause):
        super().__init__(f"class {class_id!r}: cannot parse {notation!r}: {cause}")
        self.class_id = class_id
        self.notation = notation
        self.cause = cause


class DanglingReference(SchemeError):
    def __init__(self, class_id, target):
        super().__init__(f"class {class_id!r} refers to unknown class {target!r}")
        self.class_id = class_id
        self.target = target


class InvalidRecord(SchemeError):
    pass


# -- notation parsing ---------------------------------------------------------

class NotationError(FacetError):
    pass


class EmptyInput(NotationError):
    def __init__(self):
        super().__init__("empty notation")


class UnknownSymbol(NotationError):
    def __init__(self, notation, position):
        char = notation[position] if position < len(notation) else "<end>"
        super().__init__(f"unknown symbol {char!r} at {position} in {notation!r}")
        self.notation = notation
        self.position = position


class DanglingRelator(NotationError):
    def __init__(self, notation, position):
        super().__init__(f"relator without operand at {position} in {notation!r}")
        self.notation = notation
        self.position = position


class EmptyChain(NotationError):
    def __init__(self, notation, position):
        super().__init__(f"adjacent relators at {position} in {notation!r}")
        self.notation = notation
        self.position = position


# -- hierarchy ----------------------------------------------------------------

class UnknownClass(FacetError):
    def __init__(self, key):
        super().__init__(f"unknown class {key!r}")
        self.key = key


class OverrideTargetMissing(FacetError):
    def __init__(self, class_id, target):
        super().__init__(f"broader override of {class_id!r} names unknown class {target!r}")
        self.class_id = class_id
        self.target = target


class CycleDetected(SchemeError):
    def __init__(self, class_ids):
        super().__init__("broader cycle: " + " -> ".join(class_ids))
        self.class_ids = list(class_ids)


# -- synthesis ----------------------------------------------------------------

class SynthesisError(FacetError):
    pass


class UnknownCategory(SynthesisError):
    pass


class UnknownRelator(SynthesisError):
    pass


class ConstraintViolation(SynthesisError):
    pass


class PrefixMismatch(SynthesisError):
    pass


# -- authority store ----------------------------------------------------------

class StoreError(FacetError):
    pass


class SelfReplacement(StoreError):
    pass


class HistoryCycle(StoreError):
    def __init__(self, chain):
        super().__init__("replacement cycle: " + " -> ".join(chain))
        self.chain = list(chain)


class RewriteConflict(StoreError):
    def __init__(self, conflicts):
        desc = "; ".join(f"{cid} -> {nt} collides with {other}" for cid, nt, other in conflicts)
        super().__init__(f"rewrite collisions: {desc}")
        self.conflicts = list(conflicts)


# -- exchange -----------------------------------------------------------------

class FormatError(FacetError):
    def __init__(self, message, line=None, col=None):
        where = f"line {line}" if line is not None else ""
        if col is not None:
            where += f", col {col}"
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.col = col


class FormatSyntaxError(FormatError):
    pass


class UnknownTag(FormatError):
    def __init__(self, tag, line):
        super().__init__(f"unknown tag {tag!r}", line, 1)
        self.tag = tag


class VersionMismatch(FormatError):
    pass
