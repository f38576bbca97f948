class CatoidError(Exception):
    """Base class for all library errors."""


class MalformedStructure(CatoidError):
    pass


class ParseError(MalformedStructure):
    def __init__(self, msg, field=None, line=None):
        where = []
        if field is not None:
            where.append(f"field {field}")
        if line is not None:
            where.append(f"line {line}")
        if where:
            msg = f"{msg} ({', '.join(where)})"
        super().__init__(msg)
        self.field = field
        self.line = line


class NotAPartialOrder(MalformedStructure):
    pass


class NotALattice(MalformedStructure):
    pass


class BoundExceeded(CatoidError):
    pass


class CapExceeded(BoundExceeded):
    pass


class CyclicDigraph(CatoidError):
    pass


class MissingDecoration(CatoidError):
    pass


class MissingInverseMap(MissingDecoration):
    pass


class NotLocal(CatoidError):
    pass


class NotGroupoid(CatoidError):
    pass


class NotFrame(CatoidError):
    pass


class EmptyUnit(CatoidError):
    pass


class NonFunctionalAtoms(CatoidError):
    pass


class NonAtomicSource(CatoidError):
    pass


class BudgetExhausted(CatoidError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class LibraryBug(AssertionError):
    """An internal consistency check failed; never a user error."""
