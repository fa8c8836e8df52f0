"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`PseudoalgError`, so callers (the CLI in particular) can tell
mathematical failures apart from programming errors.
"""


class PseudoalgError(Exception):
    pass


class CutoffExceeded(PseudoalgError):
    """A computation would produce an H-degree above the global cutoff."""

    def __init__(self, degree, cutoff):
        super().__init__(f"degree {degree} exceeds degree_cutoff {cutoff}")
        self.degree = degree
        self.cutoff = cutoff


class RankMismatch(PseudoalgError):
    pass


class ArityMismatch(PseudoalgError):
    pass


class InvalidAction(PseudoalgError):
    pass


class NotASubalgebra(PseudoalgError):
    pass


class WrongHopfAlgebra(PseudoalgError):
    pass


class JordanPreconditionFailed(PseudoalgError):
    pass


class S0NotFree(PseudoalgError):
    pass


class ClosureError(PseudoalgError):
    """A bracket left the submodule it was supposed to stay in."""


class ParseError(PseudoalgError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DimensionMismatch(ParseError):
    pass


class TableNotTotal(ParseError):
    pass


class JacobiViolation(ParseError):
    pass
