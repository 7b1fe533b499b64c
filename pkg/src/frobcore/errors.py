"""Typed errors raised across the library."""


class FrobcoreError(Exception):
    """Base class for all library-specific errors."""


class ParseError(FrobcoreError):
    """Malformed polynomial, ideal, or scenario text.

    Carries ``line`` and ``col`` (1-based) when known.
    """

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", col {col}" if col is not None else "")
        super().__init__(message + where)


class UnknownName(FrobcoreError):
    """A scenario referenced a name that was never declared."""


class TypeMismatch(FrobcoreError):
    """A scenario referenced a name bound to an object of the wrong kind."""


class NotMonic(FrobcoreError):
    """Cover polynomial is not monic in its new variable."""


class NotCompatibleMultiplier(FrobcoreError):
    """Multiplier u does not satisfy u*J ⊆ J^[q], so no map is induced."""


class DecompositionOutOfScope(FrobcoreError):
    """Minimal-prime decomposition fell outside the supported moves."""


class BudgetExceeded(FrobcoreError):
    """An iteration or size budget was exhausted before a certified answer."""


class NoTestElementFound(FrobcoreError):
    """No test element was found within the candidate search budget."""


class ResidueFieldUnsupported(FrobcoreError):
    """Residue-field arithmetic needed at this prime is not implemented."""
