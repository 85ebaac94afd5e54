"""Exception types shared across the package."""


class GrassbottError(Exception):
    """Base class for all package-specific errors."""


class StructureError(GrassbottError, ValueError):
    """Malformed input: mismatched lengths, block sizes, or contexts."""


class DomainError(GrassbottError, ValueError):
    """Input outside an operation's mathematical domain (e.g. non-dominant weight)."""


class NotACharacterError(GrassbottError, ValueError):
    """A weight multiset failed to decompose into irreducibles with
    nonnegative multiplicities; signals a bug in the caller."""


class OracleBudgetError(GrassbottError, RuntimeError):
    """A brute-force oracle would exceed its enumeration budget."""


class ParseError(GrassbottError, ValueError):
    """Syntax error in the bundle-expression grammar; carries a byte offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at byte {position})")
        self.position = position
