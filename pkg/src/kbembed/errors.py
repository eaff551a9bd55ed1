"""Exception hierarchy shared by the whole package."""


class KBError(Exception):
    """Base class for every error raised by kbembed."""


class ParseError(KBError):
    """Malformed text input (presentation, system, order or graph file)."""


class UnknownGenerator(ParseError):
    pass


class MalformedExponent(ParseError):
    pass


class FuelExhausted(KBError):
    """Reduction did not reach an irreducible word within the fuel bound."""


class MissingTrace(KBError):
    pass


class EmptyRelationSide(KBError):
    pass


class NonPositivePresentation(KBError):
    pass


class NonPositiveInput(KBError):
    pass


class MalformedSystem(KBError):
    """Rule set violates a construction invariant (empty lhs, duplicate, non-decreasing)."""
