"""Exception types shared across the package."""


class OrdinalAutomataError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(OrdinalAutomataError, SyntaxError, ValueError):
    """Malformed ordinal literal, formula or tree text.

    ``pos`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} (at position {pos})")


class UnboundVariable(OrdinalAutomataError):
    pass


class SortError(OrdinalAutomataError):
    """A set variable used where an element is expected, or vice versa."""


class ExponentTooLarge(OrdinalAutomataError, ArithmeticError):
    pass


class DomainExceeded(OrdinalAutomataError):
    """An ordinal does not fit the domain of the requested encoding level."""


class MalformedTree(OrdinalAutomataError, ValueError):
    pass


class AlphabetMismatch(OrdinalAutomataError, ValueError):
    pass


class ResourceBudgetExceeded(OrdinalAutomataError):
    """Raised when an intermediate automaton grows beyond the state ceiling."""

    def __init__(self, subformula, states, limit):
        self.subformula = subformula
        self.states = states
        self.limit = limit
        super().__init__(
            f"automaton for subformula {subformula!s} has {states} states "
            f"(ceiling {limit})"
        )
