"""Exception types shared across the package."""


class HypervanishError(Exception):
    """Base class for all package-specific errors."""


class PoleError(HypervanishError):
    """A lower-parameter rising factorial vanishes inside the summation range."""


class NoTermination(HypervanishError):
    """No upper parameter evaluates to a nonpositive integer."""


class NotBalanced(HypervanishError):
    """Series is not balanced (parameter sums or argument fail the condition)."""


class NotIntegerDifference(HypervanishError):
    """Upper minus lower parameter is not a constant nonnegative integer."""


class PairingNotFound(HypervanishError):
    """No perfect matching of upper to lower parameters with integer gaps."""


class DegreeTooHigh(HypervanishError):
    """Summand polynomial degree reaches the difference order; the vanishing
    argument does not apply.  Unreachable for balanced input."""


class DivisionByZeroPoly(HypervanishError, ZeroDivisionError):
    """Exact polynomial division by the zero polynomial."""


class DuplicateAbscissa(HypervanishError):
    """Interpolation received two points with the same abscissa."""


class MissingBinding(HypervanishError):
    """An environment does not bind a symbol that the evaluation needs."""


class UndeclaredSymbol(HypervanishError):
    """A parameter references a symbol missing from the declarations."""


class ParseError(HypervanishError):
    """Series-spec text failed to parse.

    Carries the byte offset of the failure and a short description of what
    was expected there.
    """

    def __init__(self, position: int, expected: str):
        super().__init__(f"at offset {position}: expected {expected}")
        self.position = position
        self.expected = expected


class ProofReplayError(HypervanishError):
    """An assertion inside a proof replay failed; indicates a construction
    bug, never a property of valid input."""
