"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input: wrong lengths, negative exponents, bad syntax."""


class ParseError(InputError):
    """Text input that could not be parsed; ``position`` is 0-based."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class PreconditionError(InputError):
    """Well-formed input that violates an operation's precondition."""


class SearchExhausted(RuntimeError):
    """A bounded search found nothing. This is not a proof of impossibility."""


class AlgorithmDisagreement(RuntimeError):
    """Two independent algorithms for the same object returned different results."""
