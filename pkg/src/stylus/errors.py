"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Raised when an argument violates an operation's precondition."""


class DecodeError(InvalidInput):
    """A word over {a, b} is not in the image of the rank encoder."""


class FactorizationError(InvalidInput):
    """A word does not factor over the code {a b^i}."""


class ParseError(InvalidInput):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StepError(InvalidInput):
    """A derivation step cannot be applied.

    ``kind`` is ``"mismatch"`` when the designated side does not occur at
    the position and ``"range"`` when the position or relation index is out
    of bounds.
    """

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(f"{kind}: {message}")


class OrientError(InvalidInput):
    def __init__(self, indices: list[int]):
        self.indices = list(indices)
        super().__init__(f"relations with identical sides cannot be oriented: {self.indices}")


class BudgetExhausted(RuntimeError):
    """A bounded procedure ran out of budget.

    Carries the last word reached and, when available, the derivation that
    led there.
    """

    def __init__(self, message: str, word=None, derivation=None):
        self.word = word
        self.derivation = derivation
        super().__init__(message)


class InvalidParams(InvalidInput):
    pass


class UnsupportedRecordMode(InvalidInput):
    """The record word lacks a factor the derivation compiler needs."""
