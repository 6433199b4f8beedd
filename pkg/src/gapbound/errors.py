"""Exception types raised by the library."""


class GapboundError(Exception):
    """Base class for all library errors."""


class InvalidModulus(GapboundError, ValueError):
    pass


class TheoryMismatch(GapboundError, ValueError):
    pass


class InvalidInput(GapboundError, ValueError):
    pass


class AmbiguousRegister(GapboundError, ValueError):
    pass


class NotCondensable(GapboundError, ValueError):
    """Tunneling an anyon that does not condense on the end boundaries."""


class InvalidCurve(GapboundError, ValueError):
    pass


class NotFactorizable(GapboundError, ValueError):
    pass


class ExceedsBound(GapboundError, RuntimeError):
    pass


class CircuitError(GapboundError, ValueError):
    """Malformed circuit; ``index`` points at the first offending instruction."""

    def __init__(self, message: str, index: int | None = None) -> None:
        super().__init__(message if index is None else f"instruction {index}: {message}")
        self.index = index
