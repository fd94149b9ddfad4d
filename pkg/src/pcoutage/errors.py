"""Exception hierarchy shared by every module."""


class OutageModelError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(OutageModelError, ValueError):
    """A parameter violates its invariant.

    The offending field name is kept on ``field`` so callers (and the CLI)
    can report it without parsing the message.
    """

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class ConfigError(ValidationError):
    """A config file line could not be parsed."""

    def __init__(self, lineno, line, message):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}", f"{message} ({line.strip()!r})")


class NumericError(OutageModelError, ArithmeticError):
    """A numeric precondition failed (empty link, non-integer quotient, ...)."""


class UnreachableError(NumericError):
    """A target temperature lies on the wrong side of the steady state."""

    def __init__(self, message, steady_state):
        self.steady_state = steady_state
        super().__init__(f"{message} (steady state {steady_state:.6g} K)")


class SimulationError(NumericError):
    """The time-stepping oracle cannot run with the requested settings."""
