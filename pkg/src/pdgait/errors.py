class PdGaitError(Exception):
    """Base class for every error raised by the package"""


class ParseError(PdGaitError, ValueError):
    """A file could not be parsed (malformed JSON/CSV, wrong schema)"""


class ValidationError(PdGaitError, ValueError):
    """Input is well-formed but violates a domain constraint"""


class InsufficientGait(PdGaitError):
    """Not enough gait cycles/events to compute the requested quantity"""


class NumericalError(PdGaitError, ArithmeticError):
    """A numerical procedure diverged or lost positive-definiteness"""


class DegenerateTest(PdGaitError):
    """A statistical test has no effective observations"""
