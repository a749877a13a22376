from .errors import (
    PdGaitError,
    ParseError,
    ValidationError,
    InsufficientGait,
    NumericalError,
    DegenerateTest,
)

__version__ = "0.1.0"
