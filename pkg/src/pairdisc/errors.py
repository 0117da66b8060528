"""Exception hierarchy for pairdisc."""


class PairdiscError(Exception):
    """Base class for all pairdisc errors."""


class ValidationError(PairdiscError, ValueError):
    """Invalid argument or malformed input data."""


class ConstantVariableError(PairdiscError):
    """An axis has zero range, so it cannot be discretized."""


class DegenerateRegressorError(PairdiscError):
    """The regressor is constant; a slope cannot be estimated."""


class DegenerateTableError(PairdiscError):
    """A contingency table reduces to fewer than two rows or columns."""


class ParseError(PairdiscError):
    """A data file could not be parsed; message carries the row context."""
