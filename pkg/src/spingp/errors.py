"""Exception types.

Numeric failures carry a ``code`` string so the CLI can report them
uniformly and map them to exit status 2.
"""


class NumericError(RuntimeError):
    code = "NUMERIC"


class GpUndefinedError(NumericError):
    """Overlap or trace too small to define a phase."""

    code = "GP_UNDEFINED"


class IncommensurateError(NumericError):
    code = "INCOMMENSURATE"


class NoDriveError(NumericError):
    code = "NO_DRIVE"


class NotHermitianError(ValueError):
    pass
