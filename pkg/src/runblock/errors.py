"""Exception types shared across the package.

The CLI maps these onto exit codes: ValidationError -> 2, FormatError -> 3,
ConsistencyError -> 4.
"""


class RunBlockError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(RunBlockError):
    """Caller-supplied input is invalid (bad coordinates, bad pixel values,
    missing configuration)."""


class FormatError(RunBlockError):
    """A file or bitstream is malformed: bad magic, corrupt row, truncated
    payload, undecodable codeword."""


class ConsistencyError(RunBlockError):
    """An internal invariant was violated (e.g. a boundary record does not
    describe the row it was derived from)."""
