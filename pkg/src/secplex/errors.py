"""Exception hierarchy shared across the package.

Anything raised on malformed *input documents* is an ``InputFormatError``;
everything raised on mathematically inconsistent or unsupported *data* is a
plain ``SecplexError`` subclass.  The CLI maps the former to exit code 2 and
the latter to exit code 1.
"""


class SecplexError(Exception):
    """Base class for all domain errors raised by this package."""


class InputFormatError(SecplexError):
    """The input document is malformed (schema, parse or type errors)."""


class ValidationError(SecplexError):
    """A simplicial set or height function violates a structural invariant."""


class GlueError(SecplexError):
    """A gluing request is inconsistent under face closure."""


class HeightError(SecplexError):
    """A height assignment is missing a vertex or breaks monotonicity."""


class NotSubdividedError(SecplexError):
    """An operation requiring a subdivided complex received one that is not."""


class WindowError(SecplexError):
    """The truncation window is too small for the requested computation."""

    def __init__(self, message: str, required_degree: int | None = None):
        super().__init__(message)
        self.required_degree = required_degree


class ResourceLimitError(SecplexError):
    """The configured cap on stored sections was exceeded."""


class LinAlgError(SecplexError):
    """An exact linear-algebra routine received an inconsistent problem."""
