"""Exception types shared across the package.

Input validation problems raise plain ``ValueError``. The classes here cover
the cases a caller may want to tell apart (the CLI maps them to exit codes).
"""


class BoundExceeded(RuntimeError):
    """A configured search or size bound was hit before an answer was found."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class SearchExhausted(BoundExceeded):
    """A least-solution search ran through its whole range without success."""


class FetchError(RuntimeError):
    """Network access failed and nothing usable was cached."""


class ParseError(ValueError):
    """A remote payload could not be decoded."""

    def __init__(self, message, excerpt=""):
        super().__init__(f"{message}: {excerpt!r}" if excerpt else message)
        self.excerpt = excerpt


class DecompositionError(ValueError):
    """The class group does not split as Z/2^k + (odd part)."""
