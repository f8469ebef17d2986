"""Exception hierarchy shared by every module."""


class HomLieError(Exception):
    """Base class for all errors raised by the package."""


class DimensionMismatch(HomLieError, ValueError):
    pass


class SingularFormError(HomLieError, ValueError):
    """A bilinear form had to be inverted but is degenerate."""


class PreconditionError(HomLieError, ValueError):
    pass


class ValidationError(HomLieError):
    """A mathematical identity failed.

    ``anchor`` names the identity and ``failures`` lists the offending basis
    indices together with the exact residual.
    """

    def __init__(self, anchor, failures=(), message=None):
        self.anchor = anchor
        self.failures = list(failures)
        if message is None:
            message = f"{anchor}: {len(self.failures)} failing case(s)"
            if self.failures:
                message += f", first: {self.failures[0]}"
        super().__init__(message)


class ParseError(HomLieError, ValueError):
    """Malformed input file; the message carries file and position context."""
