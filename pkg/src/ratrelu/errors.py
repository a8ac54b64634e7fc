"""Exception types shared across the package.

The CLI maps these onto exit codes: precondition/hypothesis refusals exit
with 1, numerical blowups with 2, IO failures with 3.
"""


class RatReluError(Exception):
    """Base class for package errors."""


class PreconditionError(RatReluError):
    """An operation's stated precondition or hypothesis is violated.

    Carries an optional ``report`` payload (e.g. per-node constraint
    verdicts) so callers can render the refusal.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BlowupError(RatReluError):
    """Term count or piece count exceeded its configured cap.

    ``layer`` records how far a layered computation got before blowing up,
    when applicable.
    """

    def __init__(self, message, layer=None):
        super().__init__(message)
        self.layer = layer


class EvaluationError(RatReluError):
    """A function produced a non-finite value during certification."""
