"""Shared exception types.

PreconditionError marks a violated documented precondition; the CLI maps it
to exit code 2. Anything else escaping a command is an internal error
(exit code 1).
"""


class PreconditionError(ValueError):
    """A documented precondition on an operation's input was violated."""


class DependentInput(PreconditionError):
    """Input vectors or functionals were required to be independent but are not."""


class GaugeTooSteep(PreconditionError):
    """The gauge's Lipschitz slope is too large for the requested operation."""


class NoUniqueLeadingTuple(PreconditionError):
    """The support of a wedge vector has no maximum in the componentwise order."""


class PrecisionExhausted(RuntimeError):
    """A certified comparison failed to separate within the precision cap.

    This cannot happen for comparisons between a rational and the log of a
    rational other than 1 (they are never equal), so seeing it indicates a
    bug rather than an unlucky input.
    """
