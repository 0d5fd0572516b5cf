"""
Exception hierarchy shared by every package in the toolkit.

The CLI maps these onto exit codes (see main.py): parse and precondition
failures are usage errors, verification failures are either a negative
verdict or an internal inconsistency, and everything else is a computation
error.
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class ParseError(ToolkitError):
    """Malformed polynomial, word, slope or Seifert-index text."""


class PreconditionError(ToolkitError):
    """An operation was called outside its documented domain."""


class NotExactError(ToolkitError):
    """A division that was required to be exact left a remainder."""

    def __init__(self, message: str, remainder_lead: str = ""):
        super().__init__(message)
        self.remainder_lead = remainder_lead


class VerificationError(ToolkitError):
    """A claimed exact identity did not hold."""

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class InternalConsistencyError(VerificationError):
    """An identity that must hold whenever its hypotheses hold has failed."""


class ConvergenceError(ToolkitError):
    """Root finding stopped at the iteration cap."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual
