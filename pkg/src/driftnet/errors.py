"""Exception hierarchy shared across the package."""


class DriftnetError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DriftnetError, ValueError):
    """A caller violated an operation's precondition or passed bad data."""


class FormatError(DriftnetError, ValueError):
    """A file or wire payload does not match its documented schema."""


class ImpossibleEvidenceError(DriftnetError):
    """The supplied evidence has probability zero under the model."""


class StateSpaceError(DriftnetError):
    """The joint state space is too large for exhaustive enumeration."""


class DegenerateDataError(DriftnetError):
    """A learning routine received data it cannot produce a model from."""
