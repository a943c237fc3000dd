"""Exception types shared across arrowlab."""


class ArrowlabError(Exception):
    """Base class for library errors."""


class ResourceError(ArrowlabError):
    """A dense or enumerative computation would exceed a configured cap.

    ``flag`` names the setting (CLI flag) that controls the limit.
    """

    def __init__(self, message, flag=None):
        super().__init__(message)
        self.flag = flag


class EncodingError(ArrowlabError, ValueError):
    """Malformed truth table, ranking encoding or input file."""


class DimensionError(ArrowlabError, ValueError):
    """Arity, voter count or alternative count mismatch."""
