"""Exception types shared across the package."""


class WreathTraceError(Exception):
    """Base class for errors raised by this package."""


class NotFiniteOrderError(WreathTraceError, ValueError):
    pass


class UnsupportedAngleError(WreathTraceError, ValueError):
    pass


class ParseError(WreathTraceError, ValueError):
    """A group spec or marked-partition string could not be parsed."""


class ResourceBoundError(WreathTraceError, RuntimeError):
    """A computation would exceed the configured size bound."""

    def __init__(self, what: str, required, allowed):
        self.what = what
        self.required = required
        self.allowed = allowed
        super().__init__(f"{what}: required {required}, allowed {allowed}")


class ConsistencyError(WreathTraceError, AssertionError):
    """An internal cross-check failed (a bug, not a user error)."""
