"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Malformed edge-list input. ``line`` is 1-based, or None for whole-document problems."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedGraphError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """An exact search was refused because the instance is above its size cap."""


class InternalError(AssertionError):
    """A guarantee that should hold by construction was violated.

    Carries the offending instance (and trace, when there is one) so the case
    can be reproduced.
    """

    def __init__(self, message, graph=None, trace=None):
        super().__init__(message)
        self.graph = graph
        self.trace = trace
