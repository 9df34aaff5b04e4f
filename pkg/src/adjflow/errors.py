"""Exception hierarchy shared by all modules."""


class AdjflowError(Exception):
    """Base class for errors raised by adjflow."""


class GraphError(AdjflowError, ValueError):
    """Invalid graph input or a graph that violates an operation's precondition."""


class EdgeListError(GraphError):
    """Malformed edge-list or vertex-map document."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionError(AdjflowError, ValueError):
    """Vector or matrix dimensions do not match the graph."""


class OverflowGuardError(AdjflowError, ArithmeticError):
    """An exponent or series argument exceeds the double-precision safe range."""
