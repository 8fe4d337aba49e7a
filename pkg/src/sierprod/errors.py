"""Exception types raised across the package."""


class GraphError(ValueError):
    """Invalid graph data or a graph that violates an operation's precondition."""


class ParseError(GraphError):
    """Malformed textual input.  ``line`` is 1-based, or None when not line oriented."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LoopError(ParseError):
    pass


class UnknownVertexError(GraphError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class UnknownEdgeError(GraphError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class MapError(GraphError):
    """A vertex map is not total, points outside its target, or has the wrong arity."""


class NotAutomorphismError(GraphError):
    pass


class SearchOverflow(RuntimeError):
    """A brute-force search hit its configured size limit.

    Raised instead of returning a truncated answer.
    """

    def __init__(self, what, limit, actual=None):
        self.what = what
        self.limit = limit
        self.actual = actual
        msg = f"{what} exceeds limit {limit}"
        if actual is not None:
            msg += f" (got {actual})"
        super().__init__(msg)
