"""Exception hierarchy shared across the package."""


class DTwistError(Exception):
    """Base class for all errors raised by dtwist."""


class ExprSyntaxError(DTwistError, ValueError):
    """Malformed expression source.

    ``offset`` is the byte offset of the offending token and ``expected``
    the set of token descriptions that would have been accepted there.
    """

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class UnknownIdentifierError(ExprSyntaxError):
    def __init__(self, name, offset):
        self.name = name
        super().__init__(f"unknown identifier {name!r}", offset)


class DomainError(DTwistError, ValueError):
    """A quantity was evaluated outside its domain.

    ``position`` is the source offset of the failing expression node (when
    the failure happened inside an expression) and ``point`` the (x, y)
    location, when known.
    """

    def __init__(self, message, position=None, point=None):
        self.reason = message
        self.position = position
        self.point = point
        super().__init__(self._render())

    def _render(self):
        text = self.reason
        if self.position is not None:
            text += f" (expression offset {self.position})"
        if self.point is not None:
            text += f" at ({self.point[0]!r}, {self.point[1]!r})"
        return text

    def at(self, point):
        """Return a copy of this error located at ``point``."""
        err = type(self).__new__(type(self))
        err.__dict__.update(self.__dict__)
        err.point = (float(point[0]), float(point[1]))
        Exception.__init__(err, err._render())
        return err
