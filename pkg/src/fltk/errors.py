"""Exception hierarchy shared by every fltk module.

User errors (bad input, unsatisfiable requests) derive from ``UserError``;
``InvariantBreach`` and its subclasses signal a bug or a resource guard and
map to exit code 2 on the command line.
"""


class FltkError(Exception):
    pass


class UserError(FltkError):
    pass


class InvariantBreach(FltkError):
    pass


class FunctionalityViolation(UserError):
    """Two graph entries share an argument but disagree on the value."""


class CycleViolation(InvariantBreach):
    """A value would occur in its own hereditary field."""


class NodeCapExceeded(InvariantBreach):
    """The interning table grew past FLTK_MAX_NODES."""


class CapExceeded(UserError):
    """A request would materialize more objects than the configured cap."""


class CompositionMismatch(UserError):
    pass


class NotAPair(UserError):
    pass


class DegenerateTokens(UserError):
    pass


class EvalError(UserError):
    pass


class UnboundName(EvalError):
    pass


class ArityError(EvalError):
    pass


class SourcePos:
    __slots__ = ("line", "column")

    def __init__(self, line, column):
        self.line = line
        self.column = column

    def __eq__(self, other):
        return (isinstance(other, SourcePos)
                and (self.line, self.column) == (other.line, other.column))

    def __hash__(self):
        return hash((self.line, self.column))

    def __repr__(self):
        return f"SourcePos({self.line}, {self.column})"

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(UserError):
    def __init__(self, message, pos, expected=()):
        self.message = message
        self.pos = pos
        self.expected = frozenset(expected)
        detail = message
        if self.expected:
            detail += " (expected " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(f"{pos}: {detail}")
