"""Exception hierarchy shared by every module of the package."""


class IosubError(Exception):
    pass


class ParseError(IosubError):
    """Malformed regex or derivation-file text.

    ``line`` and ``column`` are 1-based; ``position`` is the 0-based offset
    into the text that was being parsed.
    """

    def __init__(self, message, position=0, line=1, column=None):
        self.message = message
        self.position = position
        self.line = line
        self.column = position + 1 if column is None else column
        super().__init__(f"{message} (line {self.line}, column {self.column})")


class RegexSyntaxError(ParseError):
    pass


class DslSyntaxError(ParseError):
    pass


class UnknownName(IosubError):
    pass


class DimensionMismatch(IosubError, ValueError):
    pass


class ArityMismatch(IosubError, ValueError):
    pass


class UnknownDimension(IosubError, KeyError):
    pass


class NotExistentiallyLinear(IosubError):
    pass


class NotValidated(IosubError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class EpsilonUnsafe(IosubError):
    def __init__(self, path):
        self.path = path
        super().__init__(f"right operand at {path} accepts the empty word; normalize first")


class DeletingStep(IosubError):
    def __init__(self, path):
        self.path = path
        super().__init__(f"step at {path} substitutes a language containing the empty word")


class ResidualBinderDimension(IosubError, AssertionError):
    """A substituted dimension survived composition. Always a bug."""
