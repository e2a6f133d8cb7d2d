"""Exception hierarchy for wcop."""


class WcopError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(WcopError, ValueError):
    pass


class InvalidMass(ValidationError):
    pass


class InvalidMap(ValidationError):
    pass


class InvalidTail(ValidationError):
    pass


class MixedField(ValidationError):
    pass


class UnsupportedTailFiber(WcopError):
    pass


class UnsupportedTailAnalysis(WcopError):
    pass


class InfiniteValue(WcopError, ArithmeticError):
    """A difference involving +inf was requested."""

    def __init__(self, msg, atom=None):
        super().__init__(msg)
        self.atom = atom


class RecursionDirectMismatch(WcopError, AssertionError):
    pass


class DepthExceedsData(WcopError, ValueError):
    pass


class OracleMismatch(WcopError, AssertionError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class RefusesTailSpace(WcopError, ValueError):
    pass


class ParseError(WcopError, ValueError):
    def __init__(self, msg, location=""):
        super().__init__(f"{location}: {msg}" if location else msg)
        self.location = location


class UnknownExample(WcopError, KeyError):
    pass
